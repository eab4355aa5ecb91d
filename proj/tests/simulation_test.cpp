// Copyright 2026 The Sampriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sampriv/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"

namespace sampriv {
namespace {

int64_t count_value(const std::vector<TruthfulValue>& owners, TruthfulValue value) {
  int64_t count = 0;
  for (const TruthfulValue& v : owners) count += v == value;
  return count;
}

TEST(GeneratePopulation, RealizesTheSpec) {
  const std::vector<TruthfulValue> owners = generate_population({{5}, 95}, 1);
  ASSERT_EQ(owners.size(), 100u);
  EXPECT_EQ(count_value(owners, TruthfulValue(1)), 5);
  EXPECT_EQ(count_value(owners, kNoAttribute), 95);

  const std::vector<TruthfulValue> multi = generate_population({{10, 20, 30}, 940}, 2);
  ASSERT_EQ(multi.size(), 1000u);
  EXPECT_EQ(count_value(multi, TruthfulValue(1)), 10);
  EXPECT_EQ(count_value(multi, TruthfulValue(2)), 20);
  EXPECT_EQ(count_value(multi, TruthfulValue(3)), 30);
  EXPECT_EQ(count_value(multi, kNoAttribute), 940);
}

TEST(GeneratePopulation, DeterministicPerSeed) {
  const PopulationSpec spec{{10, 20}, 70};
  EXPECT_EQ(generate_population(spec, 7), generate_population(spec, 7));
  EXPECT_NE(generate_population(spec, 7), generate_population(spec, 8));
}

TEST(GeneratePopulation, RejectsEmptyPopulations) {
  EXPECT_THROW(generate_population({{0}, 0}, 1), std::invalid_argument);
  EXPECT_THROW(generate_population({{}, 10}, 1), std::invalid_argument);
  EXPECT_THROW(generate_population({{-1}, 10}, 1), std::invalid_argument);
}

TEST(RunTrial, NoSamplingMakesRoundsIdentical) {
  const std::vector<TruthfulValue> owners = generate_population({{40}, 60}, 3);
  const CountTable table = run_trial(owners, SPBinarySpec(0.3, 0.0), AggregatorModel{}, 4);
  EXPECT_EQ(table.round1, table.round2);
}

TEST(RunTrial, CombinedTableIndependentOfPartition) {
  const std::vector<TruthfulValue> owners = generate_population({{40}, 160}, 5);
  const MechanismSpec mechanism = SPBinarySpec(0.3, 0.25);
  const CountTable one = run_trial(owners, mechanism, AggregatorModel{1, 77}, 6);
  const CountTable five = run_trial(owners, mechanism, AggregatorModel{5, 77}, 6);
  const CountTable nine = run_trial(owners, mechanism, AggregatorModel{9, 123}, 6);
  EXPECT_EQ(one, five);
  EXPECT_EQ(one, nine);
}

TEST(RunTrial, ConservesThePopulationPerRound) {
  const std::vector<TruthfulValue> owners = generate_population({{10, 20, 30}, 440}, 8);
  const CountTable table =
      run_trial(owners, SPMultiSpec::Uniform(3, 0.45), AggregatorModel{4, 0}, 9);
  int64_t round1 = 0, round2 = 0;
  for (int64_t c : table.round1) round1 += c;
  for (int64_t c : table.round2) round2 += c;
  EXPECT_EQ(round1, 500);
  EXPECT_EQ(round2, 500);
}

TEST(RunTrial, FullySampledDieShiftsEveryTruthfulOwner) {
  // pi_s = 1 forces the sampled face, so round one is all zeros and round
  // two moves exactly the truthful owners.
  const std::vector<TruthfulValue> owners = generate_population({{100}, 0}, 10);
  const CountTable table = run_trial(owners, SPBinarySpec(0.0, 1.0), AggregatorModel{}, 11);
  EXPECT_EQ(table.round1[1], 0);
  EXPECT_EQ(table.round2[1] - table.round1[1], 100);
}

TEST(RunTrial, RejectsValuesOutsideTheMechanismDomain) {
  const std::vector<TruthfulValue> owners = generate_population({{5, 5}, 10}, 12);
  EXPECT_THROW(run_trial(owners, SPBinarySpec(0.3, 0.25), AggregatorModel{}, 13),
               std::invalid_argument);
  EXPECT_THROW(run_trial(owners, SPMultiSpec::Uniform(1, 0.45), AggregatorModel{}, 13),
               std::invalid_argument);
  // A wider die is fine: a V=4 query may simply have no owners at 3 and 4.
  EXPECT_NO_THROW(run_trial(owners, SPMultiSpec::Uniform(4, 0.45), AggregatorModel{}, 13));
}

TEST(RunTrial, SingleRoundMechanismsFillRoundOneOnly) {
  const std::vector<TruthfulValue> owners = generate_population({{30}, 70}, 14);
  const CountTable rr = run_trial(owners, RRParams(0.85, 0.3), AggregatorModel{3, 0}, 15);
  EXPECT_EQ(rr.rounds(), 1);
  EXPECT_EQ(rr.round1[0] + rr.round1[1], 100);

  const CountTable toy = run_trial(owners, ToyParams(0.5, 0.6, 0.5), AggregatorModel{}, 16);
  EXPECT_EQ(toy.round1[0] + toy.round1[1] + toy.absent_count, 100);
  EXPECT_GT(toy.absent_count, 0);
}

TEST(RunExperiment, ValidatesTrialsAndArity) {
  const PopulationSpec population{{50}, 50};
  EXPECT_THROW(run_experiment(population, SPBinarySpec(0.3, 0.25), 1, 1),
               std::invalid_argument);
  EXPECT_THROW(run_experiment({{5, 5}, 10}, RRParams(0.8, 0.2), 10, 1),
               std::invalid_argument);
  EXPECT_THROW(run_experiment({{5, 5}, 10}, SPMultiSpec::Uniform(3, 0.45), 10, 1),
               std::invalid_argument);
}

TEST(RunExperiment, FullyDeterminedByTheMasterSeed) {
  const PopulationSpec population{{50}, 450};
  const MechanismSpec mechanism = SPBinarySpec(0.3, 0.45);
  const ExperimentResult a = run_experiment(population, mechanism, 50, 99);
  const ExperimentResult b = run_experiment(population, mechanism, 50, 99);
  EXPECT_DOUBLE_EQ(a.total.mean_estimate, b.total.mean_estimate);
  EXPECT_DOUBLE_EQ(a.total.stddev, b.total.stddev);
  EXPECT_DOUBLE_EQ(a.total.error_bound_95, b.total.error_bound_95);

  const ExperimentResult c = run_experiment(population, mechanism, 50, 100);
  EXPECT_NE(a.total.mean_estimate, c.total.mean_estimate);
}

TEST(RunExperiment, ThreadCountNeverChangesResults) {
  const PopulationSpec population{{20, 30}, 450};
  const MechanismSpec mechanism = SPMultiSpec::Uniform(2, 0.45);
  const ExperimentResult serial =
      run_experiment(population, mechanism, 40, 7, AggregatorModel{}, 1);
  const ExperimentResult threaded =
      run_experiment(population, mechanism, 40, 7, AggregatorModel{}, 4);
  EXPECT_DOUBLE_EQ(serial.total.mean_estimate, threaded.total.mean_estimate);
  ASSERT_EQ(serial.per_output.size(), 2u);
  for (size_t v = 0; v < 2; ++v) {
    EXPECT_DOUBLE_EQ(serial.per_output[v].mean_estimate,
                     threaded.per_output[v].mean_estimate);
  }
}

TEST(RunExperiment, DeterministicConfigurationHasZeroError) {
  // Everyone sampled: round two reveals exactly the truthful count.
  const ExperimentResult result = run_experiment({{75}, 425}, SPBinarySpec(0.0, 1.0), 20, 3);
  EXPECT_DOUBLE_EQ(result.total.mean_abs_error, 0.0);
  EXPECT_DOUBLE_EQ(result.total.error_bound_95, 0.0);
  EXPECT_DOUBLE_EQ(result.total.mean_estimate, 75.0);
}

TEST(RunExperiment, EstimatorSpreadMatchesTheBinomialLaw) {
  // The round difference is Binomial(Yes, pi_s), so the estimate spread is
  // sqrt(Yes*pi_s*(1-pi_s))/pi_s = sqrt(100*0.55/0.45) ~ 11.06, whatever the
  // size of the No population.
  const ExperimentResult result =
      run_experiment({{100}, 1000}, SPBinarySpec(0.3, 0.45), 1000, 21);
  const double expected = std::sqrt(100.0 * 0.55 / 0.45);
  EXPECT_NEAR(result.total.stddev, expected, 0.15 * expected);
  EXPECT_GE(result.total.error_bound_95, result.total.mean_abs_error);
  EXPECT_GE(result.total.mean_abs_error, 0.0);
}

TEST(RunExperiment, RrNoiseMatchesTheBinomialSpread) {
  // All-No population of 1e4 at (0.85, 0.3): the raw "Yes" count is
  // Binomial(1e4, 0.045) with stddev ~20.7. The estimator divides by pi1,
  // so scale its spread back before comparing.
  const ExperimentResult result =
      run_experiment({{0}, 10000}, RRParams(0.85, 0.3), 600, 22);
  const double count_stddev = result.total.stddev * 0.85;
  EXPECT_NEAR(count_stddev, 21.2, 0.1 * 21.2);
}

TEST(RunExperiment, MultiValuePerOutputStats) {
  const PopulationSpec population{{15, 25, 35}, 925};
  const ExperimentResult result =
      run_experiment(population, SPMultiSpec::Uniform(3, 0.45), 400, 23);
  ASSERT_EQ(result.per_output.size(), 3u);
  EXPECT_EQ(result.per_output[0].ground_truth, 15);
  EXPECT_EQ(result.per_output[1].ground_truth, 25);
  EXPECT_EQ(result.per_output[2].ground_truth, 35);
  EXPECT_EQ(result.total.ground_truth, 75);
  for (const TrialStats& stats : result.per_output) {
    EXPECT_NEAR(stats.mean_estimate, static_cast<double>(stats.ground_truth),
                5.0 * std::sqrt(stats.ground_truth * 0.55 / 0.45) / std::sqrt(400.0));
  }
}

TEST(RunRrPerValue, OneBinaryQueryPerMonitoredValue) {
  const PopulationSpec population{{100, 200}, 700};
  const std::vector<TrialStats> stats =
      run_rr_per_value(population, RRParams(0.8, 0.2), 300, 24);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].ground_truth, 100);
  EXPECT_EQ(stats[1].ground_truth, 200);
  // RR noise scales with the full population, not the truthful count.
  for (const TrialStats& s : stats) {
    EXPECT_NEAR(s.mean_estimate, static_cast<double>(s.ground_truth), 25.0);
  }
}

}  // namespace
}  // namespace sampriv
