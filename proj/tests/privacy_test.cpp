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

#include "sampriv/privacy.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "sampriv/random.hpp"

namespace sampriv {
namespace {

const ObservableLeakage* find_cell(const EpsilonReport& report, std::string_view label) {
  for (const ObservableLeakage& cell : report.per_observable) {
    if (cell.label == label) return &cell;
  }
  return nullptr;
}

TEST(RrEpsilon, ClosedFormAtEvaluationParameters) {
  const EpsilonReport report = rr_epsilon(RRParams(0.8, 0.2));
  // ln(0.84 / 0.04) = ln 21.
  EXPECT_NEAR(report.epsilon, std::log(21.0), 1e-12);
  EXPECT_NEAR(report.epsilon, 3.045, 1e-3);
  EXPECT_TRUE(report.bounded);
}

TEST(RrEpsilon, TruthIndependentResponseLeaksNothing) {
  EXPECT_DOUBLE_EQ(rr_epsilon(0.0, 0.3).epsilon, 0.0);
}

TEST(RrEpsilon, DeterministicAnswersLeakInfinitely) {
  EXPECT_THROW(rr_epsilon(0.85, 0.0), InfiniteLeakageError);
  EXPECT_THROW(rr_epsilon(1.0, 0.3), InfiniteLeakageError);
}

TEST(SpBinaryEpsilon, MaxOfTheTwoRoundTwoOutputs) {
  const EpsilonReport report = sp_binary_epsilon(SPBinarySpec(0.3, 0.25));
  EXPECT_NEAR(report.epsilon, std::log(0.55 / 0.30), 1e-12);
  EXPECT_NEAR(report.epsilon, 0.606, 1e-3);
  const ObservableLeakage* output0 = find_cell(report, "r2:0");
  const ObservableLeakage* output1 = find_cell(report, "r2:1");
  ASSERT_NE(output0, nullptr);
  ASSERT_NE(output1, nullptr);
  EXPECT_NEAR(output0->log_ratio, 0.606, 1e-3);
  EXPECT_NEAR(output1->log_ratio, std::log(0.70 / 0.45), 1e-12);
  EXPECT_NEAR(output1->log_ratio, 0.442, 1e-3);
  // Round one is leakage-free by construction.
  EXPECT_DOUBLE_EQ(find_cell(report, "r1:0")->log_ratio, 0.0);
  EXPECT_DOUBLE_EQ(find_cell(report, "r1:1")->log_ratio, 0.0);
}

TEST(SpBinaryEpsilon, VanishingSamplingLeaksNothing) {
  EXPECT_DOUBLE_EQ(sp_binary_epsilon(0.3, 0.0).epsilon, 0.0);
  // epsilon shrinks with pi_s.
  EXPECT_LT(sp_binary_epsilon(0.3, 0.01).epsilon, sp_binary_epsilon(0.3, 0.25).epsilon);
}

TEST(SpBinaryEpsilon, DegenerateFacesLeakInfinitely) {
  EXPECT_THROW(sp_binary_epsilon(0.0, 0.25), InfiniteLeakageError);
  EXPECT_THROW(sp_binary_epsilon(0.75, 0.25), InfiniteLeakageError);
}

TEST(SpBinaryEpsilon, NeverNegative) {
  SplitMix64 rng(808);
  for (int i = 0; i < 200; ++i) {
    const double pi0 = 0.05 + 0.5 * rng.next_unit();
    const double pi_s = 0.05 + 0.4 * rng.next_unit();
    const EpsilonReport report = sp_binary_epsilon(pi0, pi_s);
    EXPECT_GE(report.epsilon, 0.0);
    for (const ObservableLeakage& cell : report.per_observable) {
      EXPECT_GE(cell.log_ratio, 0.0);
    }
  }
}

TEST(SpMultiEpsilon, ClosedFormAtEvaluationParameters) {
  EXPECT_NEAR(sp_multi_epsilon(0.05, 0.45).epsilon, std::log(10.0), 1e-12);
  EXPECT_NEAR(sp_multi_epsilon(0.05, 0.45).epsilon, 2.303, 1e-3);
  EXPECT_NEAR(sp_multi_epsilon(0.45, 0.45).epsilon, std::log(2.0), 1e-12);
  EXPECT_NEAR(sp_multi_epsilon(0.45, 0.45).epsilon, 0.693, 1e-3);
}

TEST(SpMultiEpsilon, FourTimesLowerLeakageThanRrAtTheOperatingPoints) {
  const double rr = rr_epsilon(RRParams(0.8, 0.2)).epsilon;
  const double sp = sp_multi_epsilon(0.45, 0.45).epsilon;
  EXPECT_GT(rr / sp, 4.0);
  EXPECT_NEAR(rr / sp, 4.4, 0.05);
}

TEST(SpMultiEpsilon, BoundariesAndValidation) {
  EXPECT_DOUBLE_EQ(sp_multi_epsilon(0.3, 0.0).epsilon, 0.0);
  EXPECT_THROW(sp_multi_epsilon(0.0, 0.45), InfiniteLeakageError);

  const SPMultiSpec spec({0.05, 0.45, 0.05}, 0.45);
  EXPECT_THROW(sp_multi_epsilon(spec, 0), std::invalid_argument);
  EXPECT_THROW(sp_multi_epsilon(spec, 3), std::invalid_argument);
  const EpsilonReport report = sp_multi_epsilon(spec, 1);
  EXPECT_NEAR(report.epsilon, std::log(2.0), 1e-12);
  // Only the truthful output leaks; everything else reports zero.
  EXPECT_DOUBLE_EQ(find_cell(report, "r2:2")->log_ratio, 0.0);
  EXPECT_DOUBLE_EQ(find_cell(report, "r1:1")->log_ratio, 0.0);
}

TEST(SpMultiEpsilon, BinaryOutputZeroTermViaReduction) {
  // V = 1 with the truthful-output mass set to the binary pi0 reproduces the
  // binary output-0 term exactly: both are |ln((pi0+pi_s)/pi0)|.
  const double pi0 = 0.3, pi_s = 0.25;
  const SPMultiSpec reduction({1.0 - pi_s - pi0, pi0}, pi_s);
  const EpsilonReport multi = sp_multi_epsilon(reduction, 1);
  const EpsilonReport binary = sp_binary_epsilon(SPBinarySpec(pi0, pi_s));
  EXPECT_DOUBLE_EQ(multi.epsilon, find_cell(binary, "r2:0")->log_ratio);
}

TEST(Epsilon, MonotoneInSamplingProbability) {
  double previous = 0.0;
  for (double pi_s : {0.1, 0.2, 0.3, 0.4}) {
    const double binary = sp_binary_epsilon(0.3, pi_s).epsilon;
    const double multi = sp_multi_epsilon(0.3, pi_s).epsilon;
    EXPECT_GT(binary, previous);
    EXPECT_DOUBLE_EQ(multi, binary);  // same output-0 expression
    previous = binary;
  }
}

TEST(EmpiricalEpsilon, AgreesWithAnalyticOnRandomParameters) {
  constexpr int64_t kSamples = 1000000;
  SplitMix64 rng(2026);

  for (int point = 0; point < 5; ++point) {
    // Forced-response analysis is tight for pi2 <= 1/2; beyond it the "No"
    // output dominates, which the frequency estimator would pick up.
    const double pi1 = 0.3 + 0.6 * rng.next_unit();
    const double pi2 = 0.05 + 0.45 * rng.next_unit();
    const EpsilonReport empirical =
        empirical_epsilon(RRParams(pi1, pi2), TruthfulValue(1), kNoAttribute, kSamples,
                          derive_seed(3000, static_cast<uint64_t>(point)));
    EXPECT_NEAR(empirical.epsilon, rr_epsilon(pi1, pi2).epsilon, 0.05)
        << "pi1=" << pi1 << " pi2=" << pi2;
  }

  for (int point = 0; point < 5; ++point) {
    const double pi0 = 0.1 + 0.4 * rng.next_unit();
    const double pi_s = 0.1 + 0.3 * rng.next_unit();
    const EpsilonReport empirical =
        empirical_epsilon(SPBinarySpec(pi0, pi_s), TruthfulValue(1), kNoAttribute, kSamples,
                          derive_seed(4000, static_cast<uint64_t>(point)));
    EXPECT_NEAR(empirical.epsilon, sp_binary_epsilon(pi0, pi_s).epsilon, 0.05)
        << "pi0=" << pi0 << " pi_s=" << pi_s;
  }

  for (int point = 0; point < 5; ++point) {
    // Random V=2 die; hypotheses are two concrete truthful values, so the
    // leakage is the larger of the two per-output terms.
    const double pi_s = 0.2 + 0.3 * rng.next_unit();
    double masses[3];
    double sum = 0.0;
    for (double& m : masses) sum += m = 0.1 + rng.next_unit();
    const double scale = (1.0 - pi_s) / sum;
    const SPMultiSpec spec({masses[0] * scale, masses[1] * scale, masses[2] * scale}, pi_s);
    const double expected = std::max(sp_multi_epsilon(spec, 1).epsilon,
                                     sp_multi_epsilon(spec, 2).epsilon);
    const EpsilonReport empirical =
        empirical_epsilon(spec, TruthfulValue(1), TruthfulValue(2), kSamples,
                          derive_seed(5000, static_cast<uint64_t>(point)));
    EXPECT_NEAR(empirical.epsilon, expected, 0.05);
  }
}

TEST(EmpiricalEpsilon, TruthIgnoringMechanismLeaksNothing) {
  const EpsilonReport report = empirical_epsilon(RRParams(0.0, 0.3), TruthfulValue(1),
                                                 kNoAttribute, 1000000, 606);
  EXPECT_TRUE(report.bounded);
  EXPECT_LE(report.epsilon, 0.02);
}

TEST(EmpiricalEpsilon, ComparingAgainstThePaddingPopulationAddsTheBaselineCell) {
  // Against a no-attribute owner the output-0 cell also leaks (the padding
  // owner parks at 0 when sampled), so the report maxes over both terms.
  const SPMultiSpec spec({0.05, 0.45, 0.05}, 0.45);
  const EpsilonReport report =
      empirical_epsilon(spec, TruthfulValue(1), kNoAttribute, 1000000, 607);
  EXPECT_NEAR(report.epsilon, std::log((0.05 + 0.45) / 0.05), 0.05);
}

TEST(EmpiricalEpsilon, SymmetricUnderHypothesisSwap) {
  const SPBinarySpec spec(0.3, 0.25);
  const double forward =
      empirical_epsilon(spec, TruthfulValue(1), kNoAttribute, 1000000, 808).epsilon;
  const double backward =
      empirical_epsilon(spec, kNoAttribute, TruthfulValue(1), 1000000, 808).epsilon;
  EXPECT_NEAR(forward, backward, 0.02);
}

TEST(EmpiricalEpsilon, DeterministicAndValidated) {
  const SPBinarySpec spec(0.3, 0.25);
  const EpsilonReport a = empirical_epsilon(spec, TruthfulValue(1), kNoAttribute, 100000, 9);
  const EpsilonReport b = empirical_epsilon(spec, TruthfulValue(1), kNoAttribute, 100000, 9);
  EXPECT_DOUBLE_EQ(a.epsilon, b.epsilon);
  EXPECT_THROW(
      empirical_epsilon(spec, TruthfulValue(1), kNoAttribute, 99999, 9),
      std::invalid_argument);
}

TEST(JointPairEpsilon, FlagsTheShiftTransitionUnbounded) {
  // (0,1) never occurs for a truthful-No owner, so the joint view identifies
  // sampled truthful owners with certainty.
  const EpsilonReport report = joint_pair_epsilon(SPBinarySpec(0.3, 0.25), TruthfulValue(1),
                                                  kNoAttribute, 200000, 10);
  EXPECT_FALSE(report.bounded);
  EXPECT_TRUE(std::isinf(report.epsilon));
  const ObservableLeakage* shift = find_cell(report, "pair:0->1");
  ASSERT_NE(shift, nullptr);
  EXPECT_FALSE(shift->bounded);
}

TEST(JointPairEpsilon, BoundedWithoutSamplingOrWithoutContrast) {
  const EpsilonReport no_sampling = joint_pair_epsilon(
      SPBinarySpec(0.3, 0.0), TruthfulValue(1), kNoAttribute, 200000, 11);
  EXPECT_TRUE(no_sampling.bounded);
  EXPECT_LE(no_sampling.epsilon, 0.03);

  const EpsilonReport same_truth = joint_pair_epsilon(
      SPBinarySpec(0.3, 0.25), kNoAttribute, kNoAttribute, 200000, 12);
  EXPECT_TRUE(same_truth.bounded);
  EXPECT_LE(same_truth.epsilon, 0.03);
}

TEST(EpsilonSweep, CoversOperatingPointsAndFlagsUnboundedRows) {
  const double rr_grid[] = {0.0, 0.2, 0.5};
  const auto rr_rows =
      epsilon_sweep(MechanismFamily::kRandomizedResponse, rr_grid, 0.8);
  ASSERT_EQ(rr_rows.size(), 3u);
  EXPECT_FALSE(rr_rows[0].bounded);
  EXPECT_TRUE(rr_rows[1].bounded);
  EXPECT_NEAR(rr_rows[1].epsilon, 3.045, 1e-3);
  EXPECT_GT(rr_rows[1].epsilon, rr_rows[2].epsilon);  // decreasing in pi2

  const double sp_grid[] = {0.0, 0.45};
  const auto sp_rows = epsilon_sweep(MechanismFamily::kSamplingPrivacy, sp_grid, 0.45);
  EXPECT_FALSE(sp_rows[0].bounded);
  EXPECT_NEAR(sp_rows[1].epsilon, 0.693, 1e-3);

  EXPECT_THROW(epsilon_sweep(MechanismFamily::kSamplingPrivacy, {}, 0.45),
               std::invalid_argument);
}

}  // namespace
}  // namespace sampriv
