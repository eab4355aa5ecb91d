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

#ifndef SAMPRIV_SIMULATION_HPP_
#define SAMPRIV_SIMULATION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "sampriv/estimation.hpp"
#include "sampriv/mechanisms.hpp"

namespace sampriv {

// Ground-truth composition of a query population: yes_counts[v-1] owners
// truthfully hold value v (a single entry for binary queries), plus
// no_count owners without the monitored attribute.
struct PopulationSpec {
  std::vector<int64_t> yes_counts;
  int64_t no_count = 0;

  int32_t num_values() const { return static_cast<int32_t>(yes_counts.size()); }
  int64_t yes_total() const;
  int64_t total() const { return yes_total() + no_count; }
  void validate() const;
};

// In-process stand-in for the distributed aggregator set: owners are
// partitioned across k aggregators by a seeded hash, each aggregator folds
// its owners' responses straight into its own count table, and only the
// element-wise sum of those tables is released. No aggregator ever holds
// the full per-owner response set, and nothing per-owner survives
// aggregation.
struct AggregatorModel {
  int32_t k = 1;
  uint64_t salt = 0;

  int32_t assign(int64_t owner_index) const {
    return static_cast<int32_t>(derive_seed(salt, static_cast<uint64_t>(owner_index)) %
                                static_cast<uint64_t>(k));
  }
};

// Per-experiment summary over independent trials. error_bound_95 is the
// 97.5th-percentile absolute error from the ground truth across trials.
struct TrialStats {
  int32_t trials;
  int64_t ground_truth;
  double mean_estimate;
  double stddev;
  double mean_abs_error;
  double error_bound_95;
};

struct ExperimentResult {
  TrialStats total;
  std::vector<TrialStats> per_output;  // non-empty only for multi-valued runs
};

// Deterministic owner list: the spec's counts in a seed-shuffled order.
std::vector<TruthfulValue> generate_population(const PopulationSpec& spec, uint64_t seed);

// Privatizes every owner (stream = f(seed, owner index)), routes responses
// through the aggregator partition, and returns the combined count table.
// The combined table is invariant to the number of aggregators because the
// randomness is attached to owners, not to routing.
CountTable run_trial(std::span<const TruthfulValue> owners, const MechanismSpec& mechanism,
                     const AggregatorModel& aggregators, uint64_t seed);

// Runs seeded independent trials, estimates each with the mechanism's
// estimator, and reports trial statistics. Trials derive their streams from
// (master_seed, trial index) and may execute on any number of threads with
// identical results. Requires trials >= 2.
ExperimentResult run_experiment(const PopulationSpec& population,
                                const MechanismSpec& mechanism, int32_t trials,
                                uint64_t master_seed, const AggregatorModel& aggregators = {},
                                int threads = 0);

// Randomized-response baseline for a multi-valued population: one binary
// query per monitored value v, with owners truthful exactly when their
// value equals v. Returns per-value stats aligned with yes_counts.
std::vector<TrialStats> run_rr_per_value(const PopulationSpec& population,
                                         const RRParams& params, int32_t trials,
                                         uint64_t master_seed,
                                         const AggregatorModel& aggregators = {},
                                         int threads = 0);

}  // namespace sampriv

#endif  // SAMPRIV_SIMULATION_HPP_
