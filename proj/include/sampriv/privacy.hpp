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

#ifndef SAMPRIV_PRIVACY_HPP_
#define SAMPRIV_PRIVACY_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sampriv/mechanisms.hpp"

namespace sampriv {

// A parameter setting whose output distribution identifies the truthful
// value with certainty, so no finite epsilon exists.
class InfiniteLeakageError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Leakage of one observable output cell: the absolute log-ratio of its
// probability under the two neighbouring truths. bounded is false when the
// cell occurs under only one truth (log-ratio infinite).
struct ObservableLeakage {
  std::string label;
  double log_ratio;
  bool bounded;
};

// Differential-privacy leakage report. epsilon is the maximum over the
// per-observable log-ratios (infinity when any observable is unbounded).
struct EpsilonReport {
  std::string mechanism;
  std::string params;
  std::vector<ObservableLeakage> per_observable;
  double epsilon;
  bool bounded;
};

// Analytic randomized-response leakage ln((pi1+(1-pi1)pi2)/((1-pi1)pi2)),
// the log-ratio of the forced-response "Yes" output. Throws
// InfiniteLeakageError when (1-pi1)*pi2 = 0 (deterministic truthful
// answers). Note that for pi2 > 1/2 the "No" output leaks more than this
// closed form; empirical_epsilon observes every output and reports the max.
EpsilonReport rr_epsilon(const RRParams& params);
EpsilonReport rr_epsilon(double pi1, double pi2);

// Analytic two-round binary leakage: the maximum of the round-two output-0
// and output-1 log-ratios. Round-one observables contribute zero. Throws
// InfiniteLeakageError when pi0 = 0 or pi0 + pi_s = 1 while pi_s > 0.
EpsilonReport sp_binary_epsilon(const SPBinarySpec& spec);
EpsilonReport sp_binary_epsilon(double pi0, double pi_s);

// Analytic multi-valued leakage for the truthful output v:
// |ln((pi_v + pi_s)/pi_v)|. All other outputs and round one contribute
// zero. Throws InfiniteLeakageError when pi_v = 0 while pi_s > 0.
EpsilonReport sp_multi_epsilon(const SPMultiSpec& spec, int32_t v);
EpsilonReport sp_multi_epsilon(double pi_v, double pi_s);

// Monte Carlo leakage over per-round marginal outputs: samples the
// mechanism under both truths, estimates every cell probability by
// frequency, and reports the max absolute log-ratio. Cells observed under
// only one truth are flagged unbounded rather than dropped. Requires
// samples >= 1e5. Sampling is split into blocks with seeds derived from
// (seed, block), so results are independent of evaluation order.
EpsilonReport empirical_epsilon(const MechanismSpec& mechanism, TruthfulValue truth_a,
                                TruthfulValue truth_b, int64_t samples, uint64_t seed);

// Same estimator, but the observable is the linked (round1, round2) pair.
// The two-round mechanisms leak their sampled shift through this joint
// view: the (0 -> v) transition occurs only for sampled truthful owners, so
// the report is expected to flag it unbounded. Diagnostic for the gap
// between per-round and joint adversarial observation.
EpsilonReport joint_pair_epsilon(const MechanismSpec& mechanism, TruthfulValue truth_a,
                                 TruthfulValue truth_b, int64_t samples, uint64_t seed);

enum class MechanismFamily { kRandomizedResponse, kSamplingPrivacy };

// One analytic leakage value on a parameter grid. Unbounded settings are
// kept as flagged rows instead of raising.
struct SweepRow {
  MechanismFamily family;
  double swept_param;
  double epsilon;
  bool bounded;
};

// Analytic leakage across a parameter grid: for randomized response the
// grid sweeps pi2 at fixed pi1; for sampling privacy it sweeps the
// truthful-output mass pi_v at fixed pi_s.
std::vector<SweepRow> epsilon_sweep(MechanismFamily family, std::span<const double> grid,
                                    double fixed_param);

}  // namespace sampriv

#endif  // SAMPRIV_PRIVACY_HPP_
