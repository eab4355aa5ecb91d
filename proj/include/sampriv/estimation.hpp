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

#ifndef SAMPRIV_ESTIMATION_HPP_
#define SAMPRIV_ESTIMATION_HPP_

#include <cstdint>
#include <vector>

#include "sampriv/mechanisms.hpp"

namespace sampriv {

// Per-output, per-round aggregated counts: the only data an aggregator
// releases. round2 is empty for single-round mechanisms; absent_count is
// used by the sampling (toy) mechanisms whose owners may not participate.
struct CountTable {
  std::vector<int64_t> round1;
  std::vector<int64_t> round2;
  int64_t absent_count = 0;

  int32_t rounds() const { return round2.empty() ? 1 : 2; }
  friend bool operator==(const CountTable&, const CountTable&) = default;
};

struct OutputEstimate {
  int32_t output;
  double value;    // raw estimator output, may be negative
  double clamped;  // max(0, value)
};

// Recovered truthful count. per_output is non-empty only for multi-valued
// mechanisms; its scalar value is then the sum over outputs.
struct Estimate {
  double value;
  double clamped;
  std::vector<OutputEstimate> per_output;
};

// Algebraic cores shared by the table-based estimators. They accept real
// sums so expected values can be pushed through the same inversion.
double rr_estimate_value(double yes_count, double n_total, const RRParams& params);
double toy_estimate_value(double yes_count, double n_total, const ToyParams& params);
double sp_difference_estimate_value(double round2_count, double round1_count, double pi_s);

// Randomized response estimator: subtract the expected forced-"Yes" noise,
// then divide by the truthful-answer probability. Needs the total
// population size.
Estimate rr_estimate(int64_t yes_count, int64_t n_total, const RRParams& params);

// Sampling-with-deniability estimator: subtract the expected privacy noise
// pi_s*(1-pi1)*pi2*n, then divide by pi_s*pi1.
Estimate toy_estimate(int64_t yes_count, int64_t n_total, const ToyParams& params);

// Two-round binary estimator: (output-1 count of round two minus round one)
// divided by pi_s. Reads nothing but the two output-1 cells; in particular
// it never reads the population size.
Estimate sp_binary_estimate(const CountTable& counts, const SPBinarySpec& spec);

// Two-round multi-valued estimator: the binary difference estimator applied
// to each output 1..V; the scalar value is the sum over outputs.
Estimate sp_multi_estimate(const CountTable& counts, const SPMultiSpec& spec);

}  // namespace sampriv

#endif  // SAMPRIV_ESTIMATION_HPP_
