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

#include "sampriv/estimation.hpp"

#include <algorithm>
#include <stdexcept>

namespace sampriv {

namespace {

Estimate scalar_estimate(double value) {
  return Estimate{value, std::max(0.0, value), {}};
}

void check_counts(int64_t yes_count, int64_t n_total) {
  if (n_total <= 0) throw std::invalid_argument("estimate: n_total must be positive");
  if (yes_count < 0 || yes_count > n_total) {
    throw std::invalid_argument("estimate: yes_count must lie in [0, n_total]");
  }
}

void check_two_round_table(const CountTable& counts, size_t num_outputs) {
  if (counts.rounds() != 2 || counts.round1.size() != num_outputs ||
      counts.round2.size() != num_outputs) {
    throw std::invalid_argument("estimate: count table shape does not match the mechanism");
  }
  for (const auto& round : {counts.round1, counts.round2}) {
    for (int64_t c : round) {
      if (c < 0) throw std::invalid_argument("estimate: counts must be non-negative");
    }
  }
}

}  // namespace

double rr_estimate_value(double yes_count, double n_total, const RRParams& params) {
  if (params.pi1 == 0.0) {
    throw std::domain_error("rr_estimate: pi1 = 0 leaves nothing to invert");
  }
  return (yes_count - (1.0 - params.pi1) * params.pi2 * n_total) / params.pi1;
}

double toy_estimate_value(double yes_count, double n_total, const ToyParams& params) {
  const double scale = params.pi_s * params.pi1;
  if (scale == 0.0) {
    throw std::domain_error("toy_estimate: pi_s * pi1 = 0 leaves nothing to invert");
  }
  const double noise = params.pi_s * (1.0 - params.pi1) * params.pi2 * n_total;
  return (yes_count - noise) / scale;
}

double sp_difference_estimate_value(double round2_count, double round1_count, double pi_s) {
  if (pi_s == 0.0) {
    throw std::domain_error("sp_estimate: pi_s = 0 shifts no one between rounds");
  }
  return (round2_count - round1_count) / pi_s;
}

Estimate rr_estimate(int64_t yes_count, int64_t n_total, const RRParams& params) {
  check_counts(yes_count, n_total);
  return scalar_estimate(rr_estimate_value(static_cast<double>(yes_count),
                                           static_cast<double>(n_total), params));
}

Estimate toy_estimate(int64_t yes_count, int64_t n_total, const ToyParams& params) {
  check_counts(yes_count, n_total);
  return scalar_estimate(toy_estimate_value(static_cast<double>(yes_count),
                                            static_cast<double>(n_total), params));
}

Estimate sp_binary_estimate(const CountTable& counts, const SPBinarySpec& spec) {
  check_two_round_table(counts, 2);
  return scalar_estimate(sp_difference_estimate_value(
      static_cast<double>(counts.round2[1]), static_cast<double>(counts.round1[1]),
      spec.pi_s));
}

Estimate sp_multi_estimate(const CountTable& counts, const SPMultiSpec& spec) {
  const auto num_outputs = static_cast<size_t>(spec.num_values()) + 1;
  check_two_round_table(counts, num_outputs);

  Estimate result{0.0, 0.0, {}};
  result.per_output.reserve(num_outputs - 1);
  for (int32_t v = 1; v <= spec.num_values(); ++v) {
    const double value = sp_difference_estimate_value(
        static_cast<double>(counts.round2[static_cast<size_t>(v)]),
        static_cast<double>(counts.round1[static_cast<size_t>(v)]), spec.pi_s());
    result.per_output.push_back({v, value, std::max(0.0, value)});
    result.value += value;
  }
  result.clamped = std::max(0.0, result.value);
  return result;
}

}  // namespace sampriv
