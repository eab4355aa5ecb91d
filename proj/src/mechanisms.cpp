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

#include "sampriv/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sampriv {

namespace {

constexpr double kMassTolerance = 1e-9;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

RRParams::RRParams(double pi1, double pi2) : pi1(pi1), pi2(pi2) {
  require(pi1 >= 0.0 && pi1 <= 1.0, "RRParams: pi1 must lie in [0, 1]");
  require(pi2 >= 0.0 && pi2 <= 1.0, "RRParams: pi2 must lie in [0, 1]");
}

ToyParams::ToyParams(double pi_s, double pi1, double pi2)
    : pi_s(pi_s), pi1(pi1), pi2(pi2) {
  require(pi_s > 0.0 && pi_s <= 1.0, "ToyParams: pi_s must lie in (0, 1]");
  require(pi1 > 0.0 && pi1 < 1.0, "ToyParams: pi1 must lie in (0, 1)");
  require(pi2 >= 0.0 && pi2 < 1.0, "ToyParams: pi2 must lie in [0, 1)");
}

SPBinarySpec::SPBinarySpec(double pi0, double pi_s) : pi0(pi0), pi_s(pi_s) {
  require(pi0 >= 0.0, "SPBinarySpec: pi0 must be non-negative");
  require(pi_s >= 0.0, "SPBinarySpec: pi_s must be non-negative");
  require(pi0 + pi_s <= 1.0 + kMassTolerance,
          "SPBinarySpec: pi0 + pi_s must not exceed 1");
}

SPMultiSpec::SPMultiSpec(std::vector<double> pis, double pi_s)
    : pis_(std::move(pis)), pi_s_(pi_s) {
  require(pis_.size() >= 2, "SPMultiSpec: needs faces for outputs 0..V, V >= 1");
  double sum = pi_s_;
  for (double p : pis_) {
    require(p > 0.0, "SPMultiSpec: every face mass must be positive");
    sum += p;
  }
  require(pi_s_ > 0.0, "SPMultiSpec: pi_s must be positive");
  require(std::abs(sum - 1.0) <= kMassTolerance,
          "SPMultiSpec: face masses plus pi_s must sum to 1");

  cumulative_.reserve(pis_.size() + 1);
  double acc = 0.0;
  for (double p : pis_) {
    acc += p;
    cumulative_.push_back(acc);
  }
  cumulative_.push_back(1.0);  // sampled face takes the remainder
}

SPMultiSpec SPMultiSpec::Uniform(int32_t num_values, double pi_s) {
  require(num_values >= 1, "SPMultiSpec: num_values must be >= 1");
  require(pi_s > 0.0 && pi_s < 1.0, "SPMultiSpec: pi_s must lie in (0, 1)");
  const double face = (1.0 - pi_s) / (num_values + 1);
  return SPMultiSpec(std::vector<double>(static_cast<size_t>(num_values) + 1, face), pi_s);
}

Binary rr_privatize(Binary truth, const RRParams& params, SplitMix64& rng) {
  if (rng.bernoulli(params.pi1)) return truth;
  return rng.bernoulli(params.pi2) ? Binary::kYes : Binary::kNo;
}

std::optional<Binary> toy_sample_noise(Binary /*truth*/, double pi_s, SplitMix64& rng) {
  require(pi_s > 0.0 && pi_s <= 1.0, "toy_sample_noise: pi_s must lie in (0, 1]");
  if (rng.bernoulli(pi_s)) return Binary::kYes;
  return std::nullopt;
}

std::optional<Binary> toy_privatize(Binary truth, const ToyParams& params, SplitMix64& rng) {
  if (!rng.bernoulli(params.pi_s)) return std::nullopt;
  return rr_privatize(truth, RRParams(params.pi1, params.pi2), rng);
}

ResponsePair sp_binary_privatize(Binary truth, const SPBinarySpec& spec, SplitMix64& rng) {
  // Face order matches the multi-valued die: (output 0, output 1, sampled).
  const double u = rng.next_unit();
  if (u < spec.pi0) return {0, 0};
  if (u < spec.pi0 + spec.pi1_mass()) return {1, 1};
  // Sampled face: baseline 0 in round one, shift truthful "Yes" owners.
  return {0, truth == Binary::kYes ? 1 : 0};
}

ResponsePair sp_multi_privatize(TruthfulValue truth, const SPMultiSpec& spec, SplitMix64& rng) {
  if (truth.has_value()) {
    require(*truth >= 1 && *truth <= spec.num_values(),
            "sp_multi_privatize: truthful value out of range 1..V");
  }
  const std::vector<double>& cum = spec.cumulative();
  const double u = rng.next_unit();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const auto face = static_cast<int32_t>(it - cum.begin());
  if (face <= spec.num_values()) return {face, face};
  // Sampled face: output 0 in round one, truthful value (if any) in round two.
  return {0, truth.has_value() ? *truth : 0};
}

}  // namespace sampriv
