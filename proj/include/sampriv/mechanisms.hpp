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

#ifndef SAMPRIV_MECHANISMS_HPP_
#define SAMPRIV_MECHANISMS_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "sampriv/random.hpp"

namespace sampriv {

// A binary truthful answer or privatized response.
enum class Binary : int32_t { kNo = 0, kYes = 1 };

// Truthful value of one data owner for a multi-valued query: nullopt when
// the owner holds no monitored attribute (padding population), otherwise a
// categorical value in 1..V.
using TruthfulValue = std::optional<int32_t>;
inline constexpr TruthfulValue kNoAttribute = std::nullopt;

// Two biased coins of the randomized response mechanism: with probability
// pi1 the owner answers truthfully, otherwise a second coin forces "Yes"
// with probability pi2. Degenerate endpoints (pi1 in {0,1}, pi2 in {0,1})
// are accepted so that boundary behaviour can be exercised; the leakage
// computation rejects the settings that leak infinitely.
struct RRParams {
  double pi1;
  double pi2;
  RRParams(double pi1, double pi2);
};

// Sampling-with-plausible-deniability parameters: owners participate with
// probability pi_s and, when they do, answer through the (pi1, pi2) coin
// pair.
struct ToyParams {
  double pi_s;
  double pi1;
  double pi2;
  ToyParams(double pi_s, double pi1, double pi2);
};

// Three-sided die of the binary two-round mechanism. Face masses are
// (pi0, 1 - pi0 - pi_s, pi_s) for (output 0, output 1, sampled); the
// sampled face writes 0 in round one and shifts truthful "Yes" owners to 1
// in round two.
struct SPBinarySpec {
  double pi0;
  double pi_s;
  SPBinarySpec(double pi0, double pi_s);
  // Mass of the output-1 face.
  double pi1_mass() const { return 1.0 - pi0 - pi_s; }
};

// (V+2)-faced die of the multi-valued two-round mechanism: one face per
// visible output 0..V plus a hidden sampled face of mass pi_s. All face
// masses must be strictly positive and sum to one (tolerance 1e-9); there
// is no implicit remainder face.
class SPMultiSpec {
 public:
  SPMultiSpec(std::vector<double> pis, double pi_s);

  // Equal visible-face masses (1 - pi_s) / (V + 1).
  static SPMultiSpec Uniform(int32_t num_values, double pi_s);

  int32_t num_values() const { return static_cast<int32_t>(pis_.size()) - 1; }
  double pi(int32_t output) const { return pis_[static_cast<size_t>(output)]; }
  double pi_s() const { return pi_s_; }

  // Cumulative masses over (face_0, ..., face_V, sampled), for single-draw
  // inverse-CDF sampling.
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  std::vector<double> pis_;
  double pi_s_;
  std::vector<double> cumulative_;
};

// Correlated two-round output of one owner. The rounds come from a single
// die draw, so they differ only when the sampled face was drawn and the
// owner holds a truthful value.
struct ResponsePair {
  int32_t round1;
  int32_t round2;
  friend bool operator==(const ResponsePair&, const ResponsePair&) = default;
};

// Any mechanism configuration accepted by the simulation harness.
using MechanismSpec = std::variant<RRParams, ToyParams, SPBinarySpec, SPMultiSpec>;

// Randomized response: answer truthfully if the first coin lands heads,
// otherwise answer the second coin.
Binary rr_privatize(Binary truth, const RRParams& params, SplitMix64& rng);

// Pure sampling: respond 1 with probability pi_s regardless of the truthful
// value, otherwise do not participate. Never responds 0. Requires
// 0 < pi_s <= 1.
std::optional<Binary> toy_sample_noise(Binary truth, double pi_s, SplitMix64& rng);

// Sampling with plausible deniability: participate with probability pi_s,
// then answer through the randomized-response coin pair. nullopt means the
// owner did not participate.
std::optional<Binary> toy_privatize(Binary truth, const ToyParams& params, SplitMix64& rng);

// Two-round binary privatization from one die draw.
ResponsePair sp_binary_privatize(Binary truth, const SPBinarySpec& spec, SplitMix64& rng);

// Two-round multi-valued privatization from one die draw. The sampled face
// writes 0 in round one; in round two it shifts to the truthful value, or
// stays at 0 for owners without a monitored attribute. Requires truth in
// 1..V when present.
ResponsePair sp_multi_privatize(TruthfulValue truth, const SPMultiSpec& spec, SplitMix64& rng);

}  // namespace sampriv

#endif  // SAMPRIV_MECHANISMS_HPP_
