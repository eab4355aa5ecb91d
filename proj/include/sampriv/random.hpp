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

#ifndef SAMPRIV_RANDOM_HPP_
#define SAMPRIV_RANDOM_HPP_

#include <cstdint>

namespace sampriv {

// Weyl-sequence increment used by SplitMix64 (Steele, Lea & Flood 2014).
inline constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// 64-bit avalanching finalizer (Stafford/Vigna variant 13).
constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of an independent child stream. All fan-out in the library goes
// through this: per-owner streams from a trial seed, per-trial streams from
// a master seed, per-block streams for parallel frequency counting. Child
// streams are reproducible regardless of evaluation order or thread count.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) {
  return mix64(seed + kGoldenGamma * (index + 1));
}

// Splittable counter-based uniform generator. One owner (or trial, or
// sample block) holds one stream; the state is a single counter, so streams
// are cheap to create in bulk.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

  constexpr uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p) { return next_unit() < p; }

 private:
  uint64_t state_;
};

}  // namespace sampriv

#endif  // SAMPRIV_RANDOM_HPP_
