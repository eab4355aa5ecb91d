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

#ifndef SAMPRIV_STATS_HPP_
#define SAMPRIV_STATS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace sampriv {

double mean(std::span<const double> values);

// Unbiased (n-1) sample standard deviation.
double sample_stddev(std::span<const double> values);

// Nearest-rank percentile, q in (0, 1].
double percentile(std::span<const double> values, double q);

// Pearson goodness-of-fit p-value of observed counts against expected cell
// probabilities. Cells whose expected count falls below min_expected are
// pooled into one before computing the statistic.
double chi_squared_gof_pvalue(std::span<const int64_t> observed,
                              std::span<const double> expected_probs,
                              double min_expected = 5.0);

// Two-sample homogeneity p-value for category counts a and b. Categories
// with a pooled expected count below min_expected are merged.
double chi_squared_homogeneity_pvalue(std::span<const int64_t> a,
                                      std::span<const int64_t> b,
                                      double min_expected = 5.0);

}  // namespace sampriv

#endif  // SAMPRIV_STATS_HPP_
