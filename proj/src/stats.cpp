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

#include "sampriv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace sampriv {

namespace {

double chi_squared_pvalue(double statistic, int64_t dof) {
  if (dof < 1) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("sample_stddev: needs >= 2 values");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile: no values");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("percentile: q must lie in (0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

double chi_squared_gof_pvalue(std::span<const int64_t> observed,
                              std::span<const double> expected_probs,
                              double min_expected) {
  if (observed.size() != expected_probs.size() || observed.empty()) {
    throw std::invalid_argument("chi_squared_gof: shape mismatch");
  }
  int64_t total = 0;
  for (int64_t o : observed) total += o;
  if (total <= 0) throw std::invalid_argument("chi_squared_gof: no observations");

  // Pool sparse cells so the chi-squared approximation stays valid.
  double pooled_observed = 0.0, pooled_expected = 0.0;
  double statistic = 0.0;
  int64_t cells = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    if (expected < min_expected) {
      pooled_observed += static_cast<double>(observed[i]);
      pooled_expected += expected;
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    statistic += diff * diff / expected;
    ++cells;
  }
  if (pooled_expected > 0.0) {
    const double diff = pooled_observed - pooled_expected;
    statistic += diff * diff / pooled_expected;
    ++cells;
  }
  return chi_squared_pvalue(statistic, cells - 1);
}

double chi_squared_homogeneity_pvalue(std::span<const int64_t> a,
                                      std::span<const int64_t> b,
                                      double min_expected) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("chi_squared_homogeneity: shape mismatch");
  }
  double total_a = 0.0, total_b = 0.0;
  for (int64_t v : a) total_a += static_cast<double>(v);
  for (int64_t v : b) total_b += static_cast<double>(v);
  const double total = total_a + total_b;
  if (total_a <= 0.0 || total_b <= 0.0) {
    throw std::invalid_argument("chi_squared_homogeneity: empty sample");
  }

  double statistic = 0.0;
  double pooled_a = 0.0, pooled_b = 0.0, pooled_col = 0.0;
  int64_t cells = 0;
  const auto add_category = [&](double obs_a, double obs_b, double col_total) {
    const double expected_a = total_a * col_total / total;
    const double expected_b = total_b * col_total / total;
    statistic += (obs_a - expected_a) * (obs_a - expected_a) / expected_a;
    statistic += (obs_b - expected_b) * (obs_b - expected_b) / expected_b;
    ++cells;
  };
  for (size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0.0) continue;
    const double min_col_expected = std::min(total_a, total_b) * col / total;
    if (min_col_expected < min_expected) {
      pooled_a += static_cast<double>(a[i]);
      pooled_b += static_cast<double>(b[i]);
      pooled_col += col;
      continue;
    }
    add_category(static_cast<double>(a[i]), static_cast<double>(b[i]), col);
  }
  if (pooled_col > 0.0) add_category(pooled_a, pooled_b, pooled_col);
  return chi_squared_pvalue(statistic, cells - 1);
}

}  // namespace sampriv
