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

#include <algorithm>
#include <cmath>
#include <limits>

#include "sampriv/csv.hpp"
#include "sampriv/parallel.hpp"

namespace sampriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int64_t kMinEmpiricalSamples = 100000;
constexpr int64_t kSampleBlock = 1 << 16;

EpsilonReport finalize(std::string mechanism, std::string params,
                       std::vector<ObservableLeakage> observables) {
  EpsilonReport report{std::move(mechanism), std::move(params), std::move(observables),
                       0.0, true};
  for (const ObservableLeakage& cell : report.per_observable) {
    if (!cell.bounded) {
      report.bounded = false;
      report.epsilon = kInf;
    } else if (report.bounded) {
      report.epsilon = std::max(report.epsilon, cell.log_ratio);
    }
  }
  return report;
}

ObservableLeakage cell_leakage(std::string label, double p_a, double p_b) {
  if (p_a > 0.0 && p_b > 0.0) {
    return {std::move(label), std::abs(std::log(p_a / p_b)), true};
  }
  if (p_a == 0.0 && p_b == 0.0) return {std::move(label), 0.0, true};
  return {std::move(label), kInf, false};
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

EpsilonReport rr_epsilon_noraise(double pi1, double pi2) {
  check_probability(pi1, "rr_epsilon: pi1");
  check_probability(pi2, "rr_epsilon: pi2");
  const double p_yes_truthful = pi1 + (1.0 - pi1) * pi2;
  const double p_yes_forced = (1.0 - pi1) * pi2;
  const std::string params = "pi1=" + format_double(pi1) + ",pi2=" + format_double(pi2);
  return finalize("rr", params, {cell_leakage("r1:1", p_yes_truthful, p_yes_forced)});
}

EpsilonReport sp_binary_epsilon_noraise(double pi0, double pi_s) {
  check_probability(pi0, "sp_binary_epsilon: pi0");
  check_probability(pi_s, "sp_binary_epsilon: pi_s");
  if (pi0 + pi_s > 1.0) {
    throw std::invalid_argument("sp_binary_epsilon: pi0 + pi_s must not exceed 1");
  }
  const std::string params = "pi0=" + format_double(pi0) + ",pi_s=" + format_double(pi_s);
  std::vector<ObservableLeakage> cells;
  cells.push_back({"r1:0", 0.0, true});
  cells.push_back({"r1:1", 0.0, true});
  if (pi_s == 0.0) {
    // Rounds are identical; nothing shifts.
    cells.push_back({"r2:0", 0.0, true});
    cells.push_back({"r2:1", 0.0, true});
  } else {
    cells.push_back(cell_leakage("r2:0", pi0 + pi_s, pi0));
    cells.push_back(cell_leakage("r2:1", 1.0 - pi0, 1.0 - pi0 - pi_s));
  }
  return finalize("sp-binary", params, std::move(cells));
}

EpsilonReport sp_multi_epsilon_noraise(double pi_v, double pi_s) {
  check_probability(pi_v, "sp_multi_epsilon: pi_v");
  check_probability(pi_s, "sp_multi_epsilon: pi_s");
  const std::string params = "pi_v=" + format_double(pi_v) + ",pi_s=" + format_double(pi_s);
  ObservableLeakage cell = pi_s == 0.0 ? ObservableLeakage{"r2:truthful", 0.0, true}
                                       : cell_leakage("r2:truthful", pi_v + pi_s, pi_v);
  return finalize("sp-multi", params, {std::move(cell)});
}

EpsilonReport raise_if_unbounded(EpsilonReport report) {
  if (!report.bounded) {
    throw InfiniteLeakageError(report.mechanism +
                               " leaks infinitely at these parameters (" + report.params +
                               ")");
  }
  return report;
}

Binary to_binary(TruthfulValue truth) {
  if (!truth.has_value()) return Binary::kNo;
  if (*truth == 1) return Binary::kYes;
  throw std::invalid_argument("binary mechanism: truthful value must be none or 1");
}

// Observable cells of one sampled response. Marginal mode counts each round
// as its own cell; joint mode counts the linked (round1, round2) pair.
struct CellSpace {
  int64_t num_cells;
  bool joint;
};

CellSpace cell_space(const MechanismSpec& mechanism, bool joint) {
  struct Visitor {
    bool joint;
    CellSpace operator()(const RRParams&) const { return {2, false}; }
    CellSpace operator()(const ToyParams&) const { return {3, false}; }
    CellSpace operator()(const SPBinarySpec&) const { return {4, joint}; }
    CellSpace operator()(const SPMultiSpec& spec) const {
      const int64_t width = spec.num_values() + 1;
      return {joint ? width * width : 2 * width, joint};
    }
  };
  return std::visit(Visitor{joint}, mechanism);
}

// Appends the cell indices of one fresh response to sink.
template <typename Sink>
void sample_cells(const MechanismSpec& mechanism, TruthfulValue truth, bool joint,
                  SplitMix64& rng, Sink&& sink) {
  struct Visitor {
    TruthfulValue truth;
    bool joint;
    SplitMix64& rng;
    Sink& sink;

    void operator()(const RRParams& params) const {
      sink(static_cast<int64_t>(rr_privatize(to_binary(truth), params, rng)));
    }
    void operator()(const ToyParams& params) const {
      const std::optional<Binary> response = toy_privatize(to_binary(truth), params, rng);
      sink(response.has_value() ? static_cast<int64_t>(*response) : 2);
    }
    void operator()(const SPBinarySpec& spec) const {
      const ResponsePair pair = sp_binary_privatize(to_binary(truth), spec, rng);
      if (joint) {
        sink(pair.round1 * 2 + pair.round2);
      } else {
        sink(pair.round1);
        sink(2 + pair.round2);
      }
    }
    void operator()(const SPMultiSpec& spec) const {
      const ResponsePair pair = sp_multi_privatize(truth, spec, rng);
      const int64_t width = spec.num_values() + 1;
      if (joint) {
        sink(pair.round1 * width + pair.round2);
      } else {
        sink(pair.round1);
        sink(width + pair.round2);
      }
    }
  };
  std::visit(Visitor{truth, joint, rng, sink}, mechanism);
}

std::string cell_label(const MechanismSpec& mechanism, bool joint, int64_t cell) {
  struct Visitor {
    bool joint;
    int64_t cell;
    std::string operator()(const RRParams&) const { return "r1:" + std::to_string(cell); }
    std::string operator()(const ToyParams&) const {
      return cell == 2 ? "r1:absent" : "r1:" + std::to_string(cell);
    }
    std::string pair_label(int64_t width) const {
      if (joint) {
        return "pair:" + std::to_string(cell / width) + "->" + std::to_string(cell % width);
      }
      const int64_t round = cell / width;
      return "r" + std::to_string(round + 1) + ":" + std::to_string(cell % width);
    }
    std::string operator()(const SPBinarySpec&) const { return pair_label(2); }
    std::string operator()(const SPMultiSpec& spec) const {
      return pair_label(spec.num_values() + 1);
    }
  };
  return std::visit(Visitor{joint, cell}, mechanism);
}

std::string mechanism_label(const MechanismSpec& mechanism) {
  struct Visitor {
    std::string operator()(const RRParams&) const { return "rr"; }
    std::string operator()(const ToyParams&) const { return "toy"; }
    std::string operator()(const SPBinarySpec&) const { return "sp-binary"; }
    std::string operator()(const SPMultiSpec&) const { return "sp-multi"; }
  };
  return std::visit(Visitor{}, mechanism);
}

std::string params_echo(const MechanismSpec& mechanism) {
  struct Visitor {
    std::string operator()(const RRParams& p) const {
      return "pi1=" + format_double(p.pi1) + ",pi2=" + format_double(p.pi2);
    }
    std::string operator()(const ToyParams& p) const {
      return "pi_s=" + format_double(p.pi_s) + ",pi1=" + format_double(p.pi1) +
             ",pi2=" + format_double(p.pi2);
    }
    std::string operator()(const SPBinarySpec& p) const {
      return "pi0=" + format_double(p.pi0) + ",pi_s=" + format_double(p.pi_s);
    }
    std::string operator()(const SPMultiSpec& p) const {
      std::string echo = "pis=";
      for (int32_t v = 0; v <= p.num_values(); ++v) {
        if (v > 0) echo += '|';
        echo += format_double(p.pi(v));
      }
      return echo + ",pi_s=" + format_double(p.pi_s());
    }
  };
  return std::visit(Visitor{}, mechanism);
}

// Frequency counts over the cell space for one truth hypothesis. Blocks are
// seeded independently, so the merge order never changes the totals.
std::vector<int64_t> count_cells(const MechanismSpec& mechanism, TruthfulValue truth,
                                 bool joint, int64_t samples, uint64_t seed) {
  const CellSpace space = cell_space(mechanism, joint);
  const int64_t num_blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::vector<int64_t>> block_counts(
      static_cast<size_t>(num_blocks),
      std::vector<int64_t>(static_cast<size_t>(space.num_cells), 0));

  parallel_for(num_blocks, 0, [&](int64_t block) {
    auto& counts = block_counts[static_cast<size_t>(block)];
    SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(block)));
    const int64_t begin = block * kSampleBlock;
    const int64_t end = std::min(samples, begin + kSampleBlock);
    const auto sink = [&counts](int64_t cell) { ++counts[static_cast<size_t>(cell)]; };
    for (int64_t i = begin; i < end; ++i) {
      sample_cells(mechanism, truth, joint, rng, sink);
    }
  });

  std::vector<int64_t> total(static_cast<size_t>(space.num_cells), 0);
  for (const auto& counts : block_counts) {
    for (size_t c = 0; c < total.size(); ++c) total[c] += counts[c];
  }
  return total;
}

EpsilonReport frequency_epsilon(const MechanismSpec& mechanism, TruthfulValue truth_a,
                                TruthfulValue truth_b, int64_t samples, uint64_t seed,
                                bool joint) {
  if (samples < kMinEmpiricalSamples) {
    throw std::invalid_argument("empirical_epsilon: needs at least 1e5 samples");
  }
  const std::vector<int64_t> counts_a =
      count_cells(mechanism, truth_a, joint, samples, derive_seed(seed, 0));
  const std::vector<int64_t> counts_b =
      count_cells(mechanism, truth_b, joint, samples, derive_seed(seed, 1));

  std::vector<ObservableLeakage> cells;
  for (size_t c = 0; c < counts_a.size(); ++c) {
    if (counts_a[c] == 0 && counts_b[c] == 0) continue;  // cell never occurs
    const double p_a = static_cast<double>(counts_a[c]) / static_cast<double>(samples);
    const double p_b = static_cast<double>(counts_b[c]) / static_cast<double>(samples);
    cells.push_back(
        cell_leakage(cell_label(mechanism, joint, static_cast<int64_t>(c)), p_a, p_b));
  }
  const std::string name =
      mechanism_label(mechanism) + (joint ? " (joint pairs, empirical)" : " (empirical)");
  return finalize(name, params_echo(mechanism), std::move(cells));
}

}  // namespace

EpsilonReport rr_epsilon(const RRParams& params) {
  return raise_if_unbounded(rr_epsilon_noraise(params.pi1, params.pi2));
}

EpsilonReport rr_epsilon(double pi1, double pi2) {
  return raise_if_unbounded(rr_epsilon_noraise(pi1, pi2));
}

EpsilonReport sp_binary_epsilon(const SPBinarySpec& spec) {
  return raise_if_unbounded(sp_binary_epsilon_noraise(spec.pi0, spec.pi_s));
}

EpsilonReport sp_binary_epsilon(double pi0, double pi_s) {
  return raise_if_unbounded(sp_binary_epsilon_noraise(pi0, pi_s));
}

EpsilonReport sp_multi_epsilon(const SPMultiSpec& spec, int32_t v) {
  if (v < 1 || v > spec.num_values()) {
    throw std::invalid_argument("sp_multi_epsilon: v must lie in 1..V");
  }
  EpsilonReport report =
      raise_if_unbounded(sp_multi_epsilon_noraise(spec.pi(v), spec.pi_s()));
  // Every other output and both round-one views are truth-independent.
  std::vector<ObservableLeakage> cells;
  for (int32_t out = 0; out <= spec.num_values(); ++out) {
    cells.push_back({"r1:" + std::to_string(out), 0.0, true});
  }
  for (int32_t out = 0; out <= spec.num_values(); ++out) {
    if (out == v) {
      cells.push_back({"r2:" + std::to_string(out), report.epsilon, true});
    } else {
      cells.push_back({"r2:" + std::to_string(out), 0.0, true});
    }
  }
  return finalize(report.mechanism, report.params, std::move(cells));
}

EpsilonReport sp_multi_epsilon(double pi_v, double pi_s) {
  return raise_if_unbounded(sp_multi_epsilon_noraise(pi_v, pi_s));
}

EpsilonReport empirical_epsilon(const MechanismSpec& mechanism, TruthfulValue truth_a,
                                TruthfulValue truth_b, int64_t samples, uint64_t seed) {
  return frequency_epsilon(mechanism, truth_a, truth_b, samples, seed, /*joint=*/false);
}

EpsilonReport joint_pair_epsilon(const MechanismSpec& mechanism, TruthfulValue truth_a,
                                 TruthfulValue truth_b, int64_t samples, uint64_t seed) {
  return frequency_epsilon(mechanism, truth_a, truth_b, samples, seed, /*joint=*/true);
}

std::vector<SweepRow> epsilon_sweep(MechanismFamily family, std::span<const double> grid,
                                    double fixed_param) {
  if (grid.empty()) throw std::invalid_argument("epsilon_sweep: empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    const EpsilonReport report = family == MechanismFamily::kRandomizedResponse
                                     ? rr_epsilon_noraise(fixed_param, x)
                                     : sp_multi_epsilon_noraise(x, fixed_param);
    rows.push_back({family, x, report.epsilon, report.bounded});
  }
  return rows;
}

}  // namespace sampriv
