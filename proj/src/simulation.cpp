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

#include "sampriv/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sampriv/parallel.hpp"
#include "sampriv/stats.hpp"

namespace sampriv {

namespace {

Binary to_binary(TruthfulValue truth) {
  if (!truth.has_value()) return Binary::kNo;
  if (*truth == 1) return Binary::kYes;
  throw std::invalid_argument(
      "run_trial: binary mechanism given a population with values above 1");
}

// One aggregator's view: responses fold straight into per-output counts.
struct AggregatorTable {
  CountTable counts;
};

CountTable combine(std::vector<AggregatorTable> tables) {
  CountTable total = std::move(tables.front().counts);
  for (size_t i = 1; i < tables.size(); ++i) {
    const CountTable& t = tables[i].counts;
    for (size_t c = 0; c < total.round1.size(); ++c) total.round1[c] += t.round1[c];
    for (size_t c = 0; c < total.round2.size(); ++c) total.round2[c] += t.round2[c];
    total.absent_count += t.absent_count;
  }
  return total;
}

TrialStats trial_stats(std::span<const double> estimates, int64_t ground_truth) {
  std::vector<double> abs_errors(estimates.size());
  for (size_t i = 0; i < estimates.size(); ++i) {
    abs_errors[i] = std::abs(estimates[i] - static_cast<double>(ground_truth));
  }
  return TrialStats{static_cast<int32_t>(estimates.size()),
                    ground_truth,
                    mean(estimates),
                    sample_stddev(estimates),
                    mean(abs_errors),
                    percentile(abs_errors, 0.975)};
}

Estimate estimate_trial(const MechanismSpec& mechanism, const CountTable& table,
                        int64_t population_size) {
  struct Visitor {
    const CountTable& table;
    int64_t n;
    Estimate operator()(const RRParams& p) const {
      return rr_estimate(table.round1[1], n, p);
    }
    Estimate operator()(const ToyParams& p) const {
      return toy_estimate(table.round1[1], n, p);
    }
    Estimate operator()(const SPBinarySpec& p) const { return sp_binary_estimate(table, p); }
    Estimate operator()(const SPMultiSpec& p) const { return sp_multi_estimate(table, p); }
  };
  return std::visit(Visitor{table, population_size}, mechanism);
}

}  // namespace

int64_t PopulationSpec::yes_total() const {
  int64_t sum = 0;
  for (int64_t c : yes_counts) sum += c;
  return sum;
}

void PopulationSpec::validate() const {
  if (yes_counts.empty()) {
    throw std::invalid_argument("PopulationSpec: needs at least one monitored value");
  }
  for (int64_t c : yes_counts) {
    if (c < 0) throw std::invalid_argument("PopulationSpec: negative yes count");
  }
  if (no_count < 0) throw std::invalid_argument("PopulationSpec: negative no count");
  if (total() <= 0) throw std::invalid_argument("PopulationSpec: empty population");
}

std::vector<TruthfulValue> generate_population(const PopulationSpec& spec, uint64_t seed) {
  spec.validate();
  std::vector<TruthfulValue> owners;
  owners.reserve(static_cast<size_t>(spec.total()));
  for (int32_t v = 1; v <= spec.num_values(); ++v) {
    owners.insert(owners.end(), static_cast<size_t>(spec.yes_counts[v - 1]),
                  TruthfulValue(v));
  }
  owners.insert(owners.end(), static_cast<size_t>(spec.no_count), kNoAttribute);

  // Fisher-Yates with the population stream.
  SplitMix64 rng(seed);
  for (size_t i = owners.size() - 1; i > 0; --i) {
    const size_t j = static_cast<size_t>(rng.next_u64() % (i + 1));
    std::swap(owners[i], owners[j]);
  }
  return owners;
}

CountTable run_trial(std::span<const TruthfulValue> owners, const MechanismSpec& mechanism,
                     const AggregatorModel& aggregators, uint64_t seed) {
  if (owners.empty()) throw std::invalid_argument("run_trial: empty population");
  if (aggregators.k < 1) throw std::invalid_argument("run_trial: needs >= 1 aggregator");

  struct Visitor {
    std::span<const TruthfulValue> owners;
    const AggregatorModel& agg;
    uint64_t seed;

    std::vector<AggregatorTable> make_tables(size_t outputs, bool two_rounds) const {
      std::vector<AggregatorTable> tables(static_cast<size_t>(agg.k));
      for (auto& t : tables) {
        t.counts.round1.assign(outputs, 0);
        if (two_rounds) t.counts.round2.assign(outputs, 0);
      }
      return tables;
    }

    size_t table_index(size_t owner) const {
      return agg.k == 1 ? 0
                        : static_cast<size_t>(agg.assign(static_cast<int64_t>(owner)));
    }

    CountTable operator()(const RRParams& params) const {
      auto tables = make_tables(2, false);
      for (size_t i = 0; i < owners.size(); ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const Binary response = rr_privatize(to_binary(owners[i]), params, rng);
        auto& counts = tables[table_index(i)].counts;
        ++counts.round1[static_cast<size_t>(response)];
      }
      return combine(std::move(tables));
    }

    CountTable operator()(const ToyParams& params) const {
      auto tables = make_tables(2, false);
      for (size_t i = 0; i < owners.size(); ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const std::optional<Binary> response =
            toy_privatize(to_binary(owners[i]), params, rng);
        auto& counts = tables[table_index(i)].counts;
        if (response.has_value()) {
          ++counts.round1[static_cast<size_t>(*response)];
        } else {
          ++counts.absent_count;
        }
      }
      return combine(std::move(tables));
    }

    CountTable operator()(const SPBinarySpec& spec) const {
      auto tables = make_tables(2, true);
      for (size_t i = 0; i < owners.size(); ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const ResponsePair pair = sp_binary_privatize(to_binary(owners[i]), spec, rng);
        auto& counts = tables[table_index(i)].counts;
        ++counts.round1[static_cast<size_t>(pair.round1)];
        ++counts.round2[static_cast<size_t>(pair.round2)];
      }
      return combine(std::move(tables));
    }

    CountTable operator()(const SPMultiSpec& spec) const {
      auto tables = make_tables(static_cast<size_t>(spec.num_values()) + 1, true);
      for (size_t i = 0; i < owners.size(); ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const ResponsePair pair = sp_multi_privatize(owners[i], spec, rng);
        auto& counts = tables[table_index(i)].counts;
        ++counts.round1[static_cast<size_t>(pair.round1)];
        ++counts.round2[static_cast<size_t>(pair.round2)];
      }
      return combine(std::move(tables));
    }
  };
  return std::visit(Visitor{owners, aggregators, seed}, mechanism);
}

ExperimentResult run_experiment(const PopulationSpec& population,
                                const MechanismSpec& mechanism, int32_t trials,
                                uint64_t master_seed, const AggregatorModel& aggregators,
                                int threads) {
  if (trials < 2) throw std::invalid_argument("run_experiment: needs >= 2 trials");
  population.validate();
  const bool multi = std::holds_alternative<SPMultiSpec>(mechanism);
  if (multi) {
    const auto& spec = std::get<SPMultiSpec>(mechanism);
    if (spec.num_values() != population.num_values()) {
      throw std::invalid_argument("run_experiment: mechanism arity != population arity");
    }
  } else if (population.num_values() != 1) {
    throw std::invalid_argument("run_experiment: binary mechanism needs a binary population");
  }

  const std::vector<TruthfulValue> owners =
      generate_population(population, derive_seed(master_seed, 0));
  const int32_t num_values = population.num_values();

  std::vector<double> totals(static_cast<size_t>(trials));
  std::vector<std::vector<double>> per_output(
      multi ? static_cast<size_t>(num_values) : 0,
      std::vector<double>(static_cast<size_t>(trials)));

  parallel_for(trials, threads, [&](int64_t t) {
    const CountTable table =
        run_trial(owners, mechanism, aggregators, derive_seed(master_seed, 1 + static_cast<uint64_t>(t)));
    const Estimate estimate =
        estimate_trial(mechanism, table, static_cast<int64_t>(owners.size()));
    totals[static_cast<size_t>(t)] = estimate.value;
    for (size_t v = 0; v < per_output.size(); ++v) {
      per_output[v][static_cast<size_t>(t)] = estimate.per_output[v].value;
    }
  });

  ExperimentResult result{trial_stats(totals, population.yes_total()), {}};
  result.per_output.reserve(per_output.size());
  for (size_t v = 0; v < per_output.size(); ++v) {
    result.per_output.push_back(
        trial_stats(per_output[v], population.yes_counts[v]));
  }
  return result;
}

std::vector<TrialStats> run_rr_per_value(const PopulationSpec& population,
                                         const RRParams& params, int32_t trials,
                                         uint64_t master_seed,
                                         const AggregatorModel& aggregators, int threads) {
  population.validate();
  std::vector<TrialStats> stats;
  stats.reserve(population.yes_counts.size());
  for (int32_t v = 1; v <= population.num_values(); ++v) {
    const PopulationSpec binary{{population.yes_counts[v - 1]},
                                population.total() - population.yes_counts[v - 1]};
    const ExperimentResult result =
        run_experiment(binary, params, trials, derive_seed(master_seed, static_cast<uint64_t>(v)),
                       aggregators, threads);
    stats.push_back(result.total);
  }
  return stats;
}

}  // namespace sampriv
