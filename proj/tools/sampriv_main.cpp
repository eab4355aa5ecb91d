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

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sampriv/csv.hpp"
#include "sampriv/estimation.hpp"
#include "sampriv/ingest.hpp"
#include "sampriv/mechanisms.hpp"
#include "sampriv/privacy.hpp"
#include "sampriv/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 1;
constexpr int kExitIoFailure = 2;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  uint64_t seed = 0;
  int32_t trials = 1000;
  int32_t aggregators = 1;
  std::string out = "-";
};

struct SimulateOptions {
  CommonOptions common;
  std::string mechanism;
  double pi1 = 0.8;
  double pi2 = 0.2;
  double pi0 = 0.3;
  double pi_s = 0.45;
  std::vector<double> pis;
  std::vector<int64_t> yes;
  int64_t no = 0;
};

struct EpsilonOptions {
  std::string family = "both";
  double pi1 = 0.8;
  double pi_s = 0.45;
  double grid_start = 0.0;
  double grid_step = 0.05;
  std::vector<double> grid;
  std::string out = "-";
};

struct DatasetOptions {
  CommonOptions common;
  std::string kind;
  std::string file;
  std::string attribute = "age";
  std::vector<double> grid_bounds;
  std::vector<int64_t> window;
  int64_t pad = -1;  // -1 = default per kind
  int32_t top = 0;
  double pi1 = 0.8;
  double pi2 = 0.2;
  double pi_s = 0.45;
};

void add_common_options(CLI::App* cmd, CommonOptions* options, int32_t min_trials) {
  cmd->add_option("--seed", options->seed, "Master seed (runs are fully deterministic)")
      ->required();
  cmd->add_option("--trials", options->trials, "Independent trials per experiment")
      ->check(CLI::Range(min_trials, std::numeric_limits<int32_t>::max()))
      ->capture_default_str();
  cmd->add_option("--aggregators", options->aggregators, "Simulated aggregator count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", options->out, "Output CSV path, - for stdout")
      ->capture_default_str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!std::cout) throw IoError("failed to write to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file: " + path);
  file << content;
  if (!file) throw IoError("failed to write output file: " + path);
}

std::string mechanism_column(const sampriv::MechanismSpec& mechanism) {
  struct Visitor {
    std::string operator()(const sampriv::RRParams&) const { return "rr"; }
    std::string operator()(const sampriv::ToyParams&) const { return "toy"; }
    std::string operator()(const sampriv::SPBinarySpec&) const { return "sp-binary"; }
    std::string operator()(const sampriv::SPMultiSpec&) const { return "sp-multi"; }
  };
  return std::visit(Visitor{}, mechanism);
}

void stats_fields(sampriv::CsvWriter& csv, const sampriv::TrialStats& stats) {
  csv.field(stats.ground_truth)
      .field(stats.mean_estimate)
      .field(stats.stddev)
      .field(stats.mean_abs_error)
      .field(stats.error_bound_95)
      .field(1.96 * stats.stddev);
}

sampriv::MechanismSpec build_mechanism(const SimulateOptions& options) {
  const auto num_values = static_cast<int32_t>(options.yes.size());
  if (options.mechanism == "rr") return sampriv::RRParams(options.pi1, options.pi2);
  if (options.mechanism == "toy") {
    return sampriv::ToyParams(options.pi_s, options.pi1, options.pi2);
  }
  if (options.mechanism == "sp-binary") {
    return sampriv::SPBinarySpec(options.pi0, options.pi_s);
  }
  if (!options.pis.empty()) return sampriv::SPMultiSpec(options.pis, options.pi_s);
  return sampriv::SPMultiSpec::Uniform(num_values, options.pi_s);
}

int run_simulate(const SimulateOptions& options) {
  if (options.yes.empty()) throw std::invalid_argument("--yes must list at least one count");
  if (options.mechanism != "sp-multi" && options.yes.size() != 1) {
    throw std::invalid_argument("--yes must be a single count for binary mechanisms");
  }
  const sampriv::MechanismSpec mechanism = build_mechanism(options);
  const sampriv::PopulationSpec population{options.yes, options.no};
  const sampriv::AggregatorModel aggregators{options.common.aggregators, 0};
  const sampriv::ExperimentResult result = sampriv::run_experiment(
      population, mechanism, options.common.trials, options.common.seed, aggregators);

  std::ostringstream buffer;
  sampriv::CsvWriter csv(buffer, "simulate");
  static constexpr std::string_view kColumns[] = {
      "mechanism",      "output",          "ground_truth",   "mean_estimate",
      "stddev",         "mean_abs_error",  "error_bound_95", "normal_bound_95"};
  csv.header(kColumns);

  const std::string name = mechanism_column(mechanism);
  csv.field(name).field("total");
  stats_fields(csv, result.total);
  csv.end_row();
  for (size_t v = 0; v < result.per_output.size(); ++v) {
    csv.field(name).field(std::to_string(v + 1));
    stats_fields(csv, result.per_output[v]);
    csv.end_row();
  }
  write_output(options.common.out, buffer.str());
  return kExitOk;
}

std::vector<double> make_grid(const EpsilonOptions& options, double stop) {
  if (!options.grid.empty()) return options.grid;
  if (!(options.grid_step > 0.0)) throw std::invalid_argument("--grid-step must be positive");
  std::vector<double> grid;
  for (double x = options.grid_start; x <= stop + 1e-12; x += options.grid_step) {
    grid.push_back(std::round(x * 1e6) / 1e6);  // keep grid points exact in output
  }
  return grid;
}

int run_epsilon(const EpsilonOptions& options) {
  std::ostringstream buffer;
  sampriv::CsvWriter csv(buffer, "epsilon");
  static constexpr std::string_view kColumns[] = {"mechanism", "fixed_param", "swept_param",
                                                  "epsilon", "bounded"};
  csv.header(kColumns);

  const auto emit = [&csv](const std::vector<sampriv::SweepRow>& rows, double fixed) {
    for (const sampriv::SweepRow& row : rows) {
      csv.field(row.family == sampriv::MechanismFamily::kRandomizedResponse ? "rr" : "sp")
          .field(fixed)
          .field(row.swept_param)
          .field(row.epsilon)
          .field(row.bounded ? "true" : "false");
      csv.end_row();
    }
  };

  if (options.family == "rr" || options.family == "both") {
    const std::vector<double> grid = make_grid(options, 0.95);
    emit(sampriv::epsilon_sweep(sampriv::MechanismFamily::kRandomizedResponse, grid,
                                options.pi1),
         options.pi1);
  }
  if (options.family == "sp" || options.family == "both") {
    const std::vector<double> grid = make_grid(options, 1.0 - options.pi_s);
    emit(sampriv::epsilon_sweep(sampriv::MechanismFamily::kSamplingPrivacy, grid,
                                options.pi_s),
         options.pi_s);
  }
  write_output(options.out, buffer.str());
  return kExitOk;
}

struct DatasetRun {
  std::string population_label;
  sampriv::PopulationSpec population;
};

double worst_bound(const std::vector<sampriv::TrialStats>& stats) {
  double worst = 0.0;
  for (const sampriv::TrialStats& s : stats) worst = std::max(worst, s.error_bound_95);
  return worst;
}

int run_dataset(const DatasetOptions& options) {
  std::ifstream file(options.file, std::ios::binary);
  if (!file) throw IoError("cannot open dataset file: " + options.file);

  sampriv::OwnerValues values;
  sampriv::ValueCoding coding;
  int32_t num_values = 0;
  std::string attribute_label;
  if (options.kind == "breast-cancer") {
    const sampriv::PatientAttribute attribute = options.attribute == "tumor-size"
                                                    ? sampriv::PatientAttribute::kTumorSize
                                                    : sampriv::PatientAttribute::kAge;
    values = sampriv::parse_breast_cancer(file, attribute);
    num_values = sampriv::attribute_group_count(attribute);
    for (int64_t g = 1; g <= num_values; ++g) coding.raw_values.push_back(g);
    attribute_label = options.attribute;
  } else {
    sampriv::CheckinSelection selection;
    if (!options.grid_bounds.empty()) {
      if (options.grid_bounds.size() != 5) {
        throw std::invalid_argument("--grid expects lat_min,lat_max,lng_min,lng_max,cell");
      }
      selection.grid.emplace(options.grid_bounds[0], options.grid_bounds[1],
                             options.grid_bounds[2], options.grid_bounds[3],
                             options.grid_bounds[4]);
    }
    if (!options.window.empty()) {
      if (options.window.size() != 2) {
        throw std::invalid_argument("--window expects begin,end Unix seconds");
      }
      selection.window.emplace(options.window[0], options.window[1]);
    }
    values = sampriv::parse_checkins(file, selection);
    coding = sampriv::code_values(values.histogram, options.top);
    num_values = static_cast<int32_t>(coding.raw_values.size());
    attribute_label = "location";
  }

  const sampriv::PopulationSpec natural =
      sampriv::population_from(values, coding, num_values);
  std::vector<DatasetRun> runs;
  runs.push_back({std::to_string(natural.total()), natural});
  const int64_t pad_target =
      options.pad >= 0 ? options.pad : (options.kind == "breast-cancer" ? 10000 : 0);
  if (pad_target > 0) {
    runs.push_back(
        {std::to_string(pad_target), sampriv::pad_population(natural, pad_target)});
  }

  const sampriv::AggregatorModel aggregators{options.common.aggregators, 0};
  const sampriv::RRParams rr_params(options.pi1, options.pi2);

  std::ostringstream buffer;
  sampriv::CsvWriter csv(buffer, "dataset");
  static constexpr std::string_view kColumns[] = {
      "mechanism",      "dataset",        "attribute",       "population",
      "output",         "ground_truth",   "mean_estimate",   "stddev",
      "mean_abs_error", "error_bound_95", "normal_bound_95", "worst_case_ratio"};
  csv.header(kColumns);

  uint64_t run_index = 0;
  for (const DatasetRun& run : runs) {
    const sampriv::SPMultiSpec sp_spec =
        sampriv::SPMultiSpec::Uniform(num_values, options.pi_s);
    const sampriv::ExperimentResult sp_result = sampriv::run_experiment(
        run.population, sp_spec, options.common.trials,
        sampriv::derive_seed(options.common.seed, run_index), aggregators);
    const std::vector<sampriv::TrialStats> rr_stats = sampriv::run_rr_per_value(
        run.population, rr_params, options.common.trials,
        sampriv::derive_seed(options.common.seed, run_index + 1000), aggregators);
    run_index += 2000;

    const auto emit_rows = [&](const std::string& mechanism,
                               const std::vector<sampriv::TrialStats>& stats) {
      for (size_t v = 0; v < stats.size(); ++v) {
        csv.field(mechanism)
            .field(options.kind)
            .field(attribute_label)
            .field(run.population_label)
            .field(coding.raw_values[v]);
        stats_fields(csv, stats[v]);
        csv.field("");
        csv.end_row();
      }
    };
    emit_rows("sp", sp_result.per_output);
    emit_rows("rr", rr_stats);

    const double ratio = worst_bound(rr_stats) / worst_bound(sp_result.per_output);
    csv.field("comparison")
        .field(options.kind)
        .field(attribute_label)
        .field(run.population_label)
        .field("worst-case")
        .field("")
        .field("")
        .field("")
        .field("")
        .field("")
        .field("")
        .field(ratio);
    csv.end_row();
  }
  write_output(options.common.out, buffer.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based differentially private counting mechanisms"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a config file (flags take precedence)");

  SimulateOptions simulate_options;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run a privatization experiment on a synthetic population");
  add_common_options(simulate, &simulate_options.common, /*min_trials=*/2);
  simulate
      ->add_option("--mechanism", simulate_options.mechanism,
                   "One of rr, toy, sp-binary, sp-multi")
      ->required()
      ->check(CLI::IsMember({"rr", "toy", "sp-binary", "sp-multi"}));
  simulate->add_option("--pi1", simulate_options.pi1, "Truthful-answer coin (rr, toy)")
      ->capture_default_str();
  simulate->add_option("--pi2", simulate_options.pi2, "Forced-yes coin (rr, toy)")
      ->capture_default_str();
  simulate->add_option("--pi0", simulate_options.pi0, "Output-0 face mass (sp-binary)")
      ->capture_default_str();
  simulate->add_option("--pi-s", simulate_options.pi_s, "Sampling probability")
      ->capture_default_str();
  simulate->add_option("--pis", simulate_options.pis,
                       "Face masses pi_0..pi_V (sp-multi; default uniform)")
      ->delimiter(',');
  simulate
      ->add_option("--yes", simulate_options.yes,
                   "Truthful counts per monitored value (one entry per value)")
      ->required()
      ->delimiter(',');
  simulate->add_option("--no", simulate_options.no, "Owners without the attribute")
      ->capture_default_str();

  EpsilonOptions epsilon_options;
  CLI::App* epsilon =
      app.add_subcommand("epsilon", "Tabulate analytic privacy leakage across a grid");
  epsilon->add_option("--family", epsilon_options.family, "rr, sp, or both")
      ->check(CLI::IsMember({"rr", "sp", "both"}))
      ->capture_default_str();
  epsilon->add_option("--pi1", epsilon_options.pi1, "Fixed truthful-answer coin (rr)")
      ->capture_default_str();
  epsilon->add_option("--pi-s", epsilon_options.pi_s, "Fixed sampling probability (sp)")
      ->capture_default_str();
  epsilon->add_option("--grid-start", epsilon_options.grid_start, "First swept value")
      ->capture_default_str();
  epsilon->add_option("--grid-step", epsilon_options.grid_step, "Swept-value step")
      ->capture_default_str();
  epsilon->add_option("--grid", epsilon_options.grid, "Explicit swept values")
      ->delimiter(',');
  epsilon->add_option("--out", epsilon_options.out, "Output CSV path, - for stdout")
      ->capture_default_str();

  DatasetOptions dataset_options;
  CLI::App* dataset =
      app.add_subcommand("dataset", "Compare mechanisms on a parsed dataset");
  add_common_options(dataset, &dataset_options.common, /*min_trials=*/2);
  dataset_options.common.trials = 100;
  dataset->add_option("--kind", dataset_options.kind, "checkins or breast-cancer")
      ->required()
      ->check(CLI::IsMember({"checkins", "breast-cancer"}));
  dataset->add_option("--file", dataset_options.file, "Dataset path")->required();
  dataset
      ->add_option("--attribute", dataset_options.attribute,
                   "Patient attribute: age or tumor-size")
      ->check(CLI::IsMember({"age", "tumor-size"}))
      ->capture_default_str();
  dataset
      ->add_option("--grid", dataset_options.grid_bounds,
                   "Discretize coordinates: lat_min,lat_max,lng_min,lng_max,cell")
      ->delimiter(',');
  dataset
      ->add_option("--window", dataset_options.window,
                   "Check-in window begin,end in Unix seconds")
      ->delimiter(',');
  dataset->add_option("--pad", dataset_options.pad,
                      "Pad the population to this total (breast-cancer default 10000)");
  dataset->add_option("--top", dataset_options.top,
                      "Monitor only the K most frequent locations (checkins)");
  dataset->add_option("--pi1", dataset_options.pi1, "RR truthful-answer coin")
      ->capture_default_str();
  dataset->add_option("--pi2", dataset_options.pi2, "RR forced-yes coin")
      ->capture_default_str();
  dataset->add_option("--pi-s", dataset_options.pi_s, "Sampling probability")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(simulate_options);
    if (epsilon->parsed()) return run_epsilon(epsilon_options);
    if (dataset->parsed()) return run_dataset(dataset_options);
    return kExitInvalidConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoFailure;
  } catch (const sampriv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
}
