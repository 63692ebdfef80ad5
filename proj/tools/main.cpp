#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "icgrad/config.hpp"
#include "icgrad/errors.hpp"
#include "icgrad/experiment.hpp"
#include "icgrad/fitting.hpp"
#include "icgrad/io.hpp"
#include "icgrad/rng.hpp"
#include "icgrad/validation.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> eta;
  std::optional<double> step_size;
  std::optional<int> reps;
  std::optional<int> jobs;
};

icgrad::ExperimentConfig effective_config(const GlobalFlags& flags) {
  icgrad::ExperimentConfig config;
  if (!flags.config_path.empty()) config = icgrad::load_config(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.out) config.output_dir = *flags.out;
  if (flags.eta) config.ic.eta = *flags.eta;
  if (flags.step_size) config.walk.step_size = *flags.step_size;
  if (flags.reps) config.repetitions = *flags.reps;
  if (flags.jobs) config.jobs = *flags.jobs;
  icgrad::validate_config(config);
  return config;
}

int cmd_walk(const icgrad::ExperimentConfig& config) {
  const auto cost = icgrad::make_landscape(config.landscape);
  const fs::path out_dir = config.output_dir;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    const icgrad::WalkRecord walk =
        icgrad::run_walk_repetition(*cost, config.walk, config.seed, rep);
    icgrad::WalkManifest manifest;
    manifest.m = cost->dimension();
    manifest.d = config.walk.step_size;
    manifest.S = walk.num_steps();
    manifest.seed = icgrad::derive_seed(config.seed, {static_cast<std::uint64_t>(rep)});
    manifest.cost_id = cost->id();
    manifest.mode = config.walk.mode;
    icgrad::write_walk_dataset(out_dir, rep, walk, manifest, config.dump_theta);
    std::cerr << "wrote " << (out_dir / icgrad::walk_csv_name(rep)).string() << "\n";
  }
  return 0;
}

int cmd_analyze(const icgrad::ExperimentConfig& config, const std::string& data_dir) {
  const auto files = icgrad::list_walk_files(data_dir);
  if (files.empty())
    throw icgrad::IoError("no walk_rep*.csv files under " + data_dir);
  std::vector<icgrad::RepetitionAnalysis> reps;
  for (const auto& file : files) {
    const icgrad::LoadedWalk loaded = icgrad::read_walk(file);
    reps.push_back(icgrad::analyze_deltas(loaded.walk.deltas, loaded.manifest.m,
                                          loaded.rep, config.ic));
  }
  const fs::path out_dir = config.output_dir;
  for (const auto& r : reps) {
    char name[48];
    std::snprintf(name, sizeof(name), "ic_curve_rep%03d.csv", r.rep);
    icgrad::write_ic_curve_csv(out_dir / name, r.curve);
  }
  const std::string report = icgrad::analysis_report_json(reps);
  icgrad::write_text_file(out_dir / "analysis.json", report);
  std::cout << report;
  std::cerr << "analyzed " << reps.size() << " repetitions from " << data_dir << "\n";
  return 0;
}

int cmd_scan(const icgrad::ExperimentConfig& config) {
  const icgrad::ScanOutcome outcome = icgrad::run_scan(config);
  const fs::path out_dir = config.output_dir;
  icgrad::write_scan_csv(out_dir / "scan.csv", outcome.rows);
  icgrad::write_heatmaps(out_dir, icgrad::aggregate_scan(outcome.rows));
  std::cerr << "scan: " << outcome.rows.size() << " rows";
  if (!outcome.errors.empty()) {
    std::cerr << ", " << outcome.errors.size() << " failed cells\n";
    for (const auto& e : outcome.errors) std::cerr << "  " << e << "\n";
    return 1;
  }
  std::cerr << "\n";
  return 0;
}

json fit_entry(const std::string& observable, const std::string& axis, int fixed,
               const std::string& statistic, const std::string& model,
               const icgrad::FitResult& fit) {
  return {{"observable", observable}, {"axis", axis},
          {"fixed", fixed},           {"statistic", statistic},
          {"model", model},           {"coefficients", fit.coefficients},
          {"rss", fit.rss},           {"r_squared", fit.r_squared}};
}

const std::vector<std::pair<icgrad::ScanStatistic, std::string>> kFitStatistics = {
    {icgrad::ScanStatistic::EpsMSqrtM, "eps_M_sqrt_m"},
    {icgrad::ScanStatistic::LowerMic, "lower_mic"},
    {icgrad::ScanStatistic::UpperMic, "upper_mic"},
    {icgrad::ScanStatistic::UpperSic, "upper_sic"},
};

bool stat_usable(const std::vector<icgrad::ScanPoint>& pts, icgrad::ScanStatistic s) {
  for (const auto& p : pts)
    if (!(p.statistic(s) > 0.0) || !std::isfinite(p.statistic(s))) return false;
  return true;
}

// Pre-factor tables keep one row per fixed value and, for every coefficient,
// one column per statistic in the order lb, eps_m, ub, ubs.
constexpr int kStatColumns = 4;

int stat_column(icgrad::ScanStatistic s) {
  switch (s) {
    case icgrad::ScanStatistic::LowerMic: return 0;
    case icgrad::ScanStatistic::EpsMSqrtM: return 1;
    case icgrad::ScanStatistic::UpperMic: return 2;
    case icgrad::ScanStatistic::UpperSic: return 3;
  }
  throw icgrad::ArgumentError("unknown scan statistic");
}

using PrefactorTable = std::map<int, std::array<std::vector<double>, kStatColumns>>;

std::string render_prefactor_table(const std::string& fixed_label,
                                   const std::vector<std::string>& coeff_names,
                                   const PrefactorTable& rows) {
  static const char* kStatSuffix[kStatColumns] = {"lb", "eps_m", "ub", "ubs"};
  std::string csv = fixed_label;
  for (const auto& name : coeff_names)
    for (const char* suffix : kStatSuffix) csv += "," + name + "_" + suffix;
  csv += "\n";
  for (const auto& [fixed, cells] : rows) {
    csv += std::to_string(fixed);
    for (std::size_t k = 0; k < coeff_names.size(); ++k) {
      for (int col = 0; col < kStatColumns; ++col) {
        csv += ",";
        if (k < cells[std::size_t(col)].size())
          csv += icgrad::format_double(cells[std::size_t(col)][k]);
      }
    }
    csv += "\n";
  }
  return csv;
}

int cmd_fit(const icgrad::ExperimentConfig& config, const std::string& scan_csv,
            const std::string& model, bool weighted) {
  const auto rows = icgrad::read_scan_csv(scan_csv);
  const auto points = icgrad::aggregate_scan(rows);

  std::vector<icgrad::ScanPoint> global_pts, local_pts;
  std::set<int> global_layers, local_layers, local_qubits;
  for (const auto& p : points) {
    if (p.observable == icgrad::Observable::Global) {
      global_pts.push_back(p);
      global_layers.insert(p.layers);
    } else {
      local_pts.push_back(p);
      local_layers.insert(p.layers);
      local_qubits.insert(p.qubits);
    }
  }

  json report = json::array();
  PrefactorTable global_table, local_qubit_axis_table, local_layer_axis_table;

  int emitted = 0;
  const bool want_global = model == "auto" || model == "global-qubits";
  const bool want_local_layers = model == "auto" || model == "local-layers";
  const bool want_local_qubits = model == "auto" || model == "local-qubits";

  if (want_global && (!global_pts.empty() || model == "global-qubits")) {
    if (global_pts.empty())
      throw icgrad::ArgumentError("fit: no global-observable rows for the qubit axis");
    bool any = false;
    for (const int layers : global_layers) {
      std::vector<icgrad::ScanPoint> slice;
      std::set<int> qubit_values;
      for (const auto& p : global_pts)
        if (p.layers == layers) {
          slice.push_back(p);
          qubit_values.insert(p.qubits);
        }
      if (qubit_values.size() < 3) continue;
      for (const auto& [stat, stat_name] : kFitStatistics) {
        if (!stat_usable(slice, stat)) continue;
        const icgrad::FitResult fit =
            icgrad::fit_global_qubit_scaling(slice, stat, weighted);
        report.push_back(fit_entry("global", "qubits", layers, stat_name, "linear", fit));
        global_table[layers][std::size_t(stat_column(stat))] = fit.coefficients;
        ++emitted;
        any = true;
      }
    }
    if (!any)
      throw icgrad::ArgumentError(
          "fit: global fit needs >= 3 distinct qubit counts on the qubit axis");
  }

  const auto local_axis_fits = [&](icgrad::ScanAxis axis, const std::string& axis_name,
                                   const std::set<int>& fixed_values, bool strict) {
    bool any = false;
    for (const int fixed : fixed_values) {
      std::vector<icgrad::ScanPoint> slice;
      std::set<int> axis_values;
      for (const auto& p : local_pts) {
        const int fixed_of_p =
            axis == icgrad::ScanAxis::Layers ? p.qubits : p.layers;
        if (fixed_of_p != fixed) continue;
        slice.push_back(p);
        axis_values.insert(axis == icgrad::ScanAxis::Layers ? p.layers : p.qubits);
      }
      if (axis_values.size() < 4) continue;
      for (const auto& [stat, stat_name] : kFitStatistics) {
        if (!stat_usable(slice, stat)) continue;
        const icgrad::LocalScalingFit fit =
            icgrad::fit_local_scaling(slice, axis, stat, weighted);
        report.push_back(
            fit_entry("local", axis_name, fixed, stat_name, "quadratic", fit.quadratic));
        report.push_back(
            fit_entry("local", axis_name, fixed, stat_name, "linear", fit.linear));
        auto& cells = axis == icgrad::ScanAxis::Qubits
                          ? local_qubit_axis_table[fixed]
                          : local_layer_axis_table[fixed];
        cells[std::size_t(stat_column(stat))] = fit.quadratic.coefficients;
        ++emitted;
        any = true;
      }
    }
    if (strict && !any)
      throw icgrad::ArgumentError("fit: local fit needs >= 4 distinct values on the " +
                                  axis_name + " axis");
    return any;
  };

  bool local_any = false;
  if (want_local_layers && (!local_pts.empty() || model == "local-layers")) {
    if (local_pts.empty() && model == "local-layers")
      throw icgrad::ArgumentError("fit: no local-observable rows for the layer axis");
    local_any |= local_axis_fits(icgrad::ScanAxis::Layers, "layers", local_qubits,
                                 model == "local-layers");
  }
  if (want_local_qubits && (!local_pts.empty() || model == "local-qubits")) {
    if (local_pts.empty() && model == "local-qubits")
      throw icgrad::ArgumentError("fit: no local-observable rows for the qubit axis");
    local_any |= local_axis_fits(icgrad::ScanAxis::Qubits, "qubits", local_layers,
                                 model == "local-qubits");
  }
  if (model == "auto" && !local_pts.empty() && !local_any &&
      (want_local_layers || want_local_qubits))
    throw icgrad::ArgumentError(
        "fit: local rows present but no axis has >= 4 distinct values "
        "(layer and qubit axes)");
  if (emitted == 0) throw icgrad::ArgumentError("fit: no fittable slices in " + scan_csv);

  const fs::path out_dir = config.output_dir;
  const std::string report_text = report.dump(2) + "\n";
  icgrad::write_text_file(out_dir / "fit_report.json", report_text);
  if (!global_table.empty())
    icgrad::write_text_file(out_dir / "fit_global_qubits.csv",
                            render_prefactor_table("layers", {"alpha", "beta"}, global_table));
  if (!local_qubit_axis_table.empty())
    icgrad::write_text_file(
        out_dir / "fit_local_qubits.csv",
        render_prefactor_table("layers", {"alpha", "beta", "gamma"}, local_qubit_axis_table));
  if (!local_layer_axis_table.empty())
    icgrad::write_text_file(
        out_dir / "fit_local_layers.csv",
        render_prefactor_table("qubits", {"alpha", "beta", "gamma"}, local_layer_axis_table));
  std::cout << report_text;
  std::cerr << "fit: " << report.size() << " entries\n";
  return 0;
}

int cmd_validate(const icgrad::ExperimentConfig& config) {
  const auto checks = icgrad::run_all_checks(config.seed);
  json report = json::array();
  bool all_passed = true;
  for (const auto& c : checks) {
    std::printf("%s %-24s statistic=%.6g threshold=%.6g %s\n",
                c.passed ? "PASS" : "FAIL", c.name.c_str(), c.statistic, c.threshold,
                c.detail.c_str());
    report.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"statistic", c.statistic},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
    all_passed = all_passed && c.passed;
  }
  icgrad::write_text_file(fs::path(config.output_dir) / "validate_report.json",
                          report.dump(2) + "\n");
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-landscape information content and gradient-norm bounds"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file");
  app.add_option("--seed", flags.seed, "master seed override");
  app.add_option("--out", flags.out, "output directory override");
  app.add_option("--eta", flags.eta, "SIC threshold override, in (0, 1/6]");
  app.add_option("--step-size", flags.step_size, "walk step size override");
  app.add_option("--reps", flags.reps, "repetition count override");
  app.add_option("--jobs", flags.jobs, "worker thread count");

  auto* walk_cmd = app.add_subcommand("walk", "generate walk datasets");
  std::string data_dir;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "IC features and gradient bounds for a dataset");
  analyze_cmd->add_option("--data", data_dir, "directory of walk_rep*.csv files")
      ->required();
  auto* scan_cmd = app.add_subcommand("scan", "sweep the (qubits, layers) grid");
  std::string scan_csv, fit_model = "auto";
  bool weighted = false;
  auto* fit_cmd = app.add_subcommand("fit", "scaling fits over a scan CSV");
  fit_cmd->add_option("--scan", scan_csv, "scan CSV path")->required();
  fit_cmd->add_option("--model", fit_model, "fit selection")
      ->check(CLI::IsMember({"auto", "global-qubits", "local-qubits", "local-layers"}));
  fit_cmd->add_flag("--weighted", weighted, "weight points by 1/spread^2");
  auto* validate_cmd = app.add_subcommand("validate", "run the built-in check suites");
  auto* print_cmd = app.add_subcommand("print-config", "print the effective config");
  for (auto* sub : {walk_cmd, analyze_cmd, scan_cmd, fit_cmd, validate_cmd, print_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const icgrad::ExperimentConfig config = effective_config(flags);
    if (print_cmd->parsed()) {
      std::cout << icgrad::config_to_json_text(config);
      return 0;
    }
    if (walk_cmd->parsed()) return cmd_walk(config);
    if (analyze_cmd->parsed()) return cmd_analyze(config, data_dir);
    if (scan_cmd->parsed()) return cmd_scan(config);
    if (fit_cmd->parsed()) return cmd_fit(config, scan_csv, fit_model, weighted);
    if (validate_cmd->parsed()) return cmd_validate(config);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const icgrad::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const icgrad::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const icgrad::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
