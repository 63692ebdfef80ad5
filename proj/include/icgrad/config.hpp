#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "icgrad/landscape.hpp"

namespace icgrad {

// "quantum" landscapes are built from {qubits, layers, observable};
// "analytic" ones from {kind, coefficients} (see make_analytic_landscape).
struct LandscapeConfig {
  std::string type = "quantum";
  int qubits = 4;
  int layers = 4;
  std::string observable = "global";
  std::string kind = "cosine";
  std::vector<double> coefficients;
};

struct WalkSettings {
  double step_size = 0.1;
  int num_steps = 0;  // 0 = automatic: sample_multiplier * m - 2
  std::string mode = "isotropic";  // "isotropic" | "walk-over-sample"
  int sample_multiplier = 50;
  std::vector<double> start;  // empty = uniform random start
};

struct IcSettings {
  double eta = 0.05;
  int grid_points = 200;
  std::vector<double> epsilon_grid;  // empty = default log grid
};

struct ScanSettings {
  std::vector<int> qubits = {2, 4, 6, 8, 10, 12, 14};
  std::vector<int> layers = {4, 8, 12, 16};
  std::vector<std::string> observables = {"local", "global"};
};

struct ExperimentConfig {
  std::uint64_t seed = 1234;
  int repetitions = 5;
  int jobs = 1;
  std::string output_dir = "out";
  bool dump_theta = false;
  LandscapeConfig landscape;
  WalkSettings walk;
  IcSettings ic;
  ScanSettings scan;
};

// Throws ArgumentError naming the offending field path.
void validate_config(const ExperimentConfig& config);

// JSON with every field present (the print-config output).
std::string config_to_json_text(const ExperimentConfig& config);

// Accepts a partial document; absent fields keep their defaults. Unknown
// keys and type mismatches are ArgumentErrors naming the field path;
// malformed JSON is a ParseError.
ExperimentConfig config_from_json_text(const std::string& text,
                                       const std::string& source_name);
ExperimentConfig load_config(const std::filesystem::path& path);

std::unique_ptr<CostFunction> make_landscape(const LandscapeConfig& config);

}  // namespace icgrad
