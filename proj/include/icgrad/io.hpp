#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "icgrad/ic.hpp"
#include "icgrad/walk.hpp"

namespace icgrad {

// Round-trippable decimal form (%.17g) used for every CSV number.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Sidecar JSON written next to each walk CSV.
struct WalkManifest {
  int m = 0;
  double d = 0.0;
  int S = 0;
  std::uint64_t seed = 0;
  std::string cost_id;
  std::string mode = "isotropic";
};

std::filesystem::path walk_csv_name(int rep);

// Writes walk_rep%03d.csv (schema rep,step,cost,step_norm; S+1 rows, the
// last row's step_norm is 0), walk_rep%03d.json, and optionally
// walk_rep%03d_theta.csv with the raw coordinates.
void write_walk_dataset(const std::filesystem::path& dir, int rep,
                        const WalkRecord& walk, const WalkManifest& manifest,
                        bool dump_theta = false);

// A walk read back from disk: costs/step_norms/deltas only, no coordinates.
struct LoadedWalk {
  WalkManifest manifest;
  WalkRecord walk;
  int rep = 0;
};

LoadedWalk read_walk(const std::filesystem::path& csv_path);

// walk_rep*.csv files under dir, sorted by name.
std::vector<std::filesystem::path> list_walk_files(const std::filesystem::path& dir);

void write_ic_curve_csv(const std::filesystem::path& path, const ICCurve& curve);

// One scan result row; schema
// observable,qubits,layers,rep,eps_M,eps_S,H_M,lower_mic,upper_mic,upper_sic.
// Inapplicable MIC bounds are stored as nan.
struct ScanRow {
  std::string observable;
  int qubits = 0;
  int layers = 0;
  int rep = 0;
  double eps_m = 0.0;
  double eps_s = 0.0;
  double h_m = 0.0;
  double lower_mic = 0.0;
  double upper_mic = 0.0;
  double upper_sic = 0.0;
};

void write_scan_csv(const std::filesystem::path& path,
                    const std::vector<ScanRow>& rows);
std::vector<ScanRow> read_scan_csv(const std::filesystem::path& path);

}  // namespace icgrad
