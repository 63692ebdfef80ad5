#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "icgrad/bounds.hpp"
#include "icgrad/config.hpp"
#include "icgrad/fitting.hpp"
#include "icgrad/ic.hpp"
#include "icgrad/io.hpp"

namespace icgrad {

// Walk length for a landscape under the given settings: explicit num_steps,
// or auto_num_steps(m, sample_multiplier) when num_steps is 0.
int resolve_num_steps(const WalkSettings& walk, int dimension);

// One repetition's walk. The seed is derived from (seed, rep) so repetitions
// are independent streams.
WalkRecord run_walk_repetition(const CostFunction& cost, const WalkSettings& walk,
                               std::uint64_t seed, int rep);

struct RepetitionAnalysis {
  int rep = 0;
  ICCurve curve;
  ICFeatures features;
  GradientBounds bounds;
};

RepetitionAnalysis analyze_deltas(std::span<const double> deltas, int dimension,
                                  int rep, const IcSettings& ic);

// JSON document with per-repetition features/bounds and cross-repetition
// median/std aggregates (MIC aggregates cover applicable repetitions only).
std::string analysis_report_json(const std::vector<RepetitionAnalysis>& reps);

struct ScanOutcome {
  std::vector<ScanRow> rows;        // cell-enumeration order
  std::vector<std::string> errors;  // one message per failed cell
};

// Walk + analysis for every (observable, qubits, layers, rep) cell of the
// scan grid, scheduled over config.jobs workers. Each cell derives its own
// seed from (master seed, observable, n, L, rep), so the output is
// independent of scheduling and of the other cells.
ScanOutcome run_scan(const ExperimentConfig& config);

// Median/std aggregation of raw rows into per-(observable, n, L) points,
// preserving first-appearance order. MIC statistics aggregate only
// applicable repetitions; cells with none keep NaN there.
std::vector<ScanPoint> aggregate_scan(const std::vector<ScanRow>& rows);

// heatmap_<observable>.csv, schema qubits,layers,median_eps_M_sqrt_m.
void write_heatmaps(const std::filesystem::path& dir,
                    const std::vector<ScanPoint>& points);

}  // namespace icgrad
