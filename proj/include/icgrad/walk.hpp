#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "icgrad/landscape.hpp"

namespace icgrad {

struct WalkConfig {
  double step_size = 0.1;  // d > 0, Euclidean length of every step
  int num_steps = 0;       // S >= 2
  std::uint64_t seed = 0;
  // Start point; when absent the walk starts uniform on [0, 2*pi)^m.
  std::optional<ParameterPoint> start;
};

// One sampled trajectory. Sizes: points/costs S+1, deltas/step_norms S.
// deltas[i] = (costs[i+1] - costs[i]) / step_norms[i] holds exactly as
// stored. Coordinates are kept unreduced; periodic landscapes fold them.
struct WalkRecord {
  std::vector<ParameterPoint> points;
  std::vector<double> costs;
  std::vector<double> deltas;
  std::vector<double> step_norms;

  int num_steps() const { return static_cast<int>(deltas.size()); }
  int dimension() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

// Isotropic fixed-step random walk: theta_{i+1} = theta_i + d * delta_i with
// delta_i uniform on the unit sphere.
WalkRecord random_walk(const CostFunction& cost, const WalkConfig& config);

// Walk over a precomputed point sample along its greedy nearest-neighbor
// tour; step lengths vary.
WalkRecord walk_over_sample(const CostFunction& cost,
                            const std::vector<ParameterPoint>& sample);

// Default step count S = multiplier*m - 2: the S+1 recorded costs stay
// strictly below a budget of multiplier*m evaluations.
int auto_num_steps(int dimension, int multiplier = 50);

// Central differences, h per coordinate.
std::vector<double> finite_difference_gradient(const CostFunction& cost,
                                               std::span<const double> theta,
                                               double h = 1e-5);

}  // namespace icgrad
