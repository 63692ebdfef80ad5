#include "icgrad/walk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "icgrad/errors.hpp"
#include "icgrad/rng.hpp"
#include "icgrad/sampling.hpp"

namespace icgrad {

namespace {

double evaluate_checked(const CostFunction& cost, const ParameterPoint& theta,
                        std::size_t step) {
  try {
    return cost.evaluate(theta);
  } catch (const std::exception& e) {
    throw std::runtime_error("cost evaluation failed at step " +
                             std::to_string(step) + ": " + e.what());
  }
}

double step_norm_between(const ParameterPoint& a, const ParameterPoint& b) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double dx = b[k] - a[k];
    d2 += dx * dx;
  }
  return std::sqrt(d2);
}

WalkRecord finalize(const CostFunction& cost, std::vector<ParameterPoint> points) {
  WalkRecord rec;
  rec.points = std::move(points);
  const std::size_t n = rec.points.size();
  rec.costs.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    rec.costs[i] = evaluate_checked(cost, rec.points[i], i);
  rec.step_norms.resize(n - 1);
  rec.deltas.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    rec.step_norms[i] = step_norm_between(rec.points[i], rec.points[i + 1]);
    if (rec.step_norms[i] <= 0.0)
      throw ArgumentError("walk: zero-length step at index " + std::to_string(i));
    rec.deltas[i] = (rec.costs[i + 1] - rec.costs[i]) / rec.step_norms[i];
  }
  return rec;
}

}  // namespace

WalkRecord random_walk(const CostFunction& cost, const WalkConfig& config) {
  if (!(config.step_size > 0.0))
    throw ArgumentError("random_walk: step_size must be > 0");
  if (config.num_steps < 2)
    throw ArgumentError("random_walk: num_steps must be >= 2");
  const int m = cost.dimension();
  Rng rng(config.seed);

  ParameterPoint theta;
  if (config.start) {
    theta = *config.start;
    if (static_cast<int>(theta.size()) != m)
      throw ArgumentError("random_walk: start point has wrong dimension");
  } else {
    theta.resize(m);
    for (int k = 0; k < m; ++k)
      theta[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }

  std::vector<ParameterPoint> points;
  points.reserve(config.num_steps + 1);
  points.push_back(theta);
  for (int i = 0; i < config.num_steps; ++i) {
    const std::vector<double> dir = isotropic_direction(m, rng);
    for (int k = 0; k < m; ++k) theta[k] += config.step_size * dir[k];
    points.push_back(theta);
  }
  return finalize(cost, std::move(points));
}

WalkRecord walk_over_sample(const CostFunction& cost,
                            const std::vector<ParameterPoint>& sample) {
  if (sample.size() < 3)
    throw ArgumentError("walk_over_sample: need at least 3 points");
  for (const auto& p : sample)
    if (static_cast<int>(p.size()) != cost.dimension())
      throw ArgumentError("walk_over_sample: point dimension mismatch");
  const std::vector<std::size_t> tour = nearest_neighbor_tour(sample);
  std::vector<ParameterPoint> points;
  points.reserve(sample.size());
  for (std::size_t idx : tour) points.push_back(sample[idx]);
  return finalize(cost, std::move(points));
}

int auto_num_steps(int dimension, int multiplier) {
  if (dimension < 1) throw ArgumentError("auto_num_steps: dimension must be >= 1");
  if (multiplier < 1) throw ArgumentError("auto_num_steps: multiplier must be >= 1");
  const int s = multiplier * dimension - 2;
  return s < 2 ? 2 : s;
}

std::vector<double> finite_difference_gradient(const CostFunction& cost,
                                               std::span<const double> theta,
                                               double h) {
  if (!(h > 0.0)) throw ArgumentError("finite_difference_gradient: h must be > 0");
  const int m = cost.dimension();
  if (static_cast<int>(theta.size()) != m)
    throw ArgumentError("finite_difference_gradient: point dimension mismatch");
  ParameterPoint probe(theta.begin(), theta.end());
  std::vector<double> grad(m);
  for (int k = 0; k < m; ++k) {
    const double saved = probe[k];
    probe[k] = saved + h;
    const double up = cost.evaluate(probe);
    probe[k] = saved - h;
    const double down = cost.evaluate(probe);
    probe[k] = saved;
    grad[k] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace icgrad
