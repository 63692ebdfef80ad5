#include "icgrad/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "icgrad/errors.hpp"

namespace icgrad {

std::vector<ParameterPoint> lhs_sample(int dimension, int count, std::uint64_t seed) {
  if (dimension < 1) throw ArgumentError("lhs_sample: dimension must be >= 1");
  if (count < 1) throw ArgumentError("lhs_sample: count must be >= 1");
  const double width = 2.0 * std::numbers::pi / count;
  Rng rng(seed);
  std::vector<ParameterPoint> points(count, ParameterPoint(dimension));
  std::vector<std::uint32_t> perm(count);
  for (int axis = 0; axis < dimension; ++axis) {
    std::iota(perm.begin(), perm.end(), 0u);
    // Fisher-Yates: bin j of this axis goes to point perm[j].
    for (int j = count - 1; j > 0; --j) {
      const auto k = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(j) + 1));
      std::swap(perm[j], perm[k]);
    }
    for (int j = 0; j < count; ++j)
      points[perm[j]][axis] = (j + rng.uniform()) * width;
  }
  return points;
}

std::vector<double> isotropic_direction(int dimension, Rng& rng) {
  if (dimension < 1) throw ArgumentError("isotropic_direction: dimension must be >= 1");
  std::vector<double> v(dimension);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (int k = 0; k < dimension; ++k) {
      v[k] = rng.normal();
      norm_sq += v[k] * v[k];
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

std::vector<std::size_t> nearest_neighbor_tour(const std::vector<ParameterPoint>& points) {
  if (points.empty()) throw ArgumentError("nearest_neighbor_tour: no points");
  const std::size_t n = points.size();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> tour;
  tour.reserve(n);
  std::size_t current = 0;
  used[0] = true;
  tour.push_back(0);
  for (std::size_t step = 1; step < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      double d2 = 0.0;
      for (std::size_t k = 0; k < points[j].size(); ++k) {
        const double dx = points[j][k] - points[current][k];
        d2 += dx * dx;
      }
      if (d2 < best) {
        best = d2;
        best_idx = j;
      }
    }
    used[best_idx] = true;
    tour.push_back(best_idx);
    current = best_idx;
  }
  return tour;
}

}  // namespace icgrad
