#pragma once

#include <cstdint>
#include <vector>

#include "icgrad/landscape.hpp"
#include "icgrad/rng.hpp"

namespace icgrad {

// Latin hypercube sample of `count` points on [0, 2*pi)^dimension: along
// every axis each of the `count` equal bins holds exactly one point.
std::vector<ParameterPoint> lhs_sample(int dimension, int count, std::uint64_t seed);

// Unit vector uniform on the sphere S^(dimension-1): normalized i.i.d.
// standard normals. Consumes exactly `dimension` normal draws.
std::vector<double> isotropic_direction(int dimension, Rng& rng);

// Greedy nearest-neighbor tour over the points, starting at index 0.
// Returns a permutation of {0, ..., n-1}.
std::vector<std::size_t> nearest_neighbor_tour(const std::vector<ParameterPoint>& points);

}  // namespace icgrad
