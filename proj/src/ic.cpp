#include "icgrad/ic.hpp"

#include <algorithm>
#include <cmath>

#include "icgrad/errors.hpp"

namespace icgrad {

namespace {

const double kLn6 = std::log(6.0);

}  // namespace

double ic_h(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("ic_h: x must be in [0, 1]");
  if (x == 0.0) return 0.0;
  return -x * std::log(x) / kLn6;
}

double ic_threshold() { return std::log(2.0) / kLn6; }

SymbolSequence symbolize(std::span<const double> deltas, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("symbolize: epsilon must be >= 0");
  SymbolSequence seq;
  seq.epsilon = epsilon;
  seq.symbols.reserve(deltas.size());
  for (double d : deltas) {
    if (d > epsilon)
      seq.symbols.push_back(Symbol::Plus);
    else if (d < -epsilon)
      seq.symbols.push_back(Symbol::Minus);
    else
      seq.symbols.push_back(Symbol::Dot);  // boundary values count as flat
  }
  return seq;
}

PairProbabilities pair_probabilities(const SymbolSequence& seq) {
  if (seq.symbols.size() < 2)
    throw ArgumentError("pair_probabilities: need at least 2 symbols");
  std::int64_t counts[3][3] = {};
  for (std::size_t i = 0; i + 1 < seq.symbols.size(); ++i)
    ++counts[static_cast<int>(seq.symbols[i])][static_cast<int>(seq.symbols[i + 1])];

  PairProbabilities p;
  p.pair_count = static_cast<std::int64_t>(seq.symbols.size()) - 1;
  const double n = static_cast<double>(p.pair_count);
  const auto at = [&](Symbol a, Symbol b) {
    return static_cast<double>(counts[static_cast<int>(a)][static_cast<int>(b)]) / n;
  };
  p.plus_minus = at(Symbol::Plus, Symbol::Minus);
  p.minus_plus = at(Symbol::Minus, Symbol::Plus);
  p.plus_dot = at(Symbol::Plus, Symbol::Dot);
  p.dot_plus = at(Symbol::Dot, Symbol::Plus);
  p.minus_dot = at(Symbol::Minus, Symbol::Dot);
  p.dot_minus = at(Symbol::Dot, Symbol::Minus);
  p.plus_plus = at(Symbol::Plus, Symbol::Plus);
  p.minus_minus = at(Symbol::Minus, Symbol::Minus);
  p.dot_dot = at(Symbol::Dot, Symbol::Dot);
  return p;
}

double information_content(const PairProbabilities& pairs) {
  double h = 0.0;
  for (double p : pairs.unequal()) h += ic_h(p);
  return h;
}

std::vector<double> default_epsilon_grid(double eps_ref, int points) {
  if (points < 2) throw ArgumentError("default_epsilon_grid: points must be >= 2");
  if (!(eps_ref > 0.0)) eps_ref = 1.0;
  const double lo = 1e-8 * eps_ref;
  const double hi = 10.0 * eps_ref;
  std::vector<double> grid;
  grid.reserve(points + 1);
  grid.push_back(0.0);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i)
    grid.push_back(std::exp(llo + (lhi - llo) * i / (points - 1)));
  grid.back() = hi;
  return grid;
}

ICCurve ic_curve(std::span<const double> deltas, int dimension,
                 std::span<const double> grid) {
  if (deltas.size() < 2)
    throw ArgumentError("ic_curve: need at least 2 cost increments");
  if (dimension < 1) throw ArgumentError("ic_curve: dimension must be >= 1");

  std::vector<double> own_grid;
  if (grid.empty()) {
    double eps_ref = 0.0;
    for (double d : deltas) eps_ref = std::max(eps_ref, std::fabs(d));
    own_grid = default_epsilon_grid(eps_ref);
    grid = own_grid;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0))
      throw ArgumentError("ic_curve: epsilon grid values must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ArgumentError("ic_curve: epsilon grid must be strictly increasing");
  }

  ICCurve curve;
  curve.dimension = dimension;
  curve.entries.reserve(grid.size());
  for (double eps : grid) {
    const double h = information_content(pair_probabilities(symbolize(deltas, eps)));
    curve.entries.push_back({eps, h});
  }
  return curve;
}

ICCurve ic_curve(const WalkRecord& walk, std::span<const double> grid) {
  return ic_curve(walk.deltas, walk.dimension(), grid);
}

ICFeatures extract_features(const ICCurve& curve, double eta) {
  if (curve.entries.empty()) throw ArgumentError("extract_features: empty curve");
  if (curve.dimension < 1)
    throw ArgumentError("extract_features: curve has no dimension");
  if (!(eta > 0.0 && eta <= 1.0 / 6.0 + 1e-12))
    throw ArgumentError("extract_features: eta must be in (0, 1/6]");

  ICFeatures f;
  f.eta = eta;
  f.m = curve.dimension;
  f.h_m = curve.entries.front().h;
  f.eps_m = curve.entries.front().epsilon;
  for (const auto& e : curve.entries) {
    if (e.h > f.h_m) {  // strict: ties keep the smallest epsilon
      f.h_m = e.h;
      f.eps_m = e.epsilon;
    }
  }
  bool found = false;
  for (const auto& e : curve.entries) {
    if (e.epsilon > 0.0 && e.h <= eta) {
      f.eps_s = e.epsilon;
      found = true;
      break;
    }
  }
  if (!found)
    throw ArgumentError("extract_features: no positive epsilon on the grid has H <= eta");
  const double root_m = std::sqrt(static_cast<double>(f.m));
  f.eps_m_sqrt_m = f.eps_m * root_m;
  f.eps_s_sqrt_m = f.eps_s * root_m;
  return f;
}

}  // namespace icgrad
