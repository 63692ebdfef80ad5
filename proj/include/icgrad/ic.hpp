#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "icgrad/walk.hpp"

namespace icgrad {

enum class Symbol : std::uint8_t { Minus = 0, Dot = 1, Plus = 2 };

struct SymbolSequence {
  std::vector<Symbol> symbols;
  double epsilon = 0.0;
};

// Probabilities of ordered consecutive symbol pairs, exact counts over
// pair_count = len(symbols) - 1 pairs. The six unequal-pair entries sum
// with the three equal-pair entries to 1.
struct PairProbabilities {
  double plus_minus = 0.0, minus_plus = 0.0;
  double plus_dot = 0.0, dot_plus = 0.0;
  double minus_dot = 0.0, dot_minus = 0.0;
  double plus_plus = 0.0, minus_minus = 0.0, dot_dot = 0.0;
  std::int64_t pair_count = 0;

  std::array<double, 6> unequal() const {
    return {plus_minus, minus_plus, plus_dot, dot_plus, minus_dot, dot_minus};
  }
};

// Entropy term h(x) = -x log_6 x, with h(0) = 0. Maximal at x = 1/e.
double ic_h(double x);

// Applicability threshold for the max-IC interval: 2 h(1/2) = log_6 2.
double ic_threshold();

// delta < -eps: Minus; |delta| <= eps: Dot; delta > eps: Plus.
SymbolSequence symbolize(std::span<const double> deltas, double epsilon);

PairProbabilities pair_probabilities(const SymbolSequence& seq);

// Information content H = sum of ic_h over the six unequal-pair
// probabilities; lands in [0, 1].
double information_content(const PairProbabilities& pairs);

struct ICCurve {
  struct Entry {
    double epsilon;
    double h;
  };
  std::vector<Entry> entries;  // epsilon strictly increasing
  int dimension = 0;           // m of the walk the curve came from
};

// {0} followed by `points` log-spaced values covering
// [1e-8 * eps_ref, 10 * eps_ref]. eps_ref <= 0 falls back to 1.
std::vector<double> default_epsilon_grid(double eps_ref, int points = 200);

// H(eps) over the grid; an empty grid means the default grid with
// eps_ref = max |delta|. Needs at least 2 deltas.
ICCurve ic_curve(std::span<const double> deltas, int dimension,
                 std::span<const double> grid = {});
ICCurve ic_curve(const WalkRecord& walk, std::span<const double> grid = {});

struct ICFeatures {
  double h_m = 0.0;    // max H over the curve
  double eps_m = 0.0;  // smallest epsilon attaining h_m
  double eps_s = 0.0;  // smallest positive epsilon with H <= eta
  double eta = 0.0;
  int m = 0;
  double eps_m_sqrt_m = 0.0;
  double eps_s_sqrt_m = 0.0;
};

// eta must lie in (0, 1/6].
ICFeatures extract_features(const ICCurve& curve, double eta = 0.05);

}  // namespace icgrad
