#pragma once

#include <span>
#include <vector>

#include "icgrad/quantum.hpp"

namespace icgrad {

struct FitResult {
  std::vector<double> coefficients;  // highest degree first
  double rss = 0.0;
  double r_squared = 0.0;
};

// Weighted least-squares polynomial fit by normal equations, degree 1 or 2.
// Needs at least degree+1 distinct x values; empty weights mean all ones.
FitResult ols_polyfit(std::span<const double> xs, std::span<const double> ys,
                      int degree, std::span<const double> weights = {});

enum class ScanStatistic { EpsMSqrtM, LowerMic, UpperMic, UpperSic };
enum class ScanAxis { Qubits, Layers };

// One scan cell aggregated across repetitions: medians plus the standard
// deviation of each statistic (the spread), used for 1/spread^2 weighting.
struct ScanPoint {
  Observable observable = Observable::Global;
  int qubits = 0;
  int layers = 0;
  int repetitions = 0;
  double eps_m_sqrt_m = 0.0, eps_m_sqrt_m_spread = 0.0;
  double lower_mic = 0.0, lower_mic_spread = 0.0;
  double upper_mic = 0.0, upper_mic_spread = 0.0;
  double upper_sic = 0.0, upper_sic_spread = 0.0;

  double statistic(ScanStatistic s) const;
  double spread(ScanStatistic s) const;
};

// Straight line through log2(statistic) vs qubit count. Points must all
// carry the global observable and cover >= 3 distinct qubit counts.
FitResult fit_global_qubit_scaling(std::span<const ScanPoint> points,
                                   ScanStatistic stat = ScanStatistic::EpsMSqrtM,
                                   bool weighted = false);

struct LocalScalingFit {
  FitResult quadratic;
  FitResult linear;
};

// Quadratic and linear fits of 1/statistic vs the chosen axis, for judging
// which model explains the growth. Points must all carry the local
// observable and cover >= 4 distinct axis values.
LocalScalingFit fit_local_scaling(std::span<const ScanPoint> points, ScanAxis axis,
                                  ScanStatistic stat = ScanStatistic::EpsMSqrtM,
                                  bool weighted = false);

}  // namespace icgrad
