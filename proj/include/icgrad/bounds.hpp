#pragma once

#include "icgrad/ic.hpp"

namespace icgrad {

// CDF of the projection of an isotropic unit step onto a fixed unit vector in
// m dimensions: Phi_m(t) = (1 + sgn(t) I(t^2; 1/2, (m-1)/2)) / 2 on [-1, 1],
// clamped outside. Requires m >= 2.
double phi_m(double t, int m);

// Inverse of phi_m on p in (0, 1), by bisection.
double phi_m_inverse(double p, int m);

// Solves 4 h(q) + 2 h(1/2 - 2q) = h_value for q in (0, 1/6].
// h_value must lie in (ic_threshold(), 1]; solve_q(1) = 1/6.
double solve_q(double h_value);

struct MicInterval {
  double lower = 0.0;
  double upper = 0.0;
  double q = 0.0;
};

// Two-sided bound on the walk-averaged gradient norm from the max-IC
// features: lower = -eps_m / PhiInv(2q), upper = -eps_m / PhiInv((1-2q)/2).
// Throws InapplicableError when h_m <= ic_threshold().
MicInterval bounds_from_mic(double eps_m, double h_m, int m);

// One-sided bound from the sensitivity features:
// upper = -eps_s / PhiInv(3 eta / 2). eta in (0, 1/6], eps_s > 0.
double bound_from_sic(double eps_s, double eta, int m);

// Large-m Gaussian limit of phi_m: the standard normal CDF at t * sqrt(m).
double gaussian_phi(double t, int m);

struct GradientBounds {
  double lower_mic = 0.0;
  double upper_mic = 0.0;
  double q = 0.0;
  double upper_sic = 0.0;
  bool applicable_mic = false;
  // Inputs echoed for reporting.
  double eps_m = 0.0, h_m = 0.0, eps_s = 0.0, eta = 0.0;
  int m = 0;
};

// Bundles both bounds for one set of measured features. The MIC interval is
// filled only when h_m exceeds ic_threshold() and eps_m > 0; otherwise
// lower_mic/upper_mic/q are NaN and applicable_mic is false. The SIC bound
// is always filled.
GradientBounds gradient_bounds(const ICFeatures& features);

}  // namespace icgrad
