#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace icgrad {

struct CheckResult {
  std::string name;
  bool passed = false;
  double statistic = 0.0;  // measured value the check gates on
  double threshold = 0.0;
  std::string detail;
};

// CDF of Beta(a, b) by adaptive Simpson integration. Deliberately a second
// implementation path (substitution u = t^a to remove the endpoint
// singularity, std::lgamma normalization) so it can serve as the oracle for
// reg_incomplete_beta.
double beta_cdf_quadrature(double x, double a, double b);

// Empirical (delta/|g|)^2 of linear-landscape walks vs Beta(1/2, (m-1)/2),
// m in {3, 10, 50} at S = 1e5; KS distance < 0.01.
std::vector<CheckResult> projection_law_checks(std::uint64_t seed);

// Incomplete-beta vs quadrature grid, closed forms, erf/ln_gamma vs the
// standard library, phi_m round trips, solve_q residuals.
std::vector<CheckResult> special_function_checks();

// 50 seeded cosine-landscape runs (m = 20): MIC interval contains the true
// average norm in >= 90%, SIC bound holds in >= 95%.
std::vector<CheckResult> containment_checks(std::uint64_t seed);

// sup |phi_m - gaussian_phi| shrinks with m and is < 0.01 at m = 1000.
std::vector<CheckResult> gaussian_limit_checks();

std::vector<CheckResult> run_all_checks(std::uint64_t seed);

}  // namespace icgrad
