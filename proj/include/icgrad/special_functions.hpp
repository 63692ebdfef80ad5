#pragma once

namespace icgrad {

// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
double ln_gamma(double x);

// ln B(a, b) for a, b > 0.
double log_beta(double a, double b);

// Error function and complement, series for small |x| and a continued
// fraction for the tail. Absolute error below 1e-14 over the real line.
double erf(double x);
double erfc(double x);

// Standard normal CDF.
double normal_cdf(double z);

// Regularized incomplete beta I_x(a, b) for a, b > 0, x in [0, 1],
// evaluated with the modified Lentz continued fraction.
double reg_incomplete_beta(double x, double a, double b);

}  // namespace icgrad
