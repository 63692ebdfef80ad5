#include "icgrad/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "icgrad/errors.hpp"

namespace icgrad {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Lanczos g = 7, n = 9 coefficients (Godfrey).
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// erf on |x| < 2 via the nonalternating series
// erf(x) = (2/sqrt(pi)) e^{-x^2} sum_{n>=0} (2x^2)^n x / (2n+1)!!.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 0; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 3.0);
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum))
      return 2.0 / kSqrtPi * std::exp(-x2) * sum;
  }
  throw InternalError("erf: series did not converge");
}

// erfc on x >= 2 via the Laplace continued fraction
// erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x+ (1/2)/(x+ 1/(x+ (3/2)/(x+ ...)))),
// evaluated with modified Lentz.
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int n = 1; n <= 300; ++n) {
    const double a = (n == 1) ? 1.0 : 0.5 * (n - 1);
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17)
      return std::exp(-x * x) / kSqrtPi * f;
  }
  throw InternalError("erfc: continued fraction did not converge");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw ArgumentError("ln_gamma: x must be > 0");
  if (x < 0.5) {
    // Reflection keeps the Lanczos argument above 1/2.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           ln_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(acc);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ArgumentError("log_beta: a, b must be > 0");
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  double v;
  if (ax < 2.0)
    v = erf_series(ax);
  else
    v = 1.0 - erfc_cf(ax);
  return x < 0.0 ? -v : v;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x >= 2.0) return erfc_cf(x);
  if (x <= -2.0) return 2.0 - erfc_cf(-x);
  return 1.0 - erf_series(x);
}

double normal_cdf(double z) {
  return 0.5 * erfc(-z / std::numbers::sqrt2);
}

double reg_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ArgumentError("reg_incomplete_beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0))
    throw ArgumentError("reg_incomplete_beta: x must be in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // The continued fraction converges fast for x below the pivot; use the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) above it.
  if (x > (a + 1.0) / (a + b + 2.0))
    return 1.0 - reg_incomplete_beta(1.0 - x, b, a);

  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b)) / a;

  // Modified Lentz (Numerical Recipes 6.4 layout).
  const double tiny = 1e-30;
  double f = 1.0, c = 1.0, d = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const int mm = i / 2;
    double numerator;
    if (i == 0)
      numerator = 1.0;
    else if (i % 2 == 0)
      numerator = mm * (b - mm) * x / ((a + 2.0 * mm - 1.0) * (a + 2.0 * mm));
    else
      numerator = -((a + mm) * (a + b + mm) * x) /
                  ((a + 2.0 * mm) * (a + 2.0 * mm + 1.0));
    d = 1.0 + numerator * d;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = 1.0 + numerator / c;
    if (std::fabs(c) < tiny) c = tiny;
    const double cd = c * d;
    f *= cd;
    if (std::fabs(1.0 - cd) < 1e-16) return front * (f - 1.0);
  }
  throw InternalError("reg_incomplete_beta: continued fraction did not converge");
}

}  // namespace icgrad
