#include "icgrad/bounds.hpp"

#include <cmath>
#include <limits>

#include "icgrad/errors.hpp"
#include "icgrad/special_functions.hpp"

namespace icgrad {

double phi_m(double t, int m) {
  if (m < 2) throw ArgumentError("phi_m: m must be >= 2");
  if (std::isnan(t)) throw ArgumentError("phi_m: t is NaN");
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t == 0.0) return 0.5;
  const double i = reg_incomplete_beta(t * t, 0.5, 0.5 * (m - 1));
  return t > 0.0 ? 0.5 * (1.0 + i) : 0.5 * (1.0 - i);
}

double phi_m_inverse(double p, int m) {
  if (m < 2) throw ArgumentError("phi_m_inverse: m must be >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw ArgumentError("phi_m_inverse: p must be in (0, 1)");
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi_m(mid, m) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_q(double h_value) {
  if (!(h_value > ic_threshold()))
    throw InapplicableError("solve_q: h_value must exceed ic_threshold()");
  if (h_value > 1.0 + 1e-9)
    throw ArgumentError("solve_q: h_value must be <= 1");
  h_value = std::min(h_value, 1.0);
  // The maximum g(1/6) = 1 is attained exactly; bisection cannot pin the
  // root there because g is flat to double precision on a ~1e-9 window.
  if (h_value == 1.0) return 1.0 / 6.0;

  // g(x) = 4 h(x) + 2 h(1/2 - 2x) increases from 2 h(1/2) at x -> 0 to 1 at
  // x = 1/6, so bisection brackets the unique root.
  const auto g = [](double x) { return 4.0 * ic_h(x) + 2.0 * ic_h(0.5 - 2.0 * x); };
  double lo = 0.0, hi = 1.0 / 6.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < h_value)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

MicInterval bounds_from_mic(double eps_m, double h_m, int m) {
  if (!(eps_m >= 0.0)) throw ArgumentError("bounds_from_mic: eps_m must be >= 0");
  MicInterval out;
  out.q = solve_q(h_m);  // throws InapplicableError at or below threshold
  out.lower = -eps_m / phi_m_inverse(2.0 * out.q, m);
  out.upper = -eps_m / phi_m_inverse(0.5 * (1.0 - 2.0 * out.q), m);
  return out;
}

double bound_from_sic(double eps_s, double eta, int m) {
  if (!(eps_s > 0.0)) throw ArgumentError("bound_from_sic: eps_s must be > 0");
  if (!(eta > 0.0 && eta <= 1.0 / 6.0 + 1e-12))
    throw ArgumentError("bound_from_sic: eta must be in (0, 1/6]");
  return -eps_s / phi_m_inverse(1.5 * eta, m);
}

double gaussian_phi(double t, int m) {
  if (m < 1) throw ArgumentError("gaussian_phi: m must be >= 1");
  return normal_cdf(t * std::sqrt(static_cast<double>(m)));
}

GradientBounds gradient_bounds(const ICFeatures& features) {
  GradientBounds out;
  out.eps_m = features.eps_m;
  out.h_m = features.h_m;
  out.eps_s = features.eps_s;
  out.eta = features.eta;
  out.m = features.m;
  out.upper_sic = bound_from_sic(features.eps_s, features.eta, features.m);
  if (features.h_m > ic_threshold() && features.eps_m > 0.0) {
    const MicInterval mic = bounds_from_mic(features.eps_m, features.h_m, features.m);
    out.lower_mic = mic.lower;
    out.upper_mic = mic.upper;
    out.q = mic.q;
    out.applicable_mic = true;
  } else {
    out.lower_mic = std::numeric_limits<double>::quiet_NaN();
    out.upper_mic = std::numeric_limits<double>::quiet_NaN();
    out.q = std::numeric_limits<double>::quiet_NaN();
    out.applicable_mic = false;
  }
  return out;
}

}  // namespace icgrad
