#include "icgrad/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "icgrad/bounds.hpp"
#include "icgrad/errors.hpp"
#include "icgrad/landscape.hpp"
#include "icgrad/rng.hpp"
#include "icgrad/special_functions.hpp"
#include "icgrad/stats.hpp"
#include "icgrad/walk.hpp"

namespace icgrad {

namespace {

double adaptive_simpson_step(const std::function<double(double)>& f, double a,
                             double b, double fa, double fm, double fb, double whole,
                             double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// integral_0^x t^{a-1}(1-t)^{b-1} dt with u = t^a, which maps the
// singular endpoint to a smooth one:
//   = (1/a) integral_0^{x^a} (1 - u^{1/a})^{b-1} du.
double lower_incomplete_beta_quad(double x, double a, double b) {
  const double upper = std::pow(x, a);
  const auto f = [a, b](double u) {
    const double t = std::pow(u, 1.0 / a);
    return std::pow(1.0 - t, b - 1.0);
  };
  return adaptive_simpson(f, 0.0, upper, 1e-14 * std::max(upper, 1e-3)) / a;
}

}  // namespace

double beta_cdf_quadrature(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ArgumentError("beta_cdf_quadrature: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Integrate whichever side keeps the untransformed endpoint away from 1.
  if (x > a / (a + b)) return 1.0 - beta_cdf_quadrature(1.0 - x, b, a);
  const double log_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return lower_incomplete_beta_quad(x, a, b) * std::exp(-log_norm);
}

std::vector<CheckResult> projection_law_checks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  for (const int m : {3, 10, 50}) {
    Rng g_rng(derive_seed(seed, {11, static_cast<std::uint64_t>(m)}));
    std::vector<double> g(m);
    double g_norm_sq = 0.0;
    for (double& v : g) {
      v = g_rng.normal();
      g_norm_sq += v * v;
    }
    const LinearLandscape landscape(g);

    WalkConfig wc;
    wc.step_size = 0.1;
    wc.num_steps = 100000;
    wc.seed = derive_seed(seed, {12, static_cast<std::uint64_t>(m)});
    const WalkRecord walk = random_walk(landscape, wc);

    std::vector<double> samples;
    samples.reserve(walk.deltas.size());
    for (double d : walk.deltas) samples.push_back(d * d / g_norm_sq);
    const double a = 0.5, b = 0.5 * (m - 1);
    const double ks = ks_distance(std::move(samples), [&](double x) {
      return reg_incomplete_beta(std::clamp(x, 0.0, 1.0), a, b);
    });

    CheckResult r;
    r.name = "projection_ks_m" + std::to_string(m);
    r.statistic = ks;
    r.threshold = 0.01;
    r.passed = ks < r.threshold;
    r.detail = "KS distance, S=1e5";
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<CheckResult> special_function_checks() {
  std::vector<CheckResult> results;

  {
    // Grid includes a = 1/2 with b = (m-1)/2 for m up to 500.
    double worst = 0.0;
    int count = 0;
    for (const double a : {0.5, 1.0, 2.5})
      for (const double b : {0.5, 1.0, 4.5, 24.5, 99.5, 249.5})
        for (const double x :
             {1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
          worst = std::max(worst, std::fabs(reg_incomplete_beta(x, a, b) -
                                            beta_cdf_quadrature(x, a, b)));
          ++count;
        }
    CheckResult r;
    r.name = "beta_vs_quadrature";
    r.statistic = worst;
    r.threshold = 1e-10;
    r.passed = worst < r.threshold;
    r.detail = "max |cf - quadrature| over " + std::to_string(count) + " points";
    results.push_back(std::move(r));
  }

  {
    // I(x; 1/2, 1/2) = (2/pi) asin(sqrt x) and I(x; 1/2, 1) = sqrt x.
    double worst = 0.0;
    for (double x = 0.02; x < 1.0; x += 0.02) {
      worst = std::max(worst, std::fabs(reg_incomplete_beta(x, 0.5, 0.5) -
                                        2.0 / std::numbers::pi *
                                            std::asin(std::sqrt(x))));
      worst = std::max(worst,
                       std::fabs(reg_incomplete_beta(x, 0.5, 1.0) - std::sqrt(x)));
    }
    CheckResult r;
    r.name = "beta_closed_forms";
    r.statistic = worst;
    r.threshold = 1e-13;
    r.passed = worst < r.threshold;
    results.push_back(std::move(r));
  }

  {
    double worst = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.05)
      worst = std::max(worst, std::fabs(icgrad::erf(x) - std::erf(x)));
    CheckResult r;
    r.name = "erf_vs_std";
    r.statistic = worst;
    r.threshold = 1e-13;
    r.passed = worst < r.threshold;
    results.push_back(std::move(r));
  }

  {
    double worst = 0.0;
    for (const double x : {0.1, 0.5, 1.0, 1.5, 2.5, 7.5, 24.5, 99.5, 249.5, 1000.0})
      worst = std::max(worst, std::fabs(ln_gamma(x) - std::lgamma(x)) /
                                  std::max(1.0, std::fabs(std::lgamma(x))));
    CheckResult r;
    r.name = "ln_gamma_vs_std";
    r.statistic = worst;
    r.threshold = 1e-12;
    r.passed = worst < r.threshold;
    results.push_back(std::move(r));
  }

  {
    // p-space round trip over the bulk grid. (In t-space the tails are not
    // invertible at double resolution for large m: Phi_m moves by only one
    // ulp across t stretches of ~1e-5 near |t| -> 1.)
    double worst = 0.0;
    for (const int m : {2, 3, 10, 100})
      for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        worst = std::max(worst, std::fabs(phi_m(phi_m_inverse(p, m), m) - p));
      }
    // t-space round trip where the density keeps the inverse conditioned.
    for (const int m : {2, 3, 10})
      for (double t = -0.95; t <= 0.951; t += 0.05)
        worst = std::max(worst, std::fabs(phi_m_inverse(phi_m(t, m), m) - t));
    CheckResult r;
    r.name = "phi_round_trip";
    r.statistic = worst;
    r.threshold = 1e-9;
    r.passed = worst < r.threshold;
    r.detail = "p grid {0.01..0.99} all m; t grid |t|<=0.95 for m<=10";
    results.push_back(std::move(r));
  }

  {
    double worst = 0.0;
    for (const double h : {0.39, 0.45, 0.55, 0.7, 0.85, 0.95, 0.999, 1.0}) {
      const double q = solve_q(h);
      worst = std::max(worst, std::fabs(4.0 * ic_h(q) + 2.0 * ic_h(0.5 - 2.0 * q) - h));
    }
    const double q1 = solve_q(1.0);
    worst = std::max(worst, std::fabs(q1 - 1.0 / 6.0));
    CheckResult r;
    r.name = "solve_q_identity";
    r.statistic = worst;
    r.threshold = 1e-12;
    r.passed = worst < r.threshold;
    r.detail = "max residual incl. |solve_q(1) - 1/6|";
    results.push_back(std::move(r));
  }

  return results;
}

std::vector<CheckResult> containment_checks(std::uint64_t seed) {
  const int m = 20;
  const int runs = 50;
  const SeparableCosineLandscape landscape(std::vector<double>(m, 1.0));
  const double true_norm = std::sqrt(landscape.exact_average_sq_norm());

  int mic_hits = 0, sic_hits = 0;
  for (int run = 0; run < runs; ++run) {
    WalkConfig wc;
    wc.step_size = 0.1;
    wc.num_steps = auto_num_steps(m);
    wc.seed = derive_seed(seed, {21, static_cast<std::uint64_t>(run)});
    const WalkRecord walk = random_walk(landscape, wc);
    const ICFeatures features = extract_features(ic_curve(walk), 0.05);
    const GradientBounds b = gradient_bounds(features);
    if (b.applicable_mic && b.lower_mic <= true_norm && true_norm <= b.upper_mic)
      ++mic_hits;
    if (true_norm <= b.upper_sic) ++sic_hits;
  }

  std::vector<CheckResult> results;
  {
    CheckResult r;
    r.name = "mic_containment_rate";
    r.statistic = static_cast<double>(mic_hits) / runs;
    r.threshold = 0.90;
    r.passed = r.statistic >= r.threshold;
    r.detail = "cosine m=20, true norm sqrt(10), 50 runs";
    results.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.name = "sic_bound_rate";
    r.statistic = static_cast<double>(sic_hits) / runs;
    r.threshold = 0.95;
    r.passed = r.statistic >= r.threshold;
    r.detail = "eta=0.05";
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<CheckResult> gaussian_limit_checks() {
  const auto sup_distance = [](int m) {
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = -1.0 + 2.0 * i / 2000.0;
      sup = std::max(sup, std::fabs(phi_m(t, m) - gaussian_phi(t, m)));
    }
    return sup;
  };
  const double d10 = sup_distance(10);
  const double d100 = sup_distance(100);
  const double d1000 = sup_distance(1000);

  std::vector<CheckResult> results;
  {
    CheckResult r;
    r.name = "gaussian_limit_m1000";
    r.statistic = d1000;
    r.threshold = 0.01;
    r.passed = d1000 < r.threshold;
    results.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.name = "gaussian_limit_monotone";
    r.statistic = std::max(d100 - d10, d1000 - d100);
    r.threshold = 0.0;
    r.passed = d10 > d100 && d100 > d1000;
    r.detail = "sup distances " + std::to_string(d10) + " > " +
               std::to_string(d100) + " > " + std::to_string(d1000);
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  std::vector<CheckResult> all;
  const auto append = [&all](std::vector<CheckResult> batch) {
    for (auto& r : batch) all.push_back(std::move(r));
  };
  append(special_function_checks());
  append(gaussian_limit_checks());
  append(projection_law_checks(seed));
  append(containment_checks(seed));
  return all;
}

}  // namespace icgrad
