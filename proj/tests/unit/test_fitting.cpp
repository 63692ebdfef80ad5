#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "icgrad/errors.hpp"
#include "icgrad/fitting.hpp"
#include "icgrad/rng.hpp"

using namespace icgrad;

namespace {

// Textbook simple-regression closed form, independent of the normal-equation
// solver under test.
std::pair<double, double> simple_regression(const std::vector<double>& xs,
                                            const std::vector<double>& ys) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(xs.size());
  my /= double(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double rss_of(const std::vector<double>& xs, const std::vector<double>& ys,
              const std::vector<double>& coeffs) {
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double pred = 0.0;
    for (const double c : coeffs) pred = pred * xs[i] + c;
    rss += (ys[i] - pred) * (ys[i] - pred);
  }
  return rss;
}

// Coordinate-descent grid search over the coefficient space with a shrinking
// step, minimizing RSS directly. Slow but solver-free.
std::vector<double> grid_search_fit(const std::vector<double>& xs,
                                    const std::vector<double>& ys, int degree) {
  std::vector<double> best(std::size_t(degree) + 1, 0.0);
  double best_rss = rss_of(xs, ys, best);
  double step = 4.0;
  while (step > 1e-9) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = 0; k < best.size(); ++k) {
        for (const double delta : {step, -step}) {
          auto trial = best;
          trial[k] += delta;
          const double rss = rss_of(xs, ys, trial);
          if (rss < best_rss - 1e-15) {
            best = trial;
            best_rss = rss;
            improved = true;
          }
        }
      }
    }
    step *= 0.5;
  }
  return best;
}

ScanPoint make_point(Observable obs, int qubits, int layers, double value) {
  ScanPoint p;
  p.observable = obs;
  p.qubits = qubits;
  p.layers = layers;
  p.repetitions = 5;
  p.eps_m_sqrt_m = value;
  p.eps_m_sqrt_m_spread = 0.1 * value;
  p.lower_mic = 0.5 * value;
  p.upper_mic = 2.0 * value;
  p.upper_sic = 3.0 * value;
  return p;
}

}  // namespace

TEST_CASE("ols_polyfit recovers exact polynomials") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  SUBCASE("quadratic") {
    std::vector<double> ys;
    for (const double x : xs) ys.push_back(2.0 * x * x + 3.0 * x + 1.0);
    const auto fit = ols_polyfit(xs, ys, 2);
    REQUIRE(fit.coefficients.size() == 3);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.coefficients[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.coefficients[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.rss == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("line") {
    std::vector<double> ys;
    for (const double x : xs) ys.push_back(-x + 4.0);
    const auto fit = ols_polyfit(xs, ys, 1);
    REQUIRE(fit.coefficients.size() == 2);
    CHECK(fit.coefficients[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.coefficients[1] == doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_CASE("ols_polyfit matches the closed-form simple regression on noisy data") {
  Rng rng(606);
  std::vector<double> xs, ys;
  for (int i = 0; i < 30; ++i) {
    xs.push_back(0.5 * i);
    ys.push_back(1.7 * xs.back() - 2.3 + 0.4 * rng.normal());
  }
  const auto fit = ols_polyfit(xs, ys, 1);
  const auto [slope, intercept] = simple_regression(xs, ys);
  CHECK(std::fabs(fit.coefficients[0] - slope) < 1e-12);
  CHECK(std::fabs(fit.coefficients[1] - intercept) < 1e-12);
  CHECK(fit.r_squared > 0.9);
  CHECK(fit.r_squared < 1.0);
}

TEST_CASE("ols_polyfit agrees with a direct RSS grid search") {
  const std::vector<double> xs{-2, -1, 0, 1, 2, 3};
  const std::vector<double> ys{4.1, 1.2, 0.3, 0.9, 3.6, 9.1};
  const auto fit = ols_polyfit(xs, ys, 2);
  const auto brute = grid_search_fit(xs, ys, 2);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::fabs(fit.coefficients[k] - brute[k]) < 1e-6);
  CHECK(rss_of(xs, ys, fit.coefficients) <= rss_of(xs, ys, brute) + 1e-12);
}

TEST_CASE("ols_polyfit is invariant under point reordering") {
  std::vector<double> xs{1, 2, 3, 4, 5, 6, 7};
  std::vector<double> ys{2.2, 3.9, 9.1, 15.8, 24.9, 37.0, 50.2};
  const auto base = ols_polyfit(xs, ys, 2);
  std::reverse(xs.begin(), xs.end());
  std::reverse(ys.begin(), ys.end());
  const auto reversed = ols_polyfit(xs, ys, 2);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(base.coefficients[k] ==
          doctest::Approx(reversed.coefficients[k]).epsilon(1e-10));
}

TEST_CASE("ols_polyfit weights") {
  const std::vector<double> xs{1, 2, 3, 4};
  std::vector<double> ys;
  for (const double x : xs) ys.push_back(5.0 * x - 2.0);
  SUBCASE("positive weights keep an exact fit exact") {
    const std::vector<double> w{1.0, 10.0, 0.5, 2.0};
    const auto fit = ols_polyfit(xs, ys, 1, w);
    CHECK(fit.coefficients[0] == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(fit.coefficients[1] == doctest::Approx(-2.0).epsilon(1e-10));
  }
  SUBCASE("weights pull the fit toward the heavy points") {
    std::vector<double> bent = ys;
    bent[3] += 10.0;
    const std::vector<double> w{1.0, 1.0, 1.0, 1000.0};
    const auto fit = ols_polyfit(xs, bent, 1, w);
    const double pred4 = fit.coefficients[0] * 4.0 + fit.coefficients[1];
    CHECK(std::fabs(pred4 - bent[3]) < 0.1);
  }
  SUBCASE("nonpositive weights are rejected") {
    CHECK_THROWS_AS((void)ols_polyfit(xs, ys, 1, std::vector<double>{1, 1, 0, 1}),
                    ArgumentError);
    CHECK_THROWS_AS((void)ols_polyfit(xs, ys, 1, std::vector<double>{1, 1, -2, 1}),
                    ArgumentError);
  }
}

TEST_CASE("ols_polyfit argument validation") {
  const std::vector<double> xs{1, 2, 3};
  const std::vector<double> ys{1, 2, 3};
  CHECK_THROWS_AS((void)ols_polyfit(xs, ys, 0), ArgumentError);
  CHECK_THROWS_AS((void)ols_polyfit(xs, ys, 3), ArgumentError);
  CHECK_THROWS_AS((void)ols_polyfit(xs, std::vector<double>{1, 2}, 1), ArgumentError);
  CHECK_THROWS_AS((void)ols_polyfit(std::vector<double>{1, 1, 1}, ys, 1), ArgumentError);
  CHECK_THROWS_AS((void)ols_polyfit(std::vector<double>{1, 2, 1}, ys, 2), ArgumentError);
  CHECK_THROWS_AS((void)ols_polyfit(xs, ys, 1, std::vector<double>{1, 1}), ArgumentError);
}

TEST_CASE("ScanPoint statistic and spread selectors") {
  const auto p = make_point(Observable::Local, 6, 4, 2.0);
  CHECK(p.statistic(ScanStatistic::EpsMSqrtM) == 2.0);
  CHECK(p.statistic(ScanStatistic::LowerMic) == 1.0);
  CHECK(p.statistic(ScanStatistic::UpperMic) == 4.0);
  CHECK(p.statistic(ScanStatistic::UpperSic) == 6.0);
  CHECK(p.spread(ScanStatistic::EpsMSqrtM) == doctest::Approx(0.2));
}

TEST_CASE("fit_global_qubit_scaling") {
  SUBCASE("exact exponential decay 2^(-n-2)") {
    std::vector<ScanPoint> pts;
    for (int n : {2, 4, 6, 8, 10})
      pts.push_back(make_point(Observable::Global, n, 8, std::pow(2.0, -n - 2)));
    const auto fit = fit_global_qubit_scaling(pts);
    REQUIRE(fit.coefficients.size() == 2);
    CHECK(std::fabs(fit.coefficients[0] - (-1.0)) < 1e-12);
    CHECK(std::fabs(fit.coefficients[1] - (-2.0)) < 1e-12);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("weighted variant works on clean data") {
    std::vector<ScanPoint> pts;
    for (int n : {2, 4, 6, 8})
      pts.push_back(make_point(Observable::Global, n, 8, std::pow(2.0, -1.5 * n)));
    const auto fit = fit_global_qubit_scaling(pts, ScanStatistic::EpsMSqrtM, true);
    CHECK(fit.coefficients[0] == doctest::Approx(-1.5).epsilon(1e-10));
  }
  SUBCASE("selectable statistic") {
    std::vector<ScanPoint> pts;
    for (int n : {2, 3, 4})
      pts.push_back(make_point(Observable::Global, n, 8, std::pow(2.0, -n)));
    const auto fit = fit_global_qubit_scaling(pts, ScanStatistic::UpperSic);
    // upper_sic = 3 * 2^-n, so the slope stays -1 and the intercept gains log2 3.
    CHECK(fit.coefficients[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(fit.coefficients[1] == doctest::Approx(std::log2(3.0)).epsilon(1e-10));
  }
  SUBCASE("argument validation") {
    std::vector<ScanPoint> pts;
    pts.push_back(make_point(Observable::Global, 2, 8, 0.5));
    pts.push_back(make_point(Observable::Global, 4, 8, 0.25));
    CHECK_THROWS_AS((void)fit_global_qubit_scaling(pts), ArgumentError);
    pts.push_back(make_point(Observable::Local, 6, 8, 0.125));
    CHECK_THROWS_AS((void)fit_global_qubit_scaling(pts), ArgumentError);
    pts.back() = make_point(Observable::Global, 6, 8, 0.0);
    CHECK_THROWS_AS((void)fit_global_qubit_scaling(pts), ArgumentError);
    CHECK_THROWS_AS((void)fit_global_qubit_scaling(std::vector<ScanPoint>{}),
                    ArgumentError);
  }
}

TEST_CASE("fit_local_scaling") {
  SUBCASE("reciprocal quadratic growth is recovered exactly") {
    std::vector<ScanPoint> pts;
    for (int n : {2, 4, 6, 8, 10}) {
      const double poly = double(n) * n + 2.0 * n + 3.0;
      pts.push_back(make_point(Observable::Local, n, 4, 1.0 / poly));
    }
    const auto fit = fit_local_scaling(pts, ScanAxis::Qubits);
    REQUIRE(fit.quadratic.coefficients.size() == 3);
    CHECK(fit.quadratic.coefficients[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.quadratic.coefficients[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.quadratic.coefficients[2] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.quadratic.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.linear.coefficients.size() == 2);
  }
  SUBCASE("layer axis selects the layer coordinate") {
    std::vector<ScanPoint> pts;
    for (int layers : {2, 4, 6, 8})
      pts.push_back(
          make_point(Observable::Local, 6, layers, 1.0 / (2.0 * layers + 1.0)));
    const auto fit = fit_local_scaling(pts, ScanAxis::Layers);
    CHECK(fit.linear.coefficients[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.linear.coefficients[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("quadratic R^2 never falls below linear R^2") {
    Rng rng(404);
    std::vector<ScanPoint> pts;
    for (int n = 2; n <= 12; n += 2) {
      const double value = 1.0 / (3.0 * n + 5.0 + rng.uniform(0.0, 2.0));
      pts.push_back(make_point(Observable::Local, n, 4, value));
    }
    const auto fit = fit_local_scaling(pts, ScanAxis::Qubits);
    CHECK(fit.quadratic.r_squared >= fit.linear.r_squared - 1e-12);
  }
  SUBCASE("argument validation") {
    std::vector<ScanPoint> pts;
    for (int n : {2, 4, 6})
      pts.push_back(make_point(Observable::Local, n, 4, 1.0 / n));
    CHECK_THROWS_AS((void)fit_local_scaling(pts, ScanAxis::Qubits), ArgumentError);
    pts.push_back(make_point(Observable::Global, 8, 4, 0.1));
    CHECK_THROWS_AS((void)fit_local_scaling(pts, ScanAxis::Qubits), ArgumentError);
    pts.back() = make_point(Observable::Local, 8, 4, 0.0);
    CHECK_THROWS_AS((void)fit_local_scaling(pts, ScanAxis::Qubits), ArgumentError);
  }
}

TEST_CASE("weighted fits require positive spreads") {
  std::vector<ScanPoint> pts;
  for (int n : {2, 4, 6, 8})
    pts.push_back(make_point(Observable::Global, n, 8, std::pow(2.0, -n)));
  pts[1].eps_m_sqrt_m_spread = 0.0;
  CHECK_THROWS_AS((void)fit_global_qubit_scaling(pts, ScanStatistic::EpsMSqrtM, true),
                  ArgumentError);
}
