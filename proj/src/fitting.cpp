#include "icgrad/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "icgrad/errors.hpp"

namespace icgrad {

namespace {

// Gaussian elimination with partial pivoting on the (degree+1)-sized normal
// system; n is at most 3 here.
std::vector<double> solve_normal(std::vector<std::vector<double>> a,
                                 std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (std::fabs(a[col][col]) < 1e-12 * (1.0 + std::fabs(a[0][0])))
      throw ArgumentError("ols_polyfit: degenerate design (collinear x values)");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace

FitResult ols_polyfit(std::span<const double> xs, std::span<const double> ys,
                      int degree, std::span<const double> weights) {
  if (degree < 1 || degree > 2)
    throw ArgumentError("ols_polyfit: degree must be 1 or 2");
  if (xs.size() != ys.size())
    throw ArgumentError("ols_polyfit: xs and ys differ in length");
  if (!weights.empty() && weights.size() != xs.size())
    throw ArgumentError("ols_polyfit: weights length mismatch");
  const std::size_t need = static_cast<std::size_t>(degree) + 1;
  if (xs.size() < need)
    throw ArgumentError("ols_polyfit: need at least degree+1 points");
  if (std::set<double>(xs.begin(), xs.end()).size() < need)
    throw ArgumentError("ols_polyfit: need at least degree+1 distinct x values");
  for (double w : weights)
    if (!(w > 0.0)) throw ArgumentError("ols_polyfit: weights must be > 0");

  const auto w_at = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  const std::size_t n = need;
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double w = w_at(i);
    double xp[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t p = 1; p <= 2 * (n - 1); ++p) xp[p] = xp[p - 1] * xs[i];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r][c] += w * xp[r + c];
      rhs[r] += w * xp[r] * ys[i];
    }
  }
  std::vector<double> ascending = solve_normal(std::move(a), std::move(rhs));

  FitResult fit;
  fit.coefficients.assign(ascending.rbegin(), ascending.rend());

  double w_sum = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    w_sum += w_at(i);
    y_mean += w_at(i) * ys[i];
  }
  y_mean /= w_sum;
  double tss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double fitted = 0.0;
    for (double c : fit.coefficients) fitted = fitted * xs[i] + c;
    const double r = ys[i] - fitted;
    fit.rss += w_at(i) * r * r;
    tss += w_at(i) * (ys[i] - y_mean) * (ys[i] - y_mean);
  }
  if (tss > 0.0)
    fit.r_squared = 1.0 - fit.rss / tss;
  else
    fit.r_squared = fit.rss < 1e-24 ? 1.0 : -std::numeric_limits<double>::infinity();
  return fit;
}

double ScanPoint::statistic(ScanStatistic s) const {
  switch (s) {
    case ScanStatistic::EpsMSqrtM: return eps_m_sqrt_m;
    case ScanStatistic::LowerMic: return lower_mic;
    case ScanStatistic::UpperMic: return upper_mic;
    case ScanStatistic::UpperSic: return upper_sic;
  }
  throw ArgumentError("unknown scan statistic");
}

double ScanPoint::spread(ScanStatistic s) const {
  switch (s) {
    case ScanStatistic::EpsMSqrtM: return eps_m_sqrt_m_spread;
    case ScanStatistic::LowerMic: return lower_mic_spread;
    case ScanStatistic::UpperMic: return upper_mic_spread;
    case ScanStatistic::UpperSic: return upper_sic_spread;
  }
  throw ArgumentError("unknown scan statistic");
}

namespace {

std::vector<double> spread_weights(std::span<const ScanPoint> points,
                                   ScanStatistic stat) {
  std::vector<double> w;
  w.reserve(points.size());
  for (const auto& p : points) {
    const double s = p.spread(stat);
    if (!(s > 0.0))
      throw ArgumentError("weighted fit: every point needs spread > 0");
    w.push_back(1.0 / (s * s));
  }
  return w;
}

}  // namespace

FitResult fit_global_qubit_scaling(std::span<const ScanPoint> points,
                                   ScanStatistic stat, bool weighted) {
  if (points.empty()) throw ArgumentError("fit_global_qubit_scaling: no points");
  std::set<int> qubit_values;
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (p.observable != Observable::Global)
      throw ArgumentError(
          "fit_global_qubit_scaling: points must carry the global observable");
    const double v = p.statistic(stat);
    if (!(v > 0.0))
      throw ArgumentError("fit_global_qubit_scaling: statistic must be > 0 for log2");
    qubit_values.insert(p.qubits);
    xs.push_back(static_cast<double>(p.qubits));
    ys.push_back(std::log2(v));
  }
  if (qubit_values.size() < 3)
    throw ArgumentError(
        "fit_global_qubit_scaling: need >= 3 distinct qubit counts on the qubit axis");
  std::vector<double> w;
  if (weighted) w = spread_weights(points, stat);
  return ols_polyfit(xs, ys, 1, w);
}

LocalScalingFit fit_local_scaling(std::span<const ScanPoint> points, ScanAxis axis,
                                  ScanStatistic stat, bool weighted) {
  if (points.empty()) throw ArgumentError("fit_local_scaling: no points");
  std::set<int> axis_values;
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    if (p.observable != Observable::Local)
      throw ArgumentError("fit_local_scaling: points must carry the local observable");
    const double v = p.statistic(stat);
    if (!(v > 0.0))
      throw ArgumentError("fit_local_scaling: statistic must be > 0 for 1/x");
    const int x = axis == ScanAxis::Qubits ? p.qubits : p.layers;
    axis_values.insert(x);
    xs.push_back(static_cast<double>(x));
    ys.push_back(1.0 / v);
  }
  if (axis_values.size() < 4) {
    throw ArgumentError(std::string("fit_local_scaling: need >= 4 distinct values on the ") +
                        (axis == ScanAxis::Qubits ? "qubit" : "layer") + " axis");
  }
  std::vector<double> w;
  if (weighted) w = spread_weights(points, stat);
  LocalScalingFit out;
  out.quadratic = ols_polyfit(xs, ys, 2, w);
  out.linear = ols_polyfit(xs, ys, 1, w);
  return out;
}

}  // namespace icgrad
