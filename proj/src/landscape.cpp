#include "icgrad/landscape.hpp"

#include <cmath>
#include <numbers>

#include "icgrad/errors.hpp"

namespace icgrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dimension(std::span<const double> theta, int m, const char* what) {
  if (static_cast<int>(theta.size()) != m) {
    throw ArgumentError(std::string(what) + ": expected " + std::to_string(m) +
                        " coordinates, got " + std::to_string(theta.size()));
  }
}

}  // namespace

double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

LinearLandscape::LinearLandscape(std::vector<double> gradient)
    : gradient_(std::move(gradient)) {
  if (gradient_.empty()) throw ArgumentError("linear landscape: empty gradient");
}

int LinearLandscape::dimension() const { return static_cast<int>(gradient_.size()); }

double LinearLandscape::evaluate(std::span<const double> theta) const {
  require_dimension(theta, dimension(), "linear landscape");
  double acc = 0.0;
  for (std::size_t k = 0; k < gradient_.size(); ++k) acc += gradient_[k] * theta[k];
  return acc;
}

std::string LinearLandscape::id() const {
  return "linear:m=" + std::to_string(gradient_.size());
}

std::vector<double> LinearLandscape::exact_gradient(std::span<const double> theta) const {
  require_dimension(theta, dimension(), "linear landscape");
  return gradient_;
}

double LinearLandscape::exact_average_sq_norm() const {
  double acc = 0.0;
  for (double g : gradient_) acc += g * g;
  return acc;
}

SeparableCosineLandscape::SeparableCosineLandscape(std::vector<double> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw ArgumentError("cosine landscape: empty amplitudes");
}

int SeparableCosineLandscape::dimension() const {
  return static_cast<int>(amplitudes_.size());
}

double SeparableCosineLandscape::evaluate(std::span<const double> theta) const {
  require_dimension(theta, dimension(), "cosine landscape");
  double acc = 0.0;
  for (std::size_t k = 0; k < amplitudes_.size(); ++k)
    acc += amplitudes_[k] * std::cos(theta[k]);
  return acc;
}

std::string SeparableCosineLandscape::id() const {
  return "cosine:m=" + std::to_string(amplitudes_.size());
}

std::vector<double> SeparableCosineLandscape::exact_gradient(
    std::span<const double> theta) const {
  require_dimension(theta, dimension(), "cosine landscape");
  std::vector<double> g(amplitudes_.size());
  for (std::size_t k = 0; k < amplitudes_.size(); ++k)
    g[k] = -amplitudes_[k] * std::sin(theta[k]);
  return g;
}

double SeparableCosineLandscape::exact_average_sq_norm() const {
  // E sin^2 = 1/2 per coordinate.
  double acc = 0.0;
  for (double a : amplitudes_) acc += 0.5 * a * a;
  return acc;
}

ConstantLandscape::ConstantLandscape(int dimension, double value)
    : dimension_(dimension), value_(value) {
  if (dimension_ < 1) throw ArgumentError("constant landscape: dimension must be >= 1");
}

int ConstantLandscape::dimension() const { return dimension_; }

double ConstantLandscape::evaluate(std::span<const double> theta) const {
  require_dimension(theta, dimension_, "constant landscape");
  return value_;
}

std::string ConstantLandscape::id() const {
  return "constant:m=" + std::to_string(dimension_);
}

std::vector<double> ConstantLandscape::exact_gradient(std::span<const double> theta) const {
  require_dimension(theta, dimension_, "constant landscape");
  return std::vector<double>(dimension_, 0.0);
}

double ConstantLandscape::exact_average_sq_norm() const { return 0.0; }

std::unique_ptr<AnalyticLandscape> make_analytic_landscape(
    const std::string& kind, const std::vector<double>& coefficients) {
  if (kind == "linear") return std::make_unique<LinearLandscape>(coefficients);
  if (kind == "cosine") return std::make_unique<SeparableCosineLandscape>(coefficients);
  if (kind == "constant") {
    if (coefficients.empty())
      throw ArgumentError("constant landscape: coefficients must be non-empty");
    return std::make_unique<ConstantLandscape>(static_cast<int>(coefficients.size()),
                                               coefficients.front());
  }
  throw ArgumentError("unknown analytic landscape kind: " + kind);
}

}  // namespace icgrad
