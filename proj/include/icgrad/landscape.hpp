#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace icgrad {

using ParameterPoint = std::vector<double>;

// Reduces an angle into [0, 2*pi).
double reduce_angle(double x);

// A cost landscape over the torus [0, 2*pi)^m. Implementations are pure and
// safe to evaluate concurrently. evaluate() accepts any real coordinates;
// periodicity is the implementation's concern.
class CostFunction {
 public:
  virtual ~CostFunction() = default;
  virtual int dimension() const = 0;
  virtual double evaluate(std::span<const double> theta) const = 0;
  // Stable identifier recorded in dataset manifests.
  virtual std::string id() const = 0;
};

// Landscape with closed-form gradient, used to validate the measurement
// pipeline end to end.
class AnalyticLandscape : public CostFunction {
 public:
  virtual std::vector<double> exact_gradient(std::span<const double> theta) const = 0;
  // E ||grad C||^2 under uniform theta on the torus.
  virtual double exact_average_sq_norm() const = 0;
};

// C(theta) = g . theta. Not periodic: evaluated on R^m without reduction so
// that cost increments along a walk equal g . step exactly.
class LinearLandscape final : public AnalyticLandscape {
 public:
  explicit LinearLandscape(std::vector<double> gradient);
  int dimension() const override;
  double evaluate(std::span<const double> theta) const override;
  std::string id() const override;
  std::vector<double> exact_gradient(std::span<const double> theta) const override;
  double exact_average_sq_norm() const override;

 private:
  std::vector<double> gradient_;
};

// C(theta) = sum_k a_k cos(theta_k).
class SeparableCosineLandscape final : public AnalyticLandscape {
 public:
  explicit SeparableCosineLandscape(std::vector<double> amplitudes);
  int dimension() const override;
  double evaluate(std::span<const double> theta) const override;
  std::string id() const override;
  std::vector<double> exact_gradient(std::span<const double> theta) const override;
  double exact_average_sq_norm() const override;

 private:
  std::vector<double> amplitudes_;
};

// C(theta) = value everywhere; the degenerate case detectors must handle.
class ConstantLandscape final : public AnalyticLandscape {
 public:
  ConstantLandscape(int dimension, double value);
  int dimension() const override;
  double evaluate(std::span<const double> theta) const override;
  std::string id() const override;
  std::vector<double> exact_gradient(std::span<const double> theta) const override;
  double exact_average_sq_norm() const override;

 private:
  int dimension_;
  double value_;
};

// kind: "linear" | "cosine" | "constant". For linear/cosine the coefficients
// are per-coordinate and fix the dimension. For constant the vector's length
// fixes the dimension and its first entry is the constant value.
std::unique_ptr<AnalyticLandscape> make_analytic_landscape(
    const std::string& kind, const std::vector<double>& coefficients);

}  // namespace icgrad
