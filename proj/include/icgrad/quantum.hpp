#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "icgrad/landscape.hpp"

namespace icgrad {

// Alternating layered ansatz: every layer applies RY(theta[l*n + q]) to each
// qubit q, then a brick of CZ gates on pairs (0,1),(2,3),... for even l and
// (1,2),(3,4),... for odd l. Parameter count m = qubits * layers.
struct AnsatzSpec {
  int qubits = 0;  // 2..16
  int layers = 0;  // >= 1

  int parameter_count() const { return qubits * layers; }
  void validate() const;
};

enum class Observable { Local, Global };

struct ObservableSpec {
  Observable kind = Observable::Global;
  int qubits = 0;
};

std::string observable_name(Observable kind);
Observable parse_observable(const std::string& name);

// Amplitudes indexed little-endian: qubit q is bit q of the index.
using StateVector = std::vector<std::complex<double>>;

// RY(angle) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]] on `target`.
void apply_ry(StateVector& amps, int qubits, int target, double angle);

// CZ: flips the sign of amplitudes where both qubits are 1. Symmetric in
// its arguments.
void apply_cz(StateVector& amps, int qubits, int a, int b);

// |psi(theta)> from |0...0>. theta.size() must equal parameter_count().
StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> theta);

// Local: 1 - (1/n) sum_i <Z_i>, in [0, 2]. Global: |<0...0|psi>|^2, in [0, 1].
double expectation(const StateVector& state, const ObservableSpec& obs);

class QuantumCost final : public CostFunction {
 public:
  QuantumCost(AnsatzSpec spec, Observable kind);
  int dimension() const override;
  double evaluate(std::span<const double> theta) const override;
  std::string id() const override;
  const AnsatzSpec& ansatz() const { return spec_; }
  Observable observable() const { return kind_; }

 private:
  AnsatzSpec spec_;
  Observable kind_;
};

std::unique_ptr<CostFunction> quantum_cost(const AnsatzSpec& spec, Observable kind);

// Exact gradient via the parameter-shift rule:
// dC/dk = (C(theta + pi/2 e_k) - C(theta - pi/2 e_k)) / 2.
std::vector<double> parameter_shift_gradient(const AnsatzSpec& spec, Observable kind,
                                             std::span<const double> theta);

}  // namespace icgrad
