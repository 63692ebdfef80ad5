#include "icgrad/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "icgrad/errors.hpp"

namespace icgrad {

void AnsatzSpec::validate() const {
  if (qubits < 2 || qubits > 16)
    throw ArgumentError("ansatz: qubits must be in [2, 16]");
  if (layers < 1) throw ArgumentError("ansatz: layers must be >= 1");
}

std::string observable_name(Observable kind) {
  return kind == Observable::Local ? "local" : "global";
}

Observable parse_observable(const std::string& name) {
  if (name == "local") return Observable::Local;
  if (name == "global") return Observable::Global;
  throw ArgumentError("unknown observable: " + name);
}

namespace {

void require_qubit(int qubits, int q, const char* what) {
  if (q < 0 || q >= qubits)
    throw ArgumentError(std::string(what) + ": qubit index out of range");
}

void require_state_size(const StateVector& amps, int qubits, const char* what) {
  if (qubits < 1 || qubits > 30 ||
      amps.size() != (std::size_t{1} << qubits))
    throw ArgumentError(std::string(what) + ": state size does not match qubit count");
}

}  // namespace

void apply_ry(StateVector& amps, int qubits, int target, double angle) {
  require_state_size(amps, qubits, "apply_ry");
  require_qubit(qubits, target, "apply_ry");
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t bit = std::size_t{1} << target;
  for (std::size_t base = 0; base < amps.size(); base += 2 * bit) {
    for (std::size_t off = 0; off < bit; ++off) {
      const std::complex<double> a0 = amps[base + off];
      const std::complex<double> a1 = amps[base + off + bit];
      amps[base + off] = c * a0 - s * a1;
      amps[base + off + bit] = s * a0 + c * a1;
    }
  }
}

void apply_cz(StateVector& amps, int qubits, int a, int b) {
  require_state_size(amps, qubits, "apply_cz");
  require_qubit(qubits, a, "apply_cz");
  require_qubit(qubits, b, "apply_cz");
  if (a == b) throw ArgumentError("apply_cz: qubits must differ");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i & mask) == mask) amps[i] = -amps[i];
}

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> theta) {
  spec.validate();
  if (static_cast<int>(theta.size()) != spec.parameter_count())
    throw ArgumentError("prepare_state: expected " +
                        std::to_string(spec.parameter_count()) + " parameters, got " +
                        std::to_string(theta.size()));
  const int n = spec.qubits;
  StateVector amps(std::size_t{1} << n, 0.0);
  amps[0] = 1.0;
  for (int l = 0; l < spec.layers; ++l) {
    for (int q = 0; q < n; ++q) apply_ry(amps, n, q, theta[l * n + q]);
    for (int q = (l % 2 == 0) ? 0 : 1; q + 1 < n; q += 2) apply_cz(amps, n, q, q + 1);
  }
  return amps;
}

double expectation(const StateVector& state, const ObservableSpec& obs) {
  require_state_size(state, obs.qubits, "expectation");
  const int n = obs.qubits;
  if (obs.kind == Observable::Global) return std::norm(state[0]);
  // <Z_i> summed over i: each basis state j contributes |amp|^2 * (n - 2 popcount(j)).
  double sum_z = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double p = std::norm(state[j]);
    if (p != 0.0) sum_z += p * (n - 2 * std::popcount(j));
  }
  return 1.0 - sum_z / n;
}

QuantumCost::QuantumCost(AnsatzSpec spec, Observable kind) : spec_(spec), kind_(kind) {
  spec_.validate();
}

int QuantumCost::dimension() const { return spec_.parameter_count(); }

double QuantumCost::evaluate(std::span<const double> theta) const {
  // RY has period 4*pi with RY(t + 2*pi) = -RY(t); the sign is a global
  // phase, so the cost itself is 2*pi-periodic with no explicit reduction.
  const StateVector state = prepare_state(spec_, theta);
  return expectation(state, {kind_, spec_.qubits});
}

std::string QuantumCost::id() const {
  return "quantum:n=" + std::to_string(spec_.qubits) +
         ",L=" + std::to_string(spec_.layers) + ",obs=" + observable_name(kind_);
}

std::unique_ptr<CostFunction> quantum_cost(const AnsatzSpec& spec, Observable kind) {
  return std::make_unique<QuantumCost>(spec, kind);
}

std::vector<double> parameter_shift_gradient(const AnsatzSpec& spec, Observable kind,
                                             std::span<const double> theta) {
  QuantumCost cost(spec, kind);
  if (static_cast<int>(theta.size()) != cost.dimension())
    throw ArgumentError("parameter_shift_gradient: point dimension mismatch");
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double saved = shifted[k];
    shifted[k] = saved + 0.5 * std::numbers::pi;
    const double up = cost.evaluate(shifted);
    shifted[k] = saved - 0.5 * std::numbers::pi;
    const double down = cost.evaluate(shifted);
    shifted[k] = saved;
    grad[k] = 0.5 * (up - down);
  }
  return grad;
}

}  // namespace icgrad
