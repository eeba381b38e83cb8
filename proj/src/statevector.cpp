#include "pqctopo/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pqctopo {
namespace {

void check_qubit(std::size_t q, std::size_t n) {
  if (q >= n) {
    throw std::out_of_range("qubit " + std::to_string(q) +
                            " out of range for " + std::to_string(n) +
                            " qubits");
  }
}

// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to `target` on every
// amplitude pair whose index has all bits of `required` set.
void apply_2x2(std::vector<Amplitude>& amps, std::size_t target,
               std::size_t required, Amplitude m00, Amplitude m01,
               Amplitude m10, Amplitude m11) {
  const std::size_t stride = std::size_t{1} << target;
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      if ((i & required) != required) continue;
      const Amplitude a0 = amps[i];
      const Amplitude a1 = amps[i + stride];
      amps[i] = m00 * a0 + m01 * a1;
      amps[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void apply_diagonal(std::vector<Amplitude>& amps, std::size_t target,
                    std::size_t required, Amplitude d0, Amplitude d1) {
  const std::size_t bit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & required) != required) continue;
    amps[i] *= (i & bit) ? d1 : d0;
  }
}

}  // namespace

StateVector StateVector::zero(std::size_t n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in 1.." +
                                std::to_string(kMaxQubits));
  }
  std::vector<Amplitude> amps(std::size_t{1} << n);
  amps[0] = 1.0;
  return {n, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
  const std::size_t dim = amps.size();
  if (dim < 2 || !std::has_single_bit(dim) ||
      dim > (std::size_t{1} << kMaxQubits)) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  return {n, std::move(amps)};
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const Gate& gate, double angle) {
  check_qubit(gate.target, n_);
  std::size_t required = 0;
  if (is_controlled(gate.kind)) {
    if (!gate.control) throw std::invalid_argument("missing control qubit");
    check_qubit(*gate.control, n_);
    if (*gate.control == gate.target) {
      throw std::invalid_argument("self-controlled gate");
    }
    required = std::size_t{1} << *gate.control;
  }

  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const Amplitude minus_i_sin{0.0, -s};
  switch (gate.kind) {
    case GateKind::Rx:
    case GateKind::CRx:
      apply_2x2(amps_, gate.target, required, c, minus_i_sin, minus_i_sin, c);
      break;
    case GateKind::Ry:
      apply_2x2(amps_, gate.target, required, c, -s, s, c);
      break;
    case GateKind::Rz:
    case GateKind::CRz:
      apply_diagonal(amps_, gate.target, required, Amplitude{c, -s},
                     Amplitude{c, s});
      break;
  }
}

StateVector init_zero(std::size_t n) { return StateVector::zero(n); }

StateVector apply_gate(StateVector state, const Gate& gate, double angle) {
  state.apply(gate, angle);
  return state;
}

StateVector run(const CircuitTemplate& tmpl, const ParameterVector& params) {
  require_binding(tmpl, params);
  StateVector state = StateVector::zero(tmpl.n);
  for (const Gate& g : tmpl.gates) state.apply(g, params[g.param_index]);
  return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("fidelity of states with different sizes");
  }
  // conj(a_i) b_i accumulated component-wise so that swapping the arguments
  // only conjugates the sum and |<a|b>|^2 is bitwise symmetric
  double re = 0.0;
  double im = 0.0;
  const auto av = a.amplitudes();
  const auto bv = b.amplitudes();
  for (std::size_t i = 0; i < av.size(); ++i) {
    re += av[i].real() * bv[i].real() + av[i].imag() * bv[i].imag();
    im += av[i].real() * bv[i].imag() - av[i].imag() * bv[i].real();
  }
  return std::clamp(re * re + im * im, 0.0, 1.0);
}

SubVector project_drop(const StateVector& state, std::size_t j, int b) {
  check_qubit(j, state.qubits());
  if (b != 0 && b != 1) throw std::invalid_argument("b must be 0 or 1");
  const std::size_t low_mask = (std::size_t{1} << j) - 1;
  const std::size_t bit = static_cast<std::size_t>(b) << j;
  SubVector out(state.dimension() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) {
    // insert bit b at position j
    const std::size_t idx = ((k & ~low_mask) << 1) | bit | (k & low_mask);
    out[k] = state[idx];
  }
  return out;
}

double reduced_purity(const StateVector& state, std::size_t j) {
  check_qubit(j, state.qubits());
  const std::size_t bit = std::size_t{1} << j;
  // rho[b][b'] = sum over basis states i with bit j == b of
  // psi[i] * conj(psi[i with bit j set to b'])
  Amplitude rho[2][2] = {};
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const int b = (i & bit) ? 1 : 0;
    for (int bp = 0; bp < 2; ++bp) {
      const std::size_t partner = bp ? (i | bit) : (i & ~bit);
      rho[b][bp] += state[i] * std::conj(state[partner]);
    }
  }
  double purity = 0.0;
  for (auto& row : rho) {
    for (auto& e : row) purity += std::norm(e);
  }
  return purity;
}

StateVector haar_random_state(std::size_t n, std::mt19937_64& rng) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Amplitude> amps(std::size_t{1} << n);
  double norm2 = 0.0;
  for (auto& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = {re, im};
    norm2 += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace pqctopo
