#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "pqctopo/circuit.hpp"

namespace pqctopo {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;

/// Dense 2^n amplitude vector. Qubit j is bit j of the basis index.
class StateVector {
 public:
  /// |0...0> on n qubits, 1 <= n <= kMaxQubits.
  static StateVector zero(std::size_t n);

  /// Wraps raw amplitudes; size must be a power of two >= 2. No
  /// normalization is applied.
  static StateVector from_amplitudes(std::vector<Amplitude> amps);

  std::size_t qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  void apply(const Gate& gate, double angle);

 private:
  StateVector(std::size_t n, std::vector<Amplitude> amps)
      : n_(n), amps_(std::move(amps)) {}

  std::size_t n_;
  std::vector<Amplitude> amps_;
};

/// Unnormalized amplitudes over n-1 qubits left after deleting one qubit.
using SubVector = std::vector<Amplitude>;

StateVector init_zero(std::size_t n);

StateVector apply_gate(StateVector state, const Gate& gate, double angle);

/// U_theta |0...0>.
StateVector run(const CircuitTemplate& tmpl, const ParameterVector& params);

/// |<a|b>|^2 clamped to [0, 1].
double fidelity(const StateVector& a, const StateVector& b);

/// Keeps amplitudes whose bit j equals b, re-indexed over the other qubits.
SubVector project_drop(const StateVector& state, std::size_t j, int b);

/// Tr(rho_j^2) for the single-qubit marginal of qubit j, built by an explicit
/// partial trace.
double reduced_purity(const StateVector& state, std::size_t j);

/// Haar-random pure state from normalized complex Gaussians.
StateVector haar_random_state(std::size_t n, std::mt19937_64& rng);

}  // namespace pqctopo
