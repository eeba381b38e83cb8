#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pqctopo/circuit.hpp"
#include "pqctopo/statevector.hpp"

namespace pqctopo {

inline constexpr std::size_t kDefaultSamples = 20480;
inline constexpr std::size_t kDefaultBins = 75;

struct SamplingConfig {
  std::size_t samples = kDefaultSamples;
  std::size_t bins = kDefaultBins;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  std::size_t threads = 0;

  void check() const;
};

/// Equal-width bins on [0, 1]; bin i covers [i/B, (i+1)/B), the last bin is
/// closed at 1.
struct FidelityHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t bins() const { return counts.size(); }
};

struct ExprResult {
  double kl_nats = 0.0;
  /// Per-repeat KL values; kl_nats is their mean.
  std::vector<double> repeat_kl;
  /// Counts pooled over all repeats.
  FidelityHistogram histogram;
  SamplingConfig config;
};

struct EntResult {
  double mean_q = 0.0;
  std::size_t sample_count = 0;
  SamplingConfig config;
};

/// F = |<psi(theta)|psi(phi)>|^2 for `config.samples` independent pairs.
/// `repeat` selects an independent draw stream under the same seed.
std::vector<double> sample_fidelities(const CircuitTemplate& tmpl,
                                      const SamplingConfig& config,
                                      std::size_t repeat = 0);

FidelityHistogram histogram_fidelities(std::span<const double> values,
                                       std::size_t bins);

/// Haar probability that F falls in bin `bin_index` of `bins`, for n qubits.
double haar_bin_mass(std::size_t n, std::size_t bin_index, std::size_t bins);

/// Natural log of haar_bin_mass, finite even where the mass itself
/// underflows (high-fidelity bins at n >= 8).
double haar_bin_log_mass(std::size_t n, std::size_t bin_index,
                         std::size_t bins);

std::vector<double> haar_bin_masses(std::size_t n, std::size_t bins);

/// D_KL(p || q) in nats; zero-count bins contribute nothing. Every q_i must
/// be positive and q must sum to 1.
double kl_divergence(const FidelityHistogram& p, std::span<const double> q);

/// Same divergence against log-masses, used when q_i underflows.
double kl_divergence_log(const FidelityHistogram& p,
                         std::span<const double> log_q);

ExprResult expressibility(const CircuitTemplate& tmpl,
                          const SamplingConfig& config);

/// D(u, v) = 1/2 sum_{i,j} |u_i v_j - u_j v_i|^2, evaluated through the
/// Lagrange identity ||u||^2 ||v||^2 - |<u|v>|^2.
double generalized_distance(std::span<const Amplitude> u,
                            std::span<const Amplitude> v);

/// Meyer-Wallach Q; requires n >= 2.
double mw_q(const StateVector& state);

EntResult entangling_capability(const CircuitTemplate& tmpl,
                                const SamplingConfig& config);

}  // namespace pqctopo
