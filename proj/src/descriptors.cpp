#include "pqctopo/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "pqctopo/sampling.hpp"

namespace pqctopo {
namespace {

std::size_t worker_count(std::size_t requested, std::size_t work) {
  std::size_t threads = requested;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, work));
}

// Runs body(begin, end) over contiguous chunks of [0, count).
void parallel_chunks(std::size_t count, std::size_t threads,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = worker_count(threads, count);
  if (workers == 1) {
    body(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

StateVector run_drawn(const CircuitTemplate& tmpl, const ParameterStream& rng,
                      std::uint64_t sample, DrawStream stream,
                      ParameterVector& scratch) {
  rng.angles(sample, stream, scratch.angles);
  return run(tmpl, scratch);
}

}  // namespace

void SamplingConfig::check() const {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (bins < 2) throw std::invalid_argument("bins must be >= 2");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
}

std::vector<double> sample_fidelities(const CircuitTemplate& tmpl,
                                      const SamplingConfig& config,
                                      std::size_t repeat) {
  config.check();
  require_valid(tmpl);
  const ParameterStream rng(config.seed, repeat);
  std::vector<double> out(config.samples);
  parallel_chunks(config.samples, config.threads,
                  [&](std::size_t begin, std::size_t end) {
                    ParameterVector params{
                        std::vector<double>(tmpl.param_count)};
                    for (std::size_t i = begin; i < end; ++i) {
                      const auto a =
                          run_drawn(tmpl, rng, i, DrawStream::Theta, params);
                      const auto b =
                          run_drawn(tmpl, rng, i, DrawStream::Phi, params);
                      out[i] = fidelity(a, b);
                    }
                  });
  return out;
}

FidelityHistogram histogram_fidelities(std::span<const double> values,
                                       std::size_t bins) {
  if (bins < 2) throw std::invalid_argument("bins must be >= 2");
  FidelityHistogram h;
  h.counts.assign(bins, 0);
  for (double f : values) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::out_of_range("fidelity " + format_double(f) +
                              " outside [0, 1]");
    }
    auto bin = static_cast<std::size_t>(f * static_cast<double>(bins));
    ++h.counts[std::min(bin, bins - 1)];
  }
  h.total = values.size();
  return h;
}

double haar_bin_log_mass(std::size_t n, std::size_t bin_index,
                         std::size_t bins) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  if (bins < 1 || bin_index >= bins) {
    throw std::out_of_range("bin index out of range");
  }
  // mass = (1-lo)^(N-1) - (1-hi)^(N-1)
  //      = (1-lo)^(N-1) * (1 - ((1-hi)/(1-lo))^(N-1))
  const double exponent = std::ldexp(1.0, static_cast<int>(n)) - 1.0;
  const double lo = static_cast<double>(bin_index) / static_cast<double>(bins);
  const double log_keep_lo = std::log1p(-lo);
  if (bin_index + 1 == bins) return exponent * log_keep_lo;
  const double hi =
      static_cast<double>(bin_index + 1) / static_cast<double>(bins);
  const double log_ratio = std::log1p(-hi) - log_keep_lo;
  return exponent * log_keep_lo + std::log(-std::expm1(exponent * log_ratio));
}

double haar_bin_mass(std::size_t n, std::size_t bin_index, std::size_t bins) {
  return std::exp(haar_bin_log_mass(n, bin_index, bins));
}

std::vector<double> haar_bin_masses(std::size_t n, std::size_t bins) {
  std::vector<double> out(bins);
  for (std::size_t i = 0; i < bins; ++i) out[i] = haar_bin_mass(n, i, bins);
  return out;
}

double kl_divergence_log(const FidelityHistogram& p,
                         std::span<const double> log_q) {
  if (p.total == 0) throw std::invalid_argument("empty histogram");
  if (log_q.size() != p.counts.size()) {
    throw std::invalid_argument("baseline has wrong bin count");
  }
  const double total = static_cast<double>(p.total);
  double kl = 0.0;
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    if (!std::isfinite(log_q[i])) {
      throw std::invalid_argument("baseline must be positive");
    }
    if (p.counts[i] == 0) continue;
    const double pi = static_cast<double>(p.counts[i]) / total;
    kl += pi * (std::log(pi) - log_q[i]);
  }
  // Gibbs' inequality; only rounding can push this below zero
  return std::max(kl, 0.0);
}

double kl_divergence(const FidelityHistogram& p, std::span<const double> q) {
  double sum = 0.0;
  std::vector<double> log_q(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0.0)) throw std::invalid_argument("baseline must be positive");
    sum += q[i];
    log_q[i] = std::log(q[i]);
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("baseline must sum to 1");
  }
  return kl_divergence_log(p, log_q);
}

ExprResult expressibility(const CircuitTemplate& tmpl,
                          const SamplingConfig& config) {
  config.check();
  std::vector<double> log_q(config.bins);
  for (std::size_t i = 0; i < config.bins; ++i) {
    log_q[i] = haar_bin_log_mass(tmpl.n, i, config.bins);
  }

  ExprResult result;
  result.config = config;
  result.histogram.counts.assign(config.bins, 0);
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const auto values = sample_fidelities(tmpl, config, r);
    const auto hist = histogram_fidelities(values, config.bins);
    result.repeat_kl.push_back(kl_divergence_log(hist, log_q));
    for (std::size_t i = 0; i < config.bins; ++i) {
      result.histogram.counts[i] += hist.counts[i];
    }
    result.histogram.total += hist.total;
  }
  double sum = 0.0;
  for (double kl : result.repeat_kl) sum += kl;
  result.kl_nats = sum / static_cast<double>(config.repeats);
  return result;
}

double generalized_distance(std::span<const Amplitude> u,
                            std::span<const Amplitude> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("distance of vectors with different sizes");
  }
  double uu = 0.0;
  double vv = 0.0;
  Amplitude uv{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    uu += std::norm(u[i]);
    vv += std::norm(v[i]);
    uv += std::conj(u[i]) * v[i];
  }
  return std::max(0.0, uu * vv - std::norm(uv));
}

double mw_q(const StateVector& state) {
  const std::size_t n = state.qubits();
  if (n < 2) throw std::invalid_argument("MW undefined for single qubit");
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto u = project_drop(state, j, 0);
    const auto v = project_drop(state, j, 1);
    sum += generalized_distance(u, v);
  }
  return std::clamp(4.0 * sum / static_cast<double>(n), 0.0, 1.0);
}

EntResult entangling_capability(const CircuitTemplate& tmpl,
                                const SamplingConfig& config) {
  config.check();
  require_valid(tmpl);
  if (tmpl.n < 2) throw std::invalid_argument("MW undefined for single qubit");

  EntResult result;
  result.config = config;
  result.sample_count = config.samples * config.repeats;
  // Without two-qubit gates every output is a product state and Q is
  // identically zero; skip the rounding noise of the sampled estimate.
  if (tmpl.two_qubit_gate_count() == 0) return result;

  std::vector<double> q(result.sample_count);
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const ParameterStream rng(config.seed, r);
    double* slot = q.data() + r * config.samples;
    parallel_chunks(config.samples, config.threads,
                    [&](std::size_t begin, std::size_t end) {
                      ParameterVector params{
                          std::vector<double>(tmpl.param_count)};
                      for (std::size_t i = begin; i < end; ++i) {
                        slot[i] = mw_q(run_drawn(tmpl, rng, i,
                                                 DrawStream::Entangle, params));
                      }
                    });
  }
  // fixed summation order keeps the mean independent of the thread count
  double sum = 0.0;
  for (double v : q) sum += v;
  result.mean_q = sum / static_cast<double>(q.size());
  return result;
}

}  // namespace pqctopo
