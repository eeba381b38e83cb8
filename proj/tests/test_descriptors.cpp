#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "pqctopo/descriptors.hpp"
#include "pqctopo/topology.hpp"
#include "test_helpers.hpp"

using namespace pqctopo;

namespace {

// Literal double sum 1/2 sum_{i,j} |u_i v_j - u_j v_i|^2.
double distance_double_sum(const SubVector& u, const SubVector& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      d += std::norm(u[i] * v[j] - u[j] * v[i]);
    }
  }
  return d / 2;
}

double purity_oracle_q(const StateVector& s) {
  double sum = 0.0;
  for (std::size_t j = 0; j < s.qubits(); ++j) sum += reduced_purity(s, j);
  return 2.0 * (1.0 - sum / static_cast<double>(s.qubits()));
}

// Swap two qubit labels by permuting basis indices.
StateVector swap_qubits(const StateVector& s, std::size_t a, std::size_t b) {
  std::vector<Amplitude> out(s.dimension());
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    const std::size_t ba = (i >> a) & 1, bb = (i >> b) & 1;
    std::size_t k = i & ~((std::size_t{1} << a) | (std::size_t{1} << b));
    k |= (ba << b) | (bb << a);
    out[k] = s[i];
  }
  return StateVector::from_amplitudes(std::move(out));
}

CircuitTemplate single_qubit(std::vector<GateKind> kinds) {
  CircuitTemplate t;
  t.n = 1;
  for (auto k : kinds) t.gates.push_back({k, 0, {}, t.param_count++});
  return t;
}

SamplingConfig config(std::size_t samples, std::uint64_t seed) {
  SamplingConfig c;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("sample_fidelities") {
  SUBCASE("empty circuit gives fidelity one") {
    for (double f : sample_fidelities(build_idle(3), config(64, 1))) {
      CHECK(f == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("single Rx averages to one half") {
    const auto values = sample_fidelities(single_qubit({GateKind::Rx}),
                                          config(kDefaultSamples, 12));
    CHECK(values.size() == kDefaultSamples);
    for (double f : values) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    CHECK(std::abs(mean - 0.5) < 0.02);
  }
  SUBCASE("deterministic for a seed and independent of threads") {
    const auto t = build_ring(4, Entangler::CRx);
    auto c = config(500, 42);
    c.threads = 1;
    const auto a = sample_fidelities(t, c);
    c.threads = 3;
    const auto b = sample_fidelities(t, c);
    CHECK(a == b);
    c.seed = 43;
    CHECK(sample_fidelities(t, c) != a);
    CHECK(sample_fidelities(t, c, 1) != sample_fidelities(t, c, 0));
  }
}

TEST_CASE("histogram_fidelities") {
  const std::vector<double> one{1.0}, zero{0.0};
  CHECK(histogram_fidelities(one, 75).counts[74] == 1);
  CHECK(histogram_fidelities(zero, 75).counts[0] == 1);
  // i/B lands in bin i
  const std::vector<double> edge{10.0 / 75.0};
  CHECK(histogram_fidelities(edge, 75).counts[10] == 1);

  const auto values = sample_fidelities(build_line(3, Entangler::CRz),
                                        config(kDefaultSamples, 3));
  const auto h = histogram_fidelities(values, 75);
  CHECK(h.total == kDefaultSamples);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}) ==
        kDefaultSamples);

  const std::vector<double> bad{1.0000001};
  CHECK_THROWS_AS(histogram_fidelities(bad, 75), std::out_of_range);
  const std::vector<double> nan{std::nan("")};
  CHECK_THROWS_AS(histogram_fidelities(nan, 75), std::out_of_range);
}

TEST_CASE("haar_bin_mass") {
  for (std::size_t i = 0; i < 75; ++i) {
    CHECK(haar_bin_mass(1, i, 75) == doctest::Approx(1.0 / 75).epsilon(1e-13));
  }
  // 1 - (74/75)^3
  CHECK(haar_bin_mass(2, 0, 75) ==
        doctest::Approx(0.039469037037037037).epsilon(1e-13));
  // integral of 7 (1-F)^6 over [10/75, 11/75], by quadrature
  CHECK(haar_bin_mass(3, 10, 75) ==
        doctest::Approx(0.037770954376186850).epsilon(1e-12));
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto q = haar_bin_masses(n, 75);
    CHECK(std::accumulate(q.begin(), q.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  // the top bin underflows as a mass but not as a log-mass: 255 ln(1/75)
  CHECK(haar_bin_mass(8, 74, 75) == 0.0);
  CHECK(haar_bin_log_mass(8, 74, 75) ==
        doctest::Approx(-1100.9594689517592).epsilon(1e-13));
  CHECK_THROWS_AS(haar_bin_mass(2, 75, 75), std::out_of_range);
}

TEST_CASE("kl_divergence") {
  FidelityHistogram p{{3, 1}, 4};
  const std::vector<double> same{0.75, 0.25};
  CHECK(kl_divergence(p, same) == doctest::Approx(0.0).epsilon(1e-15));

  FidelityHistogram point{{1, 0}, 1};
  const std::vector<double> uniform{0.5, 0.5};
  CHECK(kl_divergence(point, uniform) ==
        doctest::Approx(0.69314718055994531).epsilon(1e-15));

  FidelityHistogram idle{std::vector<std::uint64_t>(75, 0), 100};
  idle.counts[74] = 100;
  CHECK(kl_divergence(idle, haar_bin_masses(4, 75)) ==
        doctest::Approx(15.0 * std::log(75.0)).epsilon(1e-12));

  const std::vector<double> zero_bin{1.0, 0.0};
  CHECK_THROWS_WITH_AS(kl_divergence(point, zero_bin),
                       "baseline must be positive", std::invalid_argument);
  const std::vector<double> unnormalized{0.5, 0.6};
  CHECK_THROWS_AS(kl_divergence(point, unnormalized), std::invalid_argument);
}

TEST_CASE("kl_divergence is nonnegative") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t bins = 2 + rng() % 20;
    FidelityHistogram p;
    p.counts.resize(bins);
    for (auto& c : p.counts) {
      c = rng() % 5;
      p.total += c;
    }
    if (p.total == 0) continue;
    std::vector<double> q(bins);
    double s = 0.0;
    for (auto& v : q) s += (v = 0.01 + static_cast<double>(rng() % 100));
    for (auto& v : q) v /= s;
    s = std::accumulate(q.begin(), q.end(), 0.0);
    q.back() += 1.0 - s;
    CHECK(kl_divergence(p, q) >= 0.0);
  }
}

TEST_CASE("expressibility") {
  SUBCASE("idle circuit puts all mass in the top bin") {
    const auto r = expressibility(build_idle(4), config(2048, 9));
    CHECK(std::abs(r.kl_nats - 15.0 * std::log(75.0)) < 1e-9);
    CHECK(r.histogram.counts[74] == 2048);
  }
  SUBCASE("a universal single-qubit family is near Haar") {
    const auto t = single_qubit({GateKind::Rx, GateKind::Rz, GateKind::Rx});
    CHECK(expressibility(t, config(kDefaultSamples, 5)).kl_nats < 0.05);
  }
  SUBCASE("repeats average distinct draws") {
    auto c = config(1000, 17);
    c.repeats = 3;
    const auto r = expressibility(build_line(3, Entangler::CRx), c);
    REQUIRE(r.repeat_kl.size() == 3);
    CHECK(r.repeat_kl[0] != r.repeat_kl[1]);
    CHECK(r.kl_nats == doctest::Approx((r.repeat_kl[0] + r.repeat_kl[1] +
                                        r.repeat_kl[2]) / 3));
    CHECK(r.histogram.total == 3000);
  }
  SUBCASE("all-to-all beats line at eight qubits") {
    const auto c = config(kDefaultSamples, 2);
    const double a2a =
        expressibility(build_all_to_all(8, Entangler::CRx), c).kl_nats;
    const double line = expressibility(build_line(8, Entangler::CRx), c).kl_nats;
    CHECK(a2a < line);
  }
  SUBCASE("bit-identical across runs") {
    const auto t = build_block_ring(6, 3, Entangler::CRz);
    const auto a = expressibility(t, config(800, 77));
    const auto b = expressibility(t, config(800, 77));
    CHECK(a.kl_nats == b.kl_nats);
    CHECK(a.histogram.counts == b.histogram.counts);
  }
}

TEST_CASE("Haar-random pairs score near zero") {
  std::mt19937_64 rng(1234);
  std::vector<double> f(kDefaultSamples);
  for (auto& v : f) {
    v = fidelity(haar_random_state(4, rng), haar_random_state(4, rng));
  }
  CHECK(kl_divergence(histogram_fidelities(f, 75), haar_bin_masses(4, 75)) <
        0.02);
}

TEST_CASE("generalized_distance equals the literal double sum") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 5;
    const auto s = testing::random_circuit_state(rng, n);
    const std::size_t j = rng() % n;
    const auto u = project_drop(s, j, 0);
    const auto v = project_drop(s, j, 1);
    CHECK(std::abs(generalized_distance(u, v) - distance_double_sum(u, v)) <
          1e-12);
  }
}

TEST_CASE("mw_q on known states") {
  CHECK(mw_q(init_zero(5)) == 0.0);
  CHECK(mw_q(testing::ghz_state(2)) == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t n = 3; n <= 6; ++n) {
    CHECK(std::abs(mw_q(testing::ghz_state(n)) - 1.0) < 1e-10);
  }
  CHECK(std::abs(mw_q(testing::w3_state()) - 8.0 / 9.0) < 1e-10);
  CHECK_THROWS_WITH_AS(mw_q(init_zero(1)), "MW undefined for single qubit",
                       std::invalid_argument);
}

TEST_CASE("mw_q agrees with the marginal purity oracle") {
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 5;
    const auto s = testing::random_circuit_state(rng, n);
    CHECK(std::abs(mw_q(s) - purity_oracle_q(s)) < 1e-10);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = generalized_distance(project_drop(s, j, 0),
                                            project_drop(s, j, 1));
      CHECK(std::abs(4 * d - 2 * (1 - reduced_purity(s, j))) < 1e-10);
    }
  }
  for (int i = 0; i < 20; ++i) {
    const auto s = haar_random_state(5, rng);
    CHECK(std::abs(mw_q(s) - purity_oracle_q(s)) < 1e-10);
  }
}

TEST_CASE("mw_q is invariant under relabeling and local rotations") {
  std::mt19937_64 rng(141);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + i % 5;
    auto s = testing::random_circuit_state(rng, n);
    const double q = mw_q(s);
    const std::size_t a = rng() % n, b = rng() % n;
    CHECK(std::abs(mw_q(swap_qubits(s, a, b)) - q) < 1e-10);
    for (int k = 0; k < 3; ++k) {
      const Gate g{static_cast<GateKind>(rng() % 3),
                   static_cast<Qubit>(rng() % n), {}, 0};
      s.apply(g, testing::random_angles(rng, 1)[0]);
    }
    CHECK(std::abs(mw_q(s) - q) < 1e-10);
  }
}

TEST_CASE("entangling_capability") {
  SUBCASE("no two-qubit gates means exactly zero") {
    CHECK(entangling_capability(build_rotations_only(4), config(300, 1)).mean_q ==
          0.0);
    CHECK(entangling_capability(build_idle(3), config(10, 1)).mean_q == 0.0);
  }
  SUBCASE("deterministic and thread independent") {
    const auto t = build_block_ring(6, 2, Entangler::CRx);
    auto c = config(400, 8);
    c.threads = 1;
    const auto a = entangling_capability(t, c);
    c.threads = 4;
    const auto b = entangling_capability(t, c);
    CHECK(a.mean_q == b.mean_q);
    CHECK(a.sample_count == 400);
    CHECK(a.mean_q > 0.0);
    CHECK(a.mean_q <= 1.0);
  }
  SUBCASE("single qubit is rejected") {
    CHECK_THROWS_AS(entangling_capability(build_idle(1), config(1, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("sampling config checks") {
  SamplingConfig c;
  c.samples = 0;
  CHECK_THROWS_AS(c.check(), std::invalid_argument);
  c.samples = 1;
  c.bins = 1;
  CHECK_THROWS_AS(c.check(), std::invalid_argument);
}
