#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "pqctopo/topology.hpp"

using namespace pqctopo;

namespace {

std::size_t entanglers(const CircuitTemplate& t) {
  return entangling_edges(t).size();
}

std::vector<Edge> sorted(std::vector<Edge> e) {
  std::sort(e.begin(), e.end());
  return e;
}

// Direct transcription of the block-ring construction loop: forward links
// while i < (n-1)/m (integer division), blocks, then the wrap column, which
// is dropped when there is only one block.
std::vector<Edge> block_ring_reference(std::size_t n, std::size_t m) {
  std::vector<Edge> e;
  auto cr = [&](std::size_t c, std::size_t t) {
    e.emplace_back(static_cast<Qubit>(c), static_cast<Qubit>(t));
  };
  for (std::size_t i = 0; i < (n - 1) / m; ++i) {
    for (std::size_t j = 0; j < m; ++j) cr(m * i + j, m * (i + 1) + j);
  }
  for (std::size_t i = 0; i < n / m; ++i) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (a != b) cr(m * i + a, m * i + b);
      }
    }
  }
  if (n / m >= 2) {
    for (std::size_t j = 0; j < m; ++j) cr(n - m + j, j);
  }
  return e;
}

std::vector<CircuitTemplate> every_builder(std::size_t n, Entangler e) {
  std::vector<CircuitTemplate> out{build_line(n, e), build_all_to_all(n, e)};
  if (n >= 3) {
    out.push_back(build_ring(n, e));
    for (std::size_t k = 1; k < n; ++k) out.push_back(build_ring_stride(n, k, e));
  }
  for (std::size_t m : divisors(n)) out.push_back(build_block_ring(n, m, e));
  return out;
}

}  // namespace

TEST_CASE("rotation skeleton wraps the entanglers") {
  const auto t = build_ring(4, Entangler::CRz);
  REQUIRE(t.gates.size() == 20);
  for (Qubit q = 0; q < 4; ++q) {
    CHECK(t.gates[q].kind == GateKind::Rx);
    CHECK(t.gates[4 + q].kind == GateKind::Rz);
    CHECK(t.gates[12 + q].kind == GateKind::Rx);
    CHECK(t.gates[16 + q].kind == GateKind::Rz);
    CHECK(t.gates[8 + q].kind == GateKind::CRz);
  }
}

TEST_CASE("build_line") {
  CHECK(entanglers(build_line(2, Entangler::CRx)) == 1);
  const auto four = build_line(4, Entangler::CRx);
  CHECK(entanglers(four) == 3);
  CHECK(four.param_count == 19);
  CHECK(entanglers(build_line(8, Entangler::CRz)) == 7);
  CHECK(entangling_edges(four) == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_WITH_AS(build_line(1, Entangler::CRx), "need two qubits",
                       std::invalid_argument);
  CHECK_THROWS_AS(build_line(4, Entangler::None), std::invalid_argument);
}

TEST_CASE("build_ring") {
  CHECK(entanglers(build_ring(4, Entangler::CRx)) == 4);
  CHECK(build_ring(8, Entangler::CRx).param_count == 40);
  CHECK(entangling_edges(build_ring(3, Entangler::CRx)) ==
        std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS(build_ring(2, Entangler::CRx), std::invalid_argument);
}

TEST_CASE("build_ring_stride") {
  const auto t = build_ring_stride(8, 3, Entangler::CRx);
  CHECK(entanglers(t) == 16);
  CHECK(t.param_count == 48);
  const auto edges = entangling_edges(t);
  CHECK(edges[8] == Edge{0, 3});

  auto doubled_ring = entangling_edges(build_ring(4, Entangler::CRx));
  const auto ring_copy = doubled_ring;
  doubled_ring.insert(doubled_ring.end(), ring_copy.begin(), ring_copy.end());
  CHECK(edge_multiset(build_ring_stride(4, 1, Entangler::CRx)) ==
        sorted(doubled_ring));

  CHECK_THROWS_WITH_AS(build_ring_stride(8, 0, Entangler::CRx), "self edge",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_ring_stride(8, 8, Entangler::CRx), "self edge",
                       std::invalid_argument);
}

TEST_CASE("build_all_to_all") {
  const auto eight = build_all_to_all(8, Entangler::CRx);
  CHECK(entanglers(eight) == 56);
  CHECK(eight.param_count == 88);
  CHECK(entangling_edges(build_all_to_all(2, Entangler::CRx)) ==
        std::vector<Edge>{{0, 1}, {1, 0}});
  CHECK(entanglers(build_all_to_all(4, Entangler::CRz)) == 12);
  CHECK_THROWS_AS(build_all_to_all(1, Entangler::CRx), std::invalid_argument);
}

TEST_CASE("build_block_ring") {
  SUBCASE("nine qubits in three blocks") {
    const auto t = build_block_ring(9, 3, Entangler::CRx);
    CHECK(entanglers(t) == 27);
    CHECK(t.param_count == 63);
    CHECK(t.meta.block_size == 3u);
  }
  SUBCASE("m = 1 degenerates to the ring") {
    CHECK(edge_multiset(build_block_ring(8, 1, Entangler::CRx)) ==
          edge_multiset(build_ring(8, Entangler::CRx)));
  }
  SUBCASE("two blocks of four") {
    const auto edges = entangling_edges(build_block_ring(8, 4, Entangler::CRx));
    REQUIRE(edges.size() == 32);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(edges[j] == Edge{static_cast<Qubit>(j), static_cast<Qubit>(4 + j)});
      CHECK(edges[28 + j] ==
            Edge{static_cast<Qubit>(4 + j), static_cast<Qubit>(j)});
    }
    for (std::size_t i = 4; i < 16; ++i) CHECK(edges[i].first < 4);
    for (std::size_t i = 16; i < 28; ++i) CHECK(edges[i].first >= 4);
  }
  SUBCASE("a single block is all-to-all") {
    const auto t = build_block_ring(4, 4, Entangler::CRx);
    CHECK(entanglers(t) == 12);
    CHECK(edge_multiset(t) == edge_multiset(build_all_to_all(4, Entangler::CRx)));
  }
  SUBCASE("m must divide n") {
    CHECK_THROWS_WITH_AS(build_block_ring(8, 3, Entangler::CRx),
                         "m must divide n", std::invalid_argument);
    CHECK_THROWS_AS(build_block_ring(8, 0, Entangler::CRx),
                    std::invalid_argument);
  }
}

TEST_CASE("block-ring gate order follows the construction loop exactly") {
  for (std::size_t n = 2; n <= 24; ++n) {
    for (std::size_t m : divisors(n)) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(entangling_edges(build_block_ring(n, m, Entangler::CRz)) ==
            block_ring_reference(n, m));
    }
  }
}

TEST_CASE("block layout partitions the qubits") {
  const auto layout = make_block_layout(12, 4);
  REQUIRE(layout.block_count() == 3);
  std::vector<Qubit> all;
  for (const auto& b : layout.blocks) {
    CHECK(b.size() == 4);
    all.insert(all.end(), b.begin(), b.end());
  }
  for (Qubit q = 0; q < 12; ++q) CHECK(all[q] == q);
}

TEST_CASE("builder invariants") {
  for (std::size_t n = 2; n <= 12; ++n) {
    for (auto e : {Entangler::CRx, Entangler::CRz}) {
      for (const auto& t : every_builder(n, e)) {
        CAPTURE(n);
        CAPTURE(to_string(t.meta.topology));
        CHECK(is_valid(t));
        CHECK(t.param_count == 4 * n + entanglers(t));
        for (auto [c, tq] : entangling_edges(t)) CHECK(c != tq);
      }
    }
  }
}

TEST_CASE("block-ring edge structure") {
  for (std::size_t n = 2; n <= 24; ++n) {
    for (std::size_t m : divisors(n)) {
      const auto t = build_block_ring(n, m, Entangler::CRx);
      const std::size_t blocks = n / m;
      if (blocks >= 2) {
        CHECK(entanglers(t) == n + blocks * m * (m - 1));
        CHECK(entanglers(t) == m * n);
      }
      for (auto [c, tq] : entangling_edges(t)) {
        if (c / m == tq / m) continue;  // intra-block
        // inter-block edges join equal offsets of adjacent blocks
        CHECK(c % m == tq % m);
        CHECK((c / m + 1) % blocks == tq / m);
      }
    }
  }
  for (std::size_t n : {4, 6, 8, 9}) {
    CHECK(edge_multiset(build_block_ring(n, 1, Entangler::CRx)) ==
          edge_multiset(build_ring(n, Entangler::CRx)));
    CHECK(edge_multiset(build_block_ring(n, n, Entangler::CRx)) ==
          edge_multiset(build_all_to_all(n, Entangler::CRx)));
  }
}

TEST_CASE("builders are deterministic") {
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto a = every_builder(n, Entangler::CRx);
    const auto b = every_builder(n, Entangler::CRx);
    CHECK(a == b);
  }
}

TEST_CASE("default block size") {
  CHECK(default_block_size(8) == 2);
  CHECK(default_block_size(9) == 3);
  CHECK(default_block_size(12) == 3);
  CHECK(default_block_size(6) == 2);
  CHECK(default_block_size(16) == 4);
  CHECK(default_block_size(7) == 1);
  CHECK(divisors(12) == std::vector<std::size_t>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("build_suite") {
  const auto suite = build_suite(8);
  REQUIRE(suite.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(suite[i].id == i + 1);
    CHECK(suite[i].circuit.meta.entangler ==
          (i % 2 == 0 ? Entangler::CRx : Entangler::CRz));
  }
  CHECK(suite[0].circuit.meta.topology == TopologyTag::Line);
  CHECK(suite[2].circuit.meta.topology == TopologyTag::Ring);
  CHECK(suite[4].circuit.meta.topology == TopologyTag::RingStride);
  CHECK(suite[4].circuit.meta.stride == 3u);
  CHECK(suite[6].circuit.meta.topology == TopologyTag::AllToAll);
  CHECK(entanglers(suite[6].circuit) == 56);
  CHECK(suite[8].circuit.meta.block_size == 2u);
  CHECK(entanglers(suite[8].circuit) == 16);

  const auto nine = build_suite(9);
  CHECK(nine[8].circuit.meta.block_size == 3u);
  CHECK(entanglers(nine[8].circuit) == 27);

  CHECK(build_suite(8, 4)[9].circuit.meta.block_size == 4u);
  CHECK_THROWS_AS(build_suite(8, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_suite(3), std::invalid_argument);
}
