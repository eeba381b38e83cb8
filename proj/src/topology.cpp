#include "pqctopo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pqctopo {
namespace {

class Assembler {
 public:
  Assembler(std::size_t n, TopologyTag tag, Entangler entangler) {
    tmpl_.n = n;
    tmpl_.meta.topology = tag;
    tmpl_.meta.entangler = entangler;
  }

  void rotation_columns() {
    for (Qubit q = 0; q < tmpl_.n; ++q) add(GateKind::Rx, q, std::nullopt);
    for (Qubit q = 0; q < tmpl_.n; ++q) add(GateKind::Rz, q, std::nullopt);
  }

  void entangle(std::size_t control, std::size_t target) {
    add(gate_kind(tmpl_.meta.entangler), static_cast<Qubit>(target),
        static_cast<Qubit>(control));
  }

  CircuitTemplate& get() { return tmpl_; }

 private:
  void add(GateKind kind, Qubit target, std::optional<Qubit> control) {
    tmpl_.gates.push_back({kind, target, control, tmpl_.param_count++});
  }

  CircuitTemplate tmpl_;
};

void require_entangler(Entangler e) {
  if (e == Entangler::None) {
    throw std::invalid_argument("entangler must be crx or crz");
  }
}

}  // namespace

BlockLayout make_block_layout(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw std::invalid_argument("block size out of range");
  if (n % m != 0) throw std::invalid_argument("m must divide n");
  BlockLayout layout;
  layout.block_size = m;
  for (std::size_t b = 0; b < n / m; ++b) {
    auto& block = layout.blocks.emplace_back();
    for (std::size_t j = 0; j < m; ++j) {
      block.push_back(static_cast<Qubit>(b * m + j));
    }
  }
  return layout;
}

CircuitTemplate build_line(std::size_t n, Entangler entangler) {
  if (n < 2) throw std::invalid_argument("need two qubits");
  require_entangler(entangler);
  Assembler a(n, TopologyTag::Line, entangler);
  a.rotation_columns();
  for (std::size_t i = 0; i + 1 < n; ++i) a.entangle(i, i + 1);
  a.rotation_columns();
  return std::move(a.get());
}

CircuitTemplate build_ring(std::size_t n, Entangler entangler) {
  if (n < 3) throw std::invalid_argument("ring needs at least three qubits");
  require_entangler(entangler);
  Assembler a(n, TopologyTag::Ring, entangler);
  a.rotation_columns();
  for (std::size_t i = 0; i < n; ++i) a.entangle(i, (i + 1) % n);
  a.rotation_columns();
  return std::move(a.get());
}

CircuitTemplate build_ring_stride(std::size_t n, std::size_t stride,
                                  Entangler entangler) {
  if (n < 3) throw std::invalid_argument("ring needs at least three qubits");
  if (stride % n == 0) throw std::invalid_argument("self edge");
  if (stride >= n) throw std::invalid_argument("stride must be below n");
  require_entangler(entangler);
  Assembler a(n, TopologyTag::RingStride, entangler);
  a.get().meta.stride = stride;
  a.rotation_columns();
  for (std::size_t i = 0; i < n; ++i) a.entangle(i, (i + 1) % n);
  for (std::size_t i = 0; i < n; ++i) a.entangle(i, (i + stride) % n);
  a.rotation_columns();
  return std::move(a.get());
}

CircuitTemplate build_all_to_all(std::size_t n, Entangler entangler) {
  if (n < 2) throw std::invalid_argument("need two qubits");
  require_entangler(entangler);
  Assembler a(n, TopologyTag::AllToAll, entangler);
  a.rotation_columns();
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < n; ++t) {
      if (c != t) a.entangle(c, t);
    }
  }
  a.rotation_columns();
  return std::move(a.get());
}

CircuitTemplate build_block_ring(std::size_t n, std::size_t m,
                                 Entangler entangler) {
  if (n < 2) throw std::invalid_argument("need two qubits");
  require_entangler(entangler);
  const BlockLayout layout = make_block_layout(n, m);
  const std::size_t t = layout.block_count();

  Assembler a(n, TopologyTag::BlockRing, entangler);
  a.get().meta.block_size = m;
  a.rotation_columns();
  // forward links between same-offset qubits of adjacent blocks
  for (std::size_t i = 0; i + 1 < t; ++i) {
    for (std::size_t j = 0; j < m; ++j) a.entangle(m * i + j, m * (i + 1) + j);
  }
  for (const auto& block : layout.blocks) {
    for (Qubit c : block) {
      for (Qubit tq : block) {
        if (c != tq) a.entangle(c, tq);
      }
    }
  }
  // wrap link closes the ring; with a single block it would be a self edge
  if (t >= 2) {
    for (std::size_t j = 0; j < m; ++j) a.entangle(n - m + j, j);
  }
  a.rotation_columns();
  return std::move(a.get());
}

CircuitTemplate build_rotations_only(std::size_t n) {
  if (n < 1) throw std::invalid_argument("need one qubit");
  Assembler a(n, TopologyTag::Custom, Entangler::None);
  a.rotation_columns();
  a.rotation_columns();
  return std::move(a.get());
}

CircuitTemplate build_idle(std::size_t n) {
  if (n < 1) throw std::invalid_argument("need one qubit");
  CircuitTemplate t;
  t.n = n;
  t.meta.topology = TopologyTag::Idle;
  return t;
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

std::size_t default_block_size(std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  const double root = std::sqrt(static_cast<double>(n));
  std::size_t best = 1;
  double best_dist = std::abs(1.0 - root);
  for (std::size_t d : divisors(n)) {
    const double dist = std::abs(static_cast<double>(d) - root);
    if (dist < best_dist) {
      best = d;
      best_dist = dist;
    }
  }
  return best;
}

CircuitTemplate build_suite_circuit(int id, std::size_t n,
                                    std::size_t block_size) {
  if (id < 1 || id > 10) {
    throw std::invalid_argument("suite circuit id must be in 1..10");
  }
  const Entangler e = (id % 2 == 1) ? Entangler::CRx : Entangler::CRz;
  switch ((id - 1) / 2) {
    case 0: return build_line(n, e);
    case 1: return build_ring(n, e);
    case 2: return build_ring_stride(n, kSuiteStride, e);
    case 3: return build_all_to_all(n, e);
    default:
      return build_block_ring(
          n, block_size == 0 ? default_block_size(n) : block_size, e);
  }
}

std::vector<SuiteEntry> build_suite(std::size_t n, std::size_t block_size) {
  if (n <= kSuiteStride) {
    throw std::invalid_argument("suite needs n > " +
                                std::to_string(kSuiteStride));
  }
  std::vector<SuiteEntry> out;
  for (int id = 1; id <= 10; ++id) {
    out.push_back({id, build_suite_circuit(id, n, block_size)});
  }
  return out;
}

std::vector<Edge> entangling_edges(const CircuitTemplate& tmpl) {
  std::vector<Edge> out;
  for (const Gate& g : tmpl.gates) {
    if (g.control) out.emplace_back(*g.control, g.target);
  }
  return out;
}

std::vector<Edge> edge_multiset(const CircuitTemplate& tmpl) {
  auto edges = entangling_edges(tmpl);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace pqctopo
