#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pqctopo/circuit.hpp"

namespace pqctopo {

/// Directed (control, target) entangling edge.
using Edge = std::pair<Qubit, Qubit>;

/// Partition of 0..n-1 into t = n/m contiguous blocks of m qubits.
struct BlockLayout {
  std::size_t block_size = 1;
  std::vector<std::vector<Qubit>> blocks;

  std::size_t block_count() const { return blocks.size(); }
};

BlockLayout make_block_layout(std::size_t n, std::size_t m);

// Every builder wraps its entangling gates in the same rotation skeleton:
// Rx column, Rz column, entanglers, Rx column, Rz column.

CircuitTemplate build_line(std::size_t n, Entangler entangler);
CircuitTemplate build_ring(std::size_t n, Entangler entangler);
CircuitTemplate build_ring_stride(std::size_t n, std::size_t stride,
                                  Entangler entangler);
CircuitTemplate build_all_to_all(std::size_t n, Entangler entangler);
CircuitTemplate build_block_ring(std::size_t n, std::size_t m,
                                 Entangler entangler);

/// Rotation skeleton only; a product-state circuit with 4n parameters.
CircuitTemplate build_rotations_only(std::size_t n);

/// The identity circuit: no gates, no parameters.
CircuitTemplate build_idle(std::size_t n);

/// Divisor of n nearest to sqrt(n), ties toward the smaller divisor.
std::size_t default_block_size(std::size_t n);

std::vector<std::size_t> divisors(std::size_t n);

struct SuiteEntry {
  int id = 0;
  CircuitTemplate circuit;
};

constexpr std::size_t kSuiteStride = 3;

/// Circuits 1-10: line, ring, ring-stride(3), all-to-all, block-ring, each
/// with CRx (odd id) and CRz (even id) entanglers.
std::vector<SuiteEntry> build_suite(std::size_t n, std::size_t block_size = 0);

/// Builds one suite member by id (1..10).
CircuitTemplate build_suite_circuit(int id, std::size_t n,
                                    std::size_t block_size = 0);

/// Controlled gates in emission order.
std::vector<Edge> entangling_edges(const CircuitTemplate& tmpl);

/// Sorted edge list, for multiset comparisons.
std::vector<Edge> edge_multiset(const CircuitTemplate& tmpl);

}  // namespace pqctopo
