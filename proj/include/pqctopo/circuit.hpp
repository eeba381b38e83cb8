#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqctopo {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t { Rx, Ry, Rz, CRx, CRz };

constexpr bool is_controlled(GateKind kind) {
  return kind == GateKind::CRx || kind == GateKind::CRz;
}

std::string_view to_string(GateKind kind);

/// One rotation gate. Every gate owns exactly one angle, addressed by
/// `param_index` into the bound ParameterVector.
struct Gate {
  GateKind kind = GateKind::Rx;
  Qubit target = 0;
  std::optional<Qubit> control;
  std::size_t param_index = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class TopologyTag : std::uint8_t {
  Custom,
  Idle,
  Line,
  Ring,
  RingStride,
  AllToAll,
  BlockRing,
};

std::string_view to_string(TopologyTag tag);

enum class Entangler : std::uint8_t { CRx, CRz, None };

std::string_view to_string(Entangler e);
Entangler entangler_from_string(std::string_view text);
GateKind gate_kind(Entangler e);

struct CircuitMeta {
  TopologyTag topology = TopologyTag::Custom;
  std::optional<std::size_t> block_size;
  std::optional<std::size_t> stride;
  std::size_t layers = 1;
  Entangler entangler = Entangler::None;

  friend bool operator==(const CircuitMeta&, const CircuitMeta&) = default;
};

/// The unitary U_theta as an ordered gate list on `n` qubits. Values of this
/// type are plain data; use validate() to check the structural invariants.
struct CircuitTemplate {
  std::size_t n = 1;
  std::vector<Gate> gates;
  std::size_t param_count = 0;
  CircuitMeta meta;

  std::size_t two_qubit_gate_count() const;

  friend bool operator==(const CircuitTemplate&,
                         const CircuitTemplate&) = default;
};

/// Rotation angles in radians, one per template parameter.
struct ParameterVector {
  std::vector<double> angles;

  std::size_t size() const { return angles.size(); }
  double operator[](std::size_t i) const { return angles[i]; }
};

struct Violation {
  std::optional<std::size_t> gate_index;
  std::string message;
};

/// Empty result means the template is valid.
std::vector<Violation> validate(const CircuitTemplate& tmpl);

bool is_valid(const CircuitTemplate& tmpl);

/// Throws std::invalid_argument listing every violation.
void require_valid(const CircuitTemplate& tmpl);

/// L concatenated copies with fresh parameter indices per copy.
CircuitTemplate repeat_layers(const CircuitTemplate& tmpl, std::size_t layers);

/// Throws if `params` cannot bind to `tmpl` (length mismatch or a
/// non-finite angle).
void require_binding(const CircuitTemplate& tmpl, const ParameterVector& params);

/// OpenQASM 2.0 text, one register `q` of n qubits, gate order preserved.
/// `header_comment` lines (if any) are emitted as `//` comments after the
/// version line.
std::string export_qasm(const CircuitTemplate& tmpl,
                        const ParameterVector& params,
                        const std::vector<std::string>& header_comment = {});

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace pqctopo
