#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "pqctopo/circuit.hpp"

namespace pqctopo {

enum class CostSource : std::uint8_t { Analytic, Measured };

struct CostReport {
  std::size_t params = 0;
  std::size_t two_qubit_gates = 0;
  std::size_t depth = 0;
  CostSource source = CostSource::Measured;

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// Rows of the closed-form cost table: ring-stride (5), all-to-all (7) and
/// block-ring (9) circuits.
enum class CostRow : std::uint8_t { Circuit5, Circuit7, Circuit9 };

std::string_view to_string(CostRow row);

/// Closed-form cost. Circuit5 is reported exactly as published, even where
/// it disagrees with the stride-ring layout this library builds.
CostReport analytic_cost(CostRow row, std::size_t n,
                         std::optional<std::size_t> m, std::size_t layers);

/// Makespan of unit-time gates list-scheduled in emission order, each gate
/// starting once every qubit it touches is free.
std::size_t asap_depth(const CircuitTemplate& tmpl);

CostReport measured_cost(const CircuitTemplate& tmpl);

}  // namespace pqctopo
