#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqctopo/circuit.hpp"
#include "pqctopo/descriptors.hpp"

namespace pqctopo {

enum class Command : std::uint8_t { Build, Expr, Ent, Suite, SweepM };
enum class OutputFormat : std::uint8_t { Csv, Json };

std::string_view to_string(Command c);
Command command_from_string(std::string_view text);
std::string_view to_string(OutputFormat f);
OutputFormat format_from_string(std::string_view text);
TopologyTag topology_from_string(std::string_view text);

/// Everything needed to reproduce one CLI run. Embedded verbatim in every
/// output file; the output path and thread count are deliberately absent
/// because they do not influence the bytes written.
struct ExperimentSpec {
  Command command = Command::Suite;
  /// Line, Ring, RingStride, AllToAll or BlockRing; ignored by suite and
  /// sweep-m (sweep-m is always block-ring).
  TopologyTag topology = TopologyTag::BlockRing;
  std::size_t qubits = 8;
  std::optional<std::size_t> block_size;
  std::size_t stride = 3;
  std::vector<std::size_t> layers = {1};
  Entangler entangler = Entangler::CRx;
  bool idle = false;
  bool no_entanglers = false;
  SamplingConfig sampling;
  OutputFormat format = OutputFormat::Csv;
};

/// Throws std::invalid_argument on any inconsistency (ranges, divisibility,
/// layer list shape for the command).
void validate_spec(const ExperimentSpec& spec);

/// Compact single-line JSON with a fixed key order.
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(std::string_view text);

/// Recovers the spec embedded in a file written by run_command.
ExperimentSpec extract_embedded_spec(std::string_view file_contents);

/// The single template described by a build/expr/ent spec.
CircuitTemplate template_for(const ExperimentSpec& spec);

/// Angles bound into exported QASM: draw 0 of the seeded stream.
ParameterVector seeded_parameters(const CircuitTemplate& tmpl,
                                  std::uint64_t seed);

struct SuiteRow {
  int circuit_id = 0;
  std::size_t layers = 1;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  Entangler entangler = Entangler::CRx;
  std::size_t params = 0;
  std::size_t gates_2q = 0;
  std::size_t depth = 0;
  double expr_kl = 0.0;
  double ent_q = 0.0;
  std::uint64_t seed = 0;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
};

struct SweepRow {
  std::size_t m = 1;
  std::size_t layers = 1;
  std::size_t n = 0;
  Entangler entangler = Entangler::CRx;
  std::size_t analytic_params = 0;
  std::size_t analytic_gates_2q = 0;
  std::size_t analytic_depth = 0;
  std::size_t params = 0;
  std::size_t gates_2q = 0;
  std::size_t depth = 0;
  double expr_kl = 0.0;
  double ent_q = 0.0;
  std::uint64_t seed = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

SuiteReport run_suite(const ExperimentSpec& spec);
SweepReport run_sweep_m(const ExperimentSpec& spec);

std::string render_suite(const ExperimentSpec& spec, const SuiteReport& report,
                         OutputFormat format);
std::string render_sweep(const ExperimentSpec& spec, const SweepReport& report,
                         OutputFormat format);

/// Validates the spec, runs the command and returns the complete file
/// contents. Nothing is produced unless every row was computed.
std::string run_command(const ExperimentSpec& spec);

}  // namespace pqctopo
