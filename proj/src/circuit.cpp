#include "pqctopo/circuit.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pqctopo {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::CRx: return "crx";
    case GateKind::CRz: return "crz";
  }
  return "?";
}

std::string_view to_string(TopologyTag tag) {
  switch (tag) {
    case TopologyTag::Custom: return "custom";
    case TopologyTag::Idle: return "idle";
    case TopologyTag::Line: return "line";
    case TopologyTag::Ring: return "ring";
    case TopologyTag::RingStride: return "ring-stride";
    case TopologyTag::AllToAll: return "all-to-all";
    case TopologyTag::BlockRing: return "block-ring";
  }
  return "?";
}

std::string_view to_string(Entangler e) {
  switch (e) {
    case Entangler::CRx: return "crx";
    case Entangler::CRz: return "crz";
    case Entangler::None: return "none";
  }
  return "?";
}

Entangler entangler_from_string(std::string_view text) {
  if (text == "crx") return Entangler::CRx;
  if (text == "crz") return Entangler::CRz;
  if (text == "none") return Entangler::None;
  throw std::invalid_argument("unknown entangler '" + std::string(text) + "'");
}

GateKind gate_kind(Entangler e) {
  switch (e) {
    case Entangler::CRx: return GateKind::CRx;
    case Entangler::CRz: return GateKind::CRz;
    case Entangler::None: break;
  }
  throw std::invalid_argument("entangler 'none' has no gate kind");
}

std::size_t CircuitTemplate::two_qubit_gate_count() const {
  std::size_t count = 0;
  for (const auto& g : gates) count += is_controlled(g.kind) ? 1 : 0;
  return count;
}

std::vector<Violation> validate(const CircuitTemplate& tmpl) {
  std::vector<Violation> out;
  auto report = [&](std::size_t idx, std::string msg) {
    out.push_back({idx, std::move(msg)});
  };

  if (tmpl.n == 0) out.push_back({std::nullopt, "zero qubits"});

  // first gate that claimed each parameter index
  std::vector<std::optional<std::size_t>> owner(tmpl.param_count);
  for (std::size_t i = 0; i < tmpl.gates.size(); ++i) {
    const Gate& g = tmpl.gates[i];
    if (g.target >= tmpl.n) report(i, "target qubit out of range");
    if (is_controlled(g.kind)) {
      if (!g.control) {
        report(i, "controlled gate without control qubit");
      } else {
        if (*g.control >= tmpl.n) report(i, "control qubit out of range");
        if (*g.control == g.target) report(i, "self-controlled gate");
      }
    } else if (g.control) {
      report(i, "single-qubit gate with control qubit");
    }
    if (g.param_index >= tmpl.param_count) {
      report(i, "parameter index out of range");
    } else if (owner[g.param_index]) {
      report(i, "parameter reused");
    } else {
      owner[g.param_index] = i;
    }
  }
  for (std::size_t p = 0; p < owner.size(); ++p) {
    if (!owner[p]) {
      out.push_back({std::nullopt,
                     "parameter " + std::to_string(p) + " unused"});
    }
  }
  return out;
}

bool is_valid(const CircuitTemplate& tmpl) { return validate(tmpl).empty(); }

void require_valid(const CircuitTemplate& tmpl) {
  auto violations = validate(tmpl);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid circuit template:";
  for (const auto& v : violations) {
    msg << ' ';
    if (v.gate_index) msg << "[gate " << *v.gate_index << "] ";
    msg << v.message << ';';
  }
  throw std::invalid_argument(msg.str());
}

CircuitTemplate repeat_layers(const CircuitTemplate& tmpl, std::size_t layers) {
  if (layers == 0) throw std::invalid_argument("zero layers");
  require_valid(tmpl);

  CircuitTemplate out;
  out.n = tmpl.n;
  out.param_count = tmpl.param_count * layers;
  out.meta = tmpl.meta;
  out.meta.layers = tmpl.meta.layers * layers;
  out.gates.reserve(tmpl.gates.size() * layers);
  for (std::size_t copy = 0; copy < layers; ++copy) {
    for (Gate g : tmpl.gates) {
      g.param_index += copy * tmpl.param_count;
      out.gates.push_back(g);
    }
  }
  return out;
}

void require_binding(const CircuitTemplate& tmpl,
                     const ParameterVector& params) {
  if (params.size() != tmpl.param_count) {
    throw std::invalid_argument(
        "parameter vector has " + std::to_string(params.size()) +
        " angles, template expects " + std::to_string(tmpl.param_count));
  }
  for (double a : params.angles) {
    if (!std::isfinite(a)) throw std::invalid_argument("non-finite angle");
  }
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return {buf, end};
}

std::string export_qasm(const CircuitTemplate& tmpl,
                        const ParameterVector& params,
                        const std::vector<std::string>& header_comment) {
  require_binding(tmpl, params);
  require_valid(tmpl);

  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  for (const auto& line : header_comment) out << "// " << line << '\n';
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << tmpl.n << "];\n";
  for (const Gate& g : tmpl.gates) {
    out << to_string(g.kind) << '(' << format_double(params[g.param_index])
        << ") ";
    if (g.control) out << "q[" << *g.control << "],";
    out << "q[" << g.target << "];\n";
  }
  return out.str();
}

}  // namespace pqctopo
