#include "pqctopo/bench.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pqctopo/cost.hpp"
#include "pqctopo/sampling.hpp"
#include "pqctopo/topology.hpp"

namespace pqctopo {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kCsvSpecPrefix = "# spec ";
constexpr std::string_view kQasmSpecPrefix = "// spec ";

Json spec_json(const ExperimentSpec& spec) {
  Json j;
  j["command"] = to_string(spec.command);
  j["topology"] = to_string(spec.topology);
  j["qubits"] = spec.qubits;
  j["block_size"] =
      spec.block_size ? Json(*spec.block_size) : Json(nullptr);
  j["stride"] = spec.stride;
  j["layers"] = spec.layers;
  j["entangler"] = to_string(spec.entangler);
  j["idle"] = spec.idle;
  j["no_entanglers"] = spec.no_entanglers;
  j["samples"] = spec.sampling.samples;
  j["bins"] = spec.sampling.bins;
  j["seed"] = spec.sampling.seed;
  j["repeats"] = spec.sampling.repeats;
  j["format"] = to_string(spec.format);
  return j;
}

Json optional_json(const std::optional<std::size_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string optional_csv(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string{};
}

std::string with_spec_json(const ExperimentSpec& spec, Json body_key_value,
                           std::string_view key) {
  Json doc;
  doc["spec"] = spec_json(spec);
  doc[std::string(key)] = std::move(body_key_value);
  return doc.dump(2) + "\n";
}

void require_single_layer(const ExperimentSpec& spec) {
  if (spec.layers.size() != 1) {
    throw std::invalid_argument(std::string(to_string(spec.command)) +
                                " takes exactly one layer count");
  }
}

std::size_t proper_divisor_count(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t d : divisors(n)) count += (d > 1 && d < n) ? 1 : 0;
  return count;
}

CircuitTemplate single_layer_template(const ExperimentSpec& spec) {
  const std::size_t n = spec.qubits;
  if (spec.idle) return build_idle(n);
  if (spec.no_entanglers) return build_rotations_only(n);
  switch (spec.topology) {
    case TopologyTag::Line: return build_line(n, spec.entangler);
    case TopologyTag::Ring: return build_ring(n, spec.entangler);
    case TopologyTag::RingStride:
      return build_ring_stride(n, spec.stride, spec.entangler);
    case TopologyTag::AllToAll: return build_all_to_all(n, spec.entangler);
    case TopologyTag::BlockRing:
      return build_block_ring(n, spec.block_size.value_or(default_block_size(n)),
                              spec.entangler);
    default: break;
  }
  throw std::invalid_argument("unsupported topology '" +
                              std::string(to_string(spec.topology)) + "'");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Build: return "build";
    case Command::Expr: return "expr";
    case Command::Ent: return "ent";
    case Command::Suite: return "suite";
    case Command::SweepM: return "sweep-m";
  }
  return "?";
}

Command command_from_string(std::string_view text) {
  for (auto c : {Command::Build, Command::Expr, Command::Ent, Command::Suite,
                 Command::SweepM}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown command '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat format_from_string(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

TopologyTag topology_from_string(std::string_view text) {
  for (auto t : {TopologyTag::Line, TopologyTag::Ring, TopologyTag::RingStride,
                 TopologyTag::AllToAll, TopologyTag::BlockRing,
                 TopologyTag::Idle, TopologyTag::Custom}) {
    if (to_string(t) == text) return t;
  }
  throw std::invalid_argument("unknown topology '" + std::string(text) + "'");
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.qubits < 1 || spec.qubits > kMaxQubits) {
    throw std::invalid_argument("qubits must be in 1.." +
                                std::to_string(kMaxQubits));
  }
  if (spec.layers.empty()) throw std::invalid_argument("no layer counts");
  for (std::size_t l : spec.layers) {
    if (l == 0) throw std::invalid_argument("zero layers");
  }
  if (spec.idle && spec.no_entanglers) {
    throw std::invalid_argument("--idle and --no-entanglers are exclusive");
  }
  if (spec.entangler == Entangler::None) {
    throw std::invalid_argument("entangler must be crx or crz");
  }
  spec.sampling.check();
  if (spec.block_size && (*spec.block_size == 0 ||
                          *spec.block_size > spec.qubits ||
                          spec.qubits % *spec.block_size != 0)) {
    throw std::invalid_argument("m must divide n");
  }

  switch (spec.command) {
    case Command::Build:
    case Command::Expr:
    case Command::Ent:
      require_single_layer(spec);
      (void)single_layer_template(spec);
      if (spec.command == Command::Ent && spec.qubits < 2) {
        throw std::invalid_argument("MW undefined for single qubit");
      }
      break;
    case Command::Suite:
      if (spec.idle || spec.no_entanglers) {
        throw std::invalid_argument("suite does not take --idle/--no-entanglers");
      }
      (void)build_suite(spec.qubits, spec.block_size.value_or(0));
      break;
    case Command::SweepM:
      if (spec.idle || spec.no_entanglers) {
        throw std::invalid_argument(
            "sweep-m does not take --idle/--no-entanglers");
      }
      if (proper_divisor_count(spec.qubits) < 2) {
        throw std::invalid_argument(
            "sweep-m needs n with at least two divisors strictly between 1 "
            "and n");
      }
      break;
  }
}

std::string spec_to_json(const ExperimentSpec& spec) {
  return spec_json(spec).dump();
}

ExperimentSpec spec_from_json(std::string_view text) {
  const Json j = Json::parse(text);
  ExperimentSpec s;
  s.command = command_from_string(j.at("command").get<std::string>());
  s.topology = topology_from_string(j.at("topology").get<std::string>());
  s.qubits = j.at("qubits").get<std::size_t>();
  if (!j.at("block_size").is_null()) {
    s.block_size = j.at("block_size").get<std::size_t>();
  }
  s.stride = j.at("stride").get<std::size_t>();
  s.layers = j.at("layers").get<std::vector<std::size_t>>();
  s.entangler = entangler_from_string(j.at("entangler").get<std::string>());
  s.idle = j.at("idle").get<bool>();
  s.no_entanglers = j.at("no_entanglers").get<bool>();
  s.sampling.samples = j.at("samples").get<std::size_t>();
  s.sampling.bins = j.at("bins").get<std::size_t>();
  s.sampling.seed = j.at("seed").get<std::uint64_t>();
  s.sampling.repeats = j.at("repeats").get<std::size_t>();
  s.format = format_from_string(j.at("format").get<std::string>());
  return s;
}

ExperimentSpec extract_embedded_spec(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    for (auto prefix : {kCsvSpecPrefix, kQasmSpecPrefix}) {
      if (line.starts_with(prefix)) {
        return spec_from_json(std::string_view(line).substr(prefix.size()));
      }
    }
    if (line.starts_with("{")) {
      return spec_from_json(Json::parse(contents).at("spec").dump());
    }
  }
  throw std::invalid_argument("no embedded experiment spec found");
}

CircuitTemplate template_for(const ExperimentSpec& spec) {
  require_single_layer(spec);
  const CircuitTemplate base = single_layer_template(spec);
  return spec.layers.front() == 1 ? base
                                  : repeat_layers(base, spec.layers.front());
}

ParameterVector seeded_parameters(const CircuitTemplate& tmpl,
                                  std::uint64_t seed) {
  ParameterVector p{std::vector<double>(tmpl.param_count)};
  ParameterStream(seed).angles(0, DrawStream::Theta, p.angles);
  return p;
}

SuiteReport run_suite(const ExperimentSpec& spec) {
  validate_spec(spec);
  SuiteReport report;
  const auto suite = build_suite(spec.qubits, spec.block_size.value_or(0));
  for (std::size_t layers : spec.layers) {
    for (const auto& entry : suite) {
      const CircuitTemplate tmpl = repeat_layers(entry.circuit, layers);
      const CostReport cost = measured_cost(tmpl);
      SuiteRow row;
      row.circuit_id = entry.id;
      row.layers = layers;
      row.n = tmpl.n;
      row.m = tmpl.meta.block_size;
      row.entangler = tmpl.meta.entangler;
      row.params = cost.params;
      row.gates_2q = cost.two_qubit_gates;
      row.depth = cost.depth;
      row.expr_kl = expressibility(tmpl, spec.sampling).kl_nats;
      row.ent_q = entangling_capability(tmpl, spec.sampling).mean_q;
      row.seed = spec.sampling.seed;
      report.rows.push_back(row);
    }
  }
  return report;
}

SweepReport run_sweep_m(const ExperimentSpec& spec) {
  validate_spec(spec);
  SweepReport report;
  const std::size_t n = spec.qubits;
  for (std::size_t layers : spec.layers) {
    for (std::size_t m : divisors(n)) {
      const CircuitTemplate tmpl =
          repeat_layers(build_block_ring(n, m, spec.entangler), layers);
      const CostReport analytic =
          analytic_cost(CostRow::Circuit9, n, m, layers);
      const CostReport measured = measured_cost(tmpl);
      SweepRow row;
      row.m = m;
      row.layers = layers;
      row.n = n;
      row.entangler = spec.entangler;
      row.analytic_params = analytic.params;
      row.analytic_gates_2q = analytic.two_qubit_gates;
      row.analytic_depth = analytic.depth;
      row.params = measured.params;
      row.gates_2q = measured.two_qubit_gates;
      row.depth = measured.depth;
      row.expr_kl = expressibility(tmpl, spec.sampling).kl_nats;
      row.ent_q = entangling_capability(tmpl, spec.sampling).mean_q;
      row.seed = spec.sampling.seed;
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string render_suite(const ExperimentSpec& spec, const SuiteReport& report,
                         OutputFormat format) {
  if (format == OutputFormat::Json) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      Json j;
      j["circuit_id"] = r.circuit_id;
      j["layers"] = r.layers;
      j["n"] = r.n;
      j["m"] = optional_json(r.m);
      j["entangler"] = to_string(r.entangler);
      j["params"] = r.params;
      j["gates_2q"] = r.gates_2q;
      j["depth"] = r.depth;
      j["expr_kl"] = r.expr_kl;
      j["ent_q"] = r.ent_q;
      j["seed"] = r.seed;
      rows.push_back(std::move(j));
    }
    return with_spec_json(spec, std::move(rows), "rows");
  }
  std::ostringstream out;
  out << kCsvSpecPrefix << spec_to_json(spec) << '\n';
  out << "circuit_id,layers,n,m,entangler,params,gates_2q,depth,expr_kl,ent_q,"
         "seed\n";
  for (const auto& r : report.rows) {
    out << r.circuit_id << ',' << r.layers << ',' << r.n << ','
        << optional_csv(r.m) << ',' << to_string(r.entangler) << ','
        << r.params << ',' << r.gates_2q << ',' << r.depth << ','
        << format_double(r.expr_kl) << ',' << format_double(r.ent_q) << ','
        << r.seed << '\n';
  }
  return out.str();
}

std::string render_sweep(const ExperimentSpec& spec, const SweepReport& report,
                         OutputFormat format) {
  if (format == OutputFormat::Json) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      Json j;
      j["m"] = r.m;
      j["layers"] = r.layers;
      j["n"] = r.n;
      j["entangler"] = to_string(r.entangler);
      j["analytic_params"] = r.analytic_params;
      j["analytic_gates_2q"] = r.analytic_gates_2q;
      j["analytic_depth"] = r.analytic_depth;
      j["params"] = r.params;
      j["gates_2q"] = r.gates_2q;
      j["depth"] = r.depth;
      j["expr_kl"] = r.expr_kl;
      j["ent_q"] = r.ent_q;
      j["seed"] = r.seed;
      rows.push_back(std::move(j));
    }
    return with_spec_json(spec, std::move(rows), "rows");
  }
  std::ostringstream out;
  out << kCsvSpecPrefix << spec_to_json(spec) << '\n';
  out << "m,layers,n,entangler,analytic_params,analytic_gates_2q,"
         "analytic_depth,params,gates_2q,depth,expr_kl,ent_q,seed\n";
  for (const auto& r : report.rows) {
    out << r.m << ',' << r.layers << ',' << r.n << ','
        << to_string(r.entangler) << ',' << r.analytic_params << ','
        << r.analytic_gates_2q << ',' << r.analytic_depth << ',' << r.params
        << ',' << r.gates_2q << ',' << r.depth << ','
        << format_double(r.expr_kl) << ',' << format_double(r.ent_q) << ','
        << r.seed << '\n';
  }
  return out.str();
}

namespace {

std::string render_descriptor(const ExperimentSpec& spec,
                              const CircuitTemplate& tmpl) {
  const CostReport cost = measured_cost(tmpl);
  const bool expr = spec.command == Command::Expr;
  std::optional<ExprResult> er;
  std::optional<EntResult> en;
  if (expr) {
    er = expressibility(tmpl, spec.sampling);
  } else {
    en = entangling_capability(tmpl, spec.sampling);
  }
  const double value = expr ? er->kl_nats : en->mean_q;

  if (spec.format == OutputFormat::Json) {
    Json j;
    j["descriptor"] = expr ? "expressibility" : "entangling_capability";
    j["topology"] = to_string(tmpl.meta.topology);
    j["n"] = tmpl.n;
    j["m"] = optional_json(tmpl.meta.block_size);
    j["layers"] = spec.layers.front();
    j["entangler"] = to_string(tmpl.meta.entangler);
    j["params"] = cost.params;
    j["gates_2q"] = cost.two_qubit_gates;
    j["depth"] = cost.depth;
    if (expr) {
      j["kl_nats"] = value;
      j["repeat_kl"] = er->repeat_kl;
      j["histogram"] = {{"bins", er->histogram.bins()},
                        {"total", er->histogram.total},
                        {"counts", er->histogram.counts}};
    } else {
      j["mean_q"] = value;
      j["sample_count"] = en->sample_count;
    }
    return with_spec_json(spec, std::move(j), "result");
  }
  std::ostringstream out;
  out << kCsvSpecPrefix << spec_to_json(spec) << '\n';
  out << "descriptor,topology,n,m,layers,entangler,params,gates_2q,depth,"
         "samples,bins,seed,repeats,value\n";
  out << (expr ? "expressibility" : "entangling_capability") << ','
      << to_string(tmpl.meta.topology) << ',' << tmpl.n << ','
      << optional_csv(tmpl.meta.block_size) << ',' << spec.layers.front()
      << ',' << to_string(tmpl.meta.entangler) << ',' << cost.params << ','
      << cost.two_qubit_gates << ',' << cost.depth << ','
      << spec.sampling.samples << ',' << spec.sampling.bins << ','
      << spec.sampling.seed << ',' << spec.sampling.repeats << ','
      << format_double(value) << '\n';
  return out.str();
}

}  // namespace

std::string run_command(const ExperimentSpec& spec) {
  validate_spec(spec);
  switch (spec.command) {
    case Command::Build: {
      const CircuitTemplate tmpl = template_for(spec);
      return export_qasm(tmpl, seeded_parameters(tmpl, spec.sampling.seed),
                         {"spec " + spec_to_json(spec)});
    }
    case Command::Expr:
    case Command::Ent:
      return render_descriptor(spec, template_for(spec));
    case Command::Suite:
      return render_suite(spec, run_suite(spec), spec.format);
    case Command::SweepM:
      return render_sweep(spec, run_sweep_m(spec), spec.format);
  }
  throw std::logic_error("unhandled command");
}

}  // namespace pqctopo
