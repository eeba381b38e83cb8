#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pqctopo/bench.hpp"
#include "pqctopo/cost.hpp"
#include "pqctopo/descriptors.hpp"
#include "pqctopo/topology.hpp"

namespace py = pybind11;
using namespace pqctopo;

namespace {

StateVector to_state(const py::array_t<std::complex<double>,
                                      py::array::c_style |
                                          py::array::forcecast>& amps) {
  if (amps.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return StateVector::from_amplitudes(
      {amps.data(), amps.data() + amps.size()});
}

py::array_t<std::complex<double>> to_array(const StateVector& s) {
  const auto amps = s.amplitudes();
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(amps.size()));
  std::copy(amps.begin(), amps.end(), out.mutable_data());
  return out;
}

SamplingConfig make_config(std::size_t samples, std::size_t bins,
                           std::uint64_t seed, std::size_t repeats,
                           std::size_t threads) {
  SamplingConfig c;
  c.samples = samples;
  c.bins = bins;
  c.seed = seed;
  c.repeats = repeats;
  c.threads = threads;
  return c;
}

py::dict cost_dict(const CostReport& r) {
  py::dict d;
  d["params"] = r.params;
  d["two_qubit_gates"] = r.two_qubit_gates;
  d["depth"] = r.depth;
  d["source"] = r.source == CostSource::Analytic ? "analytic" : "measured";
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parameterized quantum circuit topologies and descriptors";

  py::enum_<GateKind>(m, "GateKind")
      .value("Rx", GateKind::Rx)
      .value("Ry", GateKind::Ry)
      .value("Rz", GateKind::Rz)
      .value("CRx", GateKind::CRx)
      .value("CRz", GateKind::CRz);

  py::enum_<Entangler>(m, "Entangler")
      .value("CRx", Entangler::CRx)
      .value("CRz", Entangler::CRz);

  py::enum_<CostRow>(m, "CostRow")
      .value("Circuit5", CostRow::Circuit5)
      .value("Circuit7", CostRow::Circuit7)
      .value("Circuit9", CostRow::Circuit9);

  py::class_<Gate>(m, "Gate")
      .def_readonly("kind", &Gate::kind)
      .def_readonly("target", &Gate::target)
      .def_readonly("control", &Gate::control)
      .def_readonly("param_index", &Gate::param_index)
      .def("__repr__", [](const Gate& g) {
        std::string s = "Gate(" + std::string(to_string(g.kind)) + ", ";
        if (g.control) s += "control=" + std::to_string(*g.control) + ", ";
        return s + "target=" + std::to_string(g.target) + ")";
      });

  py::class_<CircuitTemplate>(m, "CircuitTemplate")
      .def_readonly("n", &CircuitTemplate::n)
      .def_readonly("gates", &CircuitTemplate::gates)
      .def_readonly("param_count", &CircuitTemplate::param_count)
      .def_property_readonly("topology",
                             [](const CircuitTemplate& t) {
                               return std::string(to_string(t.meta.topology));
                             })
      .def_property_readonly(
          "block_size",
          [](const CircuitTemplate& t) { return t.meta.block_size; })
      .def_property_readonly(
          "layers", [](const CircuitTemplate& t) { return t.meta.layers; })
      .def_property_readonly("two_qubit_gates",
                             &CircuitTemplate::two_qubit_gate_count)
      .def_property_readonly("edges", &entangling_edges);

  m.def("build_line", &build_line, py::arg("n"), py::arg("entangler"));
  m.def("build_ring", &build_ring, py::arg("n"), py::arg("entangler"));
  m.def("build_ring_stride", &build_ring_stride, py::arg("n"),
        py::arg("stride"), py::arg("entangler"));
  m.def("build_all_to_all", &build_all_to_all, py::arg("n"),
        py::arg("entangler"));
  m.def("build_block_ring", &build_block_ring, py::arg("n"), py::arg("m"),
        py::arg("entangler"));
  m.def("build_idle", &build_idle, py::arg("n"));
  m.def("build_rotations_only", &build_rotations_only, py::arg("n"));
  m.def(
      "build_suite",
      [](std::size_t n, std::size_t block_size) {
        std::vector<std::pair<int, CircuitTemplate>> out;
        for (auto& e : build_suite(n, block_size)) {
          out.emplace_back(e.id, std::move(e.circuit));
        }
        return out;
      },
      py::arg("n"), py::arg("block_size") = 0);
  m.def("default_block_size", &default_block_size, py::arg("n"));
  m.def("repeat_layers", &repeat_layers, py::arg("template"),
        py::arg("layers"));
  m.def(
      "validate",
      [](const CircuitTemplate& t) {
        std::vector<std::pair<std::optional<std::size_t>, std::string>> out;
        for (const auto& v : validate(t)) out.emplace_back(v.gate_index, v.message);
        return out;
      },
      py::arg("template"));
  m.def(
      "export_qasm",
      [](const CircuitTemplate& t, std::vector<double> angles) {
        return export_qasm(t, ParameterVector{std::move(angles)});
      },
      py::arg("template"), py::arg("angles"));

  m.def(
      "run",
      [](const CircuitTemplate& t, std::vector<double> angles) {
        return to_array(run(t, ParameterVector{std::move(angles)}));
      },
      py::arg("template"), py::arg("angles"),
      "Amplitudes of U(theta)|0...0>; qubit j is bit j of the index.");
  m.def(
      "fidelity",
      [](const py::array_t<std::complex<double>>& a,
         const py::array_t<std::complex<double>>& b) {
        return fidelity(to_state(a), to_state(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "mw_q", [](const py::array_t<std::complex<double>>& s) {
        return mw_q(to_state(s));
      },
      py::arg("state"));
  m.def(
      "reduced_purity",
      [](const py::array_t<std::complex<double>>& s, std::size_t j) {
        return reduced_purity(to_state(s), j);
      },
      py::arg("state"), py::arg("qubit"));

  m.def("haar_bin_mass", &haar_bin_mass, py::arg("n"), py::arg("bin_index"),
        py::arg("bins") = kDefaultBins);
  m.def(
      "expressibility",
      [](const CircuitTemplate& t, std::size_t samples, std::size_t bins,
         std::uint64_t seed, std::size_t repeats, std::size_t threads) {
        ExprResult r;
        {
          py::gil_scoped_release release;
          r = expressibility(t, make_config(samples, bins, seed, repeats, threads));
        }
        py::dict d;
        d["kl_nats"] = r.kl_nats;
        d["repeat_kl"] = r.repeat_kl;
        d["counts"] = r.histogram.counts;
        return d;
      },
      py::arg("template"), py::arg("samples") = kDefaultSamples,
      py::arg("bins") = kDefaultBins, py::arg("seed") = 1,
      py::arg("repeats") = 1, py::arg("threads") = 0);
  m.def(
      "entangling_capability",
      [](const CircuitTemplate& t, std::size_t samples, std::uint64_t seed,
         std::size_t repeats, std::size_t threads) {
        py::gil_scoped_release release;
        return entangling_capability(
                   t, make_config(samples, kDefaultBins, seed, repeats, threads))
            .mean_q;
      },
      py::arg("template"), py::arg("samples") = kDefaultSamples,
      py::arg("seed") = 1, py::arg("repeats") = 1, py::arg("threads") = 0);

  m.def(
      "analytic_cost",
      [](CostRow row, std::size_t n, std::optional<std::size_t> m,
         std::size_t layers) { return cost_dict(analytic_cost(row, n, m, layers)); },
      py::arg("row"), py::arg("n"), py::arg("m") = std::nullopt,
      py::arg("layers") = 1);
  m.def(
      "measured_cost",
      [](const CircuitTemplate& t) { return cost_dict(measured_cost(t)); },
      py::arg("template"));
  m.def("asap_depth", &asap_depth, py::arg("template"));

  m.def(
      "run_spec",
      [](const std::string& spec_json) {
        const ExperimentSpec spec = spec_from_json(spec_json);
        py::gil_scoped_release release;
        return run_command(spec);
      },
      py::arg("spec_json"),
      "Runs an experiment spec (the JSON embedded in CLI outputs) and returns "
      "the file contents the CLI would write.");

  py::register_exception<std::invalid_argument>(m, "InvalidArgument",
                                                PyExc_ValueError);
}
