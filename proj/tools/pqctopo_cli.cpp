// pqctopo: build parameterized circuits and benchmark their descriptors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pqctopo/bench.hpp"

namespace fs = std::filesystem;
using namespace pqctopo;

namespace {

struct Flags {
  std::string topology = "block-ring";
  std::size_t qubits = 8;
  std::size_t block_size = 0;
  std::size_t stride = 3;
  std::vector<std::size_t> layers;
  std::string entangler = "crx";
  std::size_t samples = kDefaultSamples;
  std::size_t bins = kDefaultBins;
  std::uint64_t seed = 1;
  std::size_t repeats = 1;
  std::size_t threads = 0;
  std::string out;
  std::string format = "csv";
  bool idle = false;
  bool no_entanglers = false;
};

void add_common(CLI::App& cmd, Flags& f, bool with_topology) {
  if (with_topology) {
    cmd.add_option("--topology", f.topology, "Circuit topology")
        ->check(CLI::IsMember(
            {"line", "ring", "ring-stride", "all-to-all", "block-ring", "suite"}));
    cmd.add_option("--stride", f.stride, "Second-column stride for ring-stride");
    cmd.add_flag("--idle", f.idle, "Use the empty circuit");
    cmd.add_flag("--no-entanglers", f.no_entanglers,
                 "Keep only the rotation columns");
  }
  cmd.add_option("--qubits", f.qubits, "Number of qubits n");
  cmd.add_option("--block-size", f.block_size,
                 "Block size m for block-ring (default: divisor nearest sqrt(n))");
  cmd.add_option("--layers", f.layers, "Layer count(s), comma separated")
      ->delimiter(',');
  cmd.add_option("--entangler", f.entangler, "Two-qubit gate")
      ->check(CLI::IsMember({"crx", "crz"}));
  cmd.add_option("--samples", f.samples, "Draws per experiment");
  cmd.add_option("--bins", f.bins, "Fidelity histogram bins");
  cmd.add_option("--seed", f.seed, "Sampling seed");
  cmd.add_option("--repeats", f.repeats, "Independent experiment repetitions");
  cmd.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  cmd.add_option("--out", f.out, "Output file (default: stdout)");
  cmd.add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentSpec to_spec(Command command, const Flags& f) {
  ExperimentSpec spec;
  spec.command = command;
  if (command == Command::Suite || command == Command::SweepM) {
    spec.topology = TopologyTag::BlockRing;
    spec.layers = f.layers.empty()
                      ? (command == Command::Suite
                             ? std::vector<std::size_t>{1, 2}
                             : std::vector<std::size_t>{1})
                      : f.layers;
  } else {
    if (f.topology == "suite") {
      throw std::invalid_argument("--topology suite is only valid for 'suite'");
    }
    spec.topology = topology_from_string(f.topology);
    spec.layers = f.layers.empty() ? std::vector<std::size_t>{1} : f.layers;
  }
  spec.qubits = f.qubits;
  if (f.block_size != 0) spec.block_size = f.block_size;
  spec.stride = f.stride;
  spec.entangler = entangler_from_string(f.entangler);
  spec.idle = f.idle;
  spec.no_entanglers = f.no_entanglers;
  spec.sampling.samples = f.samples;
  spec.sampling.bins = f.bins;
  spec.sampling.seed = f.seed;
  spec.sampling.repeats = f.repeats;
  spec.sampling.threads = f.threads;
  spec.format = format_from_string(f.format);
  return spec;
}

void check_output_path(const std::string& out) {
  if (out.empty()) return;
  const fs::path parent = fs::absolute(out).parent_path();
  if (!fs::is_directory(parent)) {
    throw std::invalid_argument("output directory does not exist: " +
                                parent.string());
  }
}

// Writes via a sibling temporary file so a failed run never leaves a
// partial report behind.
void emit(const std::string& out, const std::string& contents) {
  if (out.empty()) {
    std::cout << contents;
    return;
  }
  const fs::path tmp = out + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + tmp.string());
    file << contents;
    if (!file.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, out);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameterized quantum circuit topologies: build, cost, and "
               "descriptor benchmarks"};
  app.require_subcommand(1);

  Flags build_f, expr_f, ent_f, suite_f, sweep_f;
  auto* build = app.add_subcommand("build", "Export a circuit as OpenQASM 2.0");
  add_common(*build, build_f, true);
  auto* expr = app.add_subcommand("expr", "Expressibility (KL to Haar, nats)");
  add_common(*expr, expr_f, true);
  auto* ent = app.add_subcommand("ent", "Entangling capability (mean MW Q)");
  add_common(*ent, ent_f, true);
  auto* suite = app.add_subcommand("suite", "Ten-circuit comparison suite");
  add_common(*suite, suite_f, false);
  suite->add_option("--topology", suite_f.topology)
      ->check(CLI::IsMember({"suite"}));
  auto* sweep = app.add_subcommand("sweep-m", "Block-ring sweep over block sizes");
  add_common(*sweep, sweep_f, false);

  std::string rerun_file, rerun_out;
  std::size_t rerun_threads = 0;
  auto* rerun = app.add_subcommand(
      "rerun", "Re-run the experiment embedded in a previous output file");
  rerun->add_option("file", rerun_file, "Output file to reproduce")->required();
  rerun->add_option("--out", rerun_out, "Output file (default: stdout)");
  rerun->add_option("--threads", rerun_threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentSpec spec;
    std::string out;
    if (*rerun) {
      spec = extract_embedded_spec(read_file(rerun_file));
      spec.sampling.threads = rerun_threads;
      out = rerun_out;
    } else {
      const std::pair<CLI::App*, std::pair<Command, Flags*>> table[] = {
          {build, {Command::Build, &build_f}},
          {expr, {Command::Expr, &expr_f}},
          {ent, {Command::Ent, &ent_f}},
          {suite, {Command::Suite, &suite_f}},
          {sweep, {Command::SweepM, &sweep_f}},
      };
      for (const auto& [sub, entry] : table) {
        if (*sub) {
          spec = to_spec(entry.first, *entry.second);
          out = entry.second->out;
        }
      }
    }
    validate_spec(spec);
    check_output_path(out);
    emit(out, run_command(spec));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
