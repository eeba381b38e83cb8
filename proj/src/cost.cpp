#include "pqctopo/cost.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pqctopo {

std::string_view to_string(CostRow row) {
  switch (row) {
    case CostRow::Circuit5: return "circuit5";
    case CostRow::Circuit7: return "circuit7";
    case CostRow::Circuit9: return "circuit9";
  }
  return "?";
}

CostReport analytic_cost(CostRow row, std::size_t n,
                         std::optional<std::size_t> m, std::size_t layers) {
  if (n < 2) throw std::invalid_argument("need two qubits");
  if (layers < 1) throw std::invalid_argument("zero layers");
  CostReport r;
  r.source = CostSource::Analytic;
  switch (row) {
    case CostRow::Circuit5: {
      const std::size_t k = n / std::gcd(n, std::size_t{3});
      r.params = 3 * n + k;
      r.two_qubit_gates = n + k;
      r.depth = n + 2 + k;
      break;
    }
    case CostRow::Circuit7:
      r.params = n * n + 3 * n;
      r.two_qubit_gates = n * n - n;
      r.depth = n * n - n + 4;
      break;
    case CostRow::Circuit9: {
      if (!m) throw std::invalid_argument("circuit9 cost needs a block size");
      if (*m == 0 || *m > n || n % *m != 0) {
        throw std::invalid_argument("m must divide n");
      }
      const std::size_t bs = *m;
      r.params = (bs + 4) * n;
      r.two_qubit_gates = bs * n;
      r.depth = n / bs + bs * bs - bs + 4;
      break;
    }
  }
  r.params *= layers;
  r.two_qubit_gates *= layers;
  r.depth *= layers;
  return r;
}

std::size_t asap_depth(const CircuitTemplate& tmpl) {
  std::vector<std::size_t> free_at(tmpl.n, 0);
  std::size_t makespan = 0;
  for (const Gate& g : tmpl.gates) {
    std::size_t finish = free_at.at(g.target) + 1;
    if (g.control) finish = std::max(finish, free_at.at(*g.control) + 1);
    free_at[g.target] = finish;
    if (g.control) free_at[*g.control] = finish;
    makespan = std::max(makespan, finish);
  }
  return makespan;
}

CostReport measured_cost(const CircuitTemplate& tmpl) {
  return {tmpl.param_count, tmpl.two_qubit_gate_count(), asap_depth(tmpl),
          CostSource::Measured};
}

}  // namespace pqctopo
