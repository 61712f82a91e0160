#include "tssim/gate_count.hpp"

#include <bit>

#include "tssim/error.hpp"

namespace tssim {

namespace {

std::uint64_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(x - 1));
}

std::uint64_t pow2(std::uint64_t e) {
  if (e >= 63) throw ContractError("gate count overflows 64 bits");
  return std::uint64_t{1} << e;
}

}  // namespace

std::uint64_t count_multiplexor(std::uint64_t control_qubits, std::uint64_t networks) {
  return networks * pow2(control_qubits);
}

GateCount count_select_path(const PauliSum& s, std::uint64_t extra_controls) {
  GateCount g;
  const std::uint64_t terms = s.size();
  const std::uint64_t sel_controls = ceil_log2(terms);
  const std::uint64_t select = terms > 1 ? count_multiplexor(sel_controls, s.num_qubits()) : 0;
  const std::uint64_t prepare = count_multiplexor(sel_controls, 1);
  const std::uint64_t uh = select + prepare;
  g.parts = {{"select", select}, {"prepare", prepare}, {"uh", uh}};
  if (terms <= 1) {
    g.notes.push_back("single term: select collapses to a fixed Pauli word, prepare is one gate");
  }
  g.ancilla_qubits = sel_controls + extra_controls;
  if (extra_controls == 0) {
    g.cnots = uh;
  } else {
    g.cnots = 2 * pow2(extra_controls) * uh;
    g.parts.emplace_back("per_copy", pow2(extra_controls) * uh);
    g.notes.push_back("two controlled U_H copies; each added control doubles the cost");
  }
  g.singles = g.cnots;
  g.notes.push_back("one rotation per CNOT slot in each multiplexed network");
  return g;
}

GateCount count_dense(std::uint64_t n) {
  if (n < 2 || !std::has_single_bit(n)) throw ContractError("count_dense needs N = 2^k with k >= 1");
  GateCount g;
  const std::uint64_t half_sq = n * n / 2;
  g.cnots = 3 * half_sq;
  g.singles = 3 * half_sq;
  g.ancilla_qubits = 2 * ceil_log2(n) - 1;
  g.parts = {{"leaf_gates", half_sq}, {"networks", 3}};
  g.notes.push_back("three rotation networks of N^2/2 gates with 2 log2 N - 1 controls");
  return g;
}

GateCount count_dc(const Decomposition& d, bool pea_control) {
  GateCount g;
  const std::uint64_t branches = d.terms.size();
  if (branches == 0) {
    g.notes.push_back("fully pruned: zero matrix, nothing to implement");
    return g;
  }
  const std::uint64_t leaves = pow2(d.n - 1);
  const std::uint64_t gates = branches * leaves;
  const std::uint64_t branch_qubits = ceil_log2(branches);
  const std::uint64_t uh_controls = branch_qubits + (d.n - 1);
  const std::uint64_t controls = uh_controls + 1 + (pea_control ? 1 : 0);
  g.cnots = 2 * pow2(controls);
  g.singles = 3 * gates;
  g.ancilla_qubits = branch_qubits + 1 + (pea_control ? 1 : 0);
  g.parts = {{"gates", gates},
             {"branches", branches},
             {"groups", d.groups.size()},
             {"uh_controls", uh_controls},
             {"controls", controls}};
  if (d.groups.size() == 1) g.notes.push_back("fully pruned: only one group survives");
  g.notes.push_back("2 copies of the multiplexed V network, 2^controls CNOTs each");
  if (pea_control) g.notes.push_back("PEA control qubit doubles the count");
  return g;
}

}  // namespace tssim
