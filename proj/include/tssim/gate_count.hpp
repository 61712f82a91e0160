#pragma once

// Formula-level CNOT tallies. A uniformly controlled network with c controls
// costs 2^c CNOTs; every added control on a whole circuit doubles its cost.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tssim/decompose.hpp"
#include "tssim/pauli.hpp"

namespace tssim {

struct GateCount {
  std::uint64_t cnots = 0;
  std::uint64_t singles = 0;
  std::uint64_t ancilla_qubits = 0;
  std::vector<std::pair<std::string, std::uint64_t>> parts;  // named sub-tallies
  std::vector<std::string> notes;
};

/// w * 2^c.
std::uint64_t count_multiplexor(std::uint64_t control_qubits, std::uint64_t networks);

/// Prepare/select path for U_H: select = n * 2^ceil(log2 L), prepare =
/// 2^ceil(log2 L). With extra_controls > 0 the tally covers the two
/// controlled U_H copies of U(t), each costing 2^extra_controls * U_H.
GateCount count_select_path(const PauliSum& s, std::uint64_t extra_controls);

/// Dense N x N matrix: 3N^2/2 CNOTs and single gates, 2 log2 N - 1 controls.
GateCount count_dense(std::uint64_t n);

/// Divide-and-conquer U(t): gates = branches * 2^(n-1); controls =
/// ceil(log2 branches) + (n - 1) + 1, plus one with pea_control;
/// cnots = 2 * 2^controls.
GateCount count_dc(const Decomposition& d, bool pea_control);

}  // namespace tssim
