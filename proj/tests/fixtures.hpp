#pragma once

#include <string>

namespace fixtures {

// Lowest eigenvalue of the 16x16 H2 matrix. Produced by the power-iteration
// oracle in oracles.hpp; test_pauli re-derives it on every run.
inline constexpr double kH2GroundEnergy = -1.8510456784448643;

// Sum of |coefficients| of the 15 H2 terms.
inline constexpr double kH2CoefficientNorm = 2.697693;

inline std::string data_path(const std::string& name) { return std::string(TSSIM_TEST_DATA) + "/" + name; }

}  // namespace fixtures
