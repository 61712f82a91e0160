#pragma once

// Dense matrix file format:
//   {"dim": N, "entries": [[re, im], ...]}   N*N pairs, row-major
//   {"dim": N, "real": [x, ...]}            real-only shorthand

#include <string>
#include <string_view>

#include "tssim/linalg.hpp"

namespace tssim {

/// Throws ParseError on malformed JSON, a wrong entry count, or non-finite values.
ComplexMatrix parse_matrix_json(std::string_view text);

/// Writes the "entries" form with 17 significant digits.
std::string format_matrix_json(const ComplexMatrix& m);

}  // namespace tssim
