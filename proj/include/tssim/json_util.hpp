#pragma once

// Internal JSON helpers shared by the file formats. Not part of the C API.

#include <string>

#include <json.hpp>

#include "tssim/linalg.hpp"

namespace tssim {

/// Object keys come out sorted (nlohmann::json stores objects in std::map) and
/// doubles use the shortest round-trip form, so equal values give equal bytes.
inline std::string dump_canonical(const nlohmann::json& j) { return j.dump(2); }

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (auto z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

}  // namespace tssim
