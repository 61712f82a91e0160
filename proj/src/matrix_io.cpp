#include "tssim/matrix_io.hpp"

#include <cmath>

#include <json.hpp>

#include "tssim/error.hpp"
#include "tssim/json_util.hpp"

namespace tssim {

using nlohmann::json;

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim")) throw ParseError("matrix JSON needs a \"dim\" field");
  const auto& dim_field = doc["dim"];
  if (!dim_field.is_number_integer() || dim_field.get<long long>() <= 0) {
    throw ParseError("\"dim\" must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(dim_field.get<long long>());
  if (dim > max_dimension()) throw SizeError("matrix dimension exceeds the configured maximum");

  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  auto number = [](const json& v) {
    if (!v.is_number()) throw ParseError("matrix entries must be numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError("matrix entries must be finite");
    return x;
  };
  if (doc.contains("entries")) {
    const auto& arr = doc["entries"];
    if (!arr.is_array() || arr.size() != dim * dim) {
      throw ParseError("\"entries\" must hold dim*dim = " + std::to_string(dim * dim) + " pairs");
    }
    for (const auto& pair : arr) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("each entry must be a [re, im] pair");
      entries.emplace_back(number(pair[0]), number(pair[1]));
    }
  } else if (doc.contains("real")) {
    const auto& arr = doc["real"];
    if (!arr.is_array() || arr.size() != dim * dim) {
      throw ParseError("\"real\" must hold dim*dim = " + std::to_string(dim * dim) + " numbers");
    }
    for (const auto& x : arr) entries.emplace_back(number(x), 0.0);
  } else {
    throw ParseError("matrix JSON needs \"entries\" or \"real\"");
  }
  return ComplexMatrix(dim, dim, std::move(entries));
}

std::string format_matrix_json(const ComplexMatrix& m) {
  if (!m.is_square()) throw ContractError("only square matrices have a file format");
  return dump_canonical(matrix_to_json(m));
}

}  // namespace tssim
