#include "tssim/tssim.h"

#include <cstring>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tssim/block_encoding.hpp"
#include "tssim/decompose.hpp"
#include "tssim/error.hpp"
#include "tssim/gate_count.hpp"
#include "tssim/json_util.hpp"
#include "tssim/matrix_io.hpp"
#include "tssim/phase_estimation.hpp"

struct tssim_pauli_sum {
  tssim::PauliSum sum;
};

struct tssim_matrix {
  tssim::ComplexMatrix m;
};

struct tssim_decomposition {
  tssim::Decomposition d;
};

namespace {

using nlohmann::json;
using namespace tssim;

thread_local std::string g_last_error;

tssim_status fail(tssim_status code, std::string_view msg) {
  g_last_error.assign(msg);
  return code;
}

template <class F>
tssim_status guarded(F&& f) {
  try {
    f();
    return TSSIM_OK;
  } catch (const ParseError& e) {
    return fail(TSSIM_ERR_PARSE, e.what());
  } catch (const ContractError& e) {
    return fail(TSSIM_ERR_CONTRACT, e.what());
  } catch (const DomainError& e) {
    return fail(TSSIM_ERR_CONTRACT, e.what());
  } catch (const NumericError& e) {
    return fail(TSSIM_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TSSIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TSSIM_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(json doc, char** out) { *out = dup_string(dump_canonical(doc)); }

template <class... P>
void require(const P*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw ContractError("null argument");
}

json encoding_json(const BlockEncoding& e, std::string_view method) {
  return {{"schema", "1"},
          {"kind", "encoding"},
          {"method", method},
          {"system_dim", e.system_dim()},
          {"ancilla_dim", e.ancilla_dim()},
          {"total_dim", e.total_dim()},
          {"scale", e.scale()},
          {"block_error", e.block_error()},
          {"unitary", is_unitary(e.matrix(), 1e-9)}};
}

json gates_json(const GateCount& g, std::string_view method) {
  json parts = json::object();
  for (const auto& [k, v] : g.parts) parts[k] = v;
  return {{"schema", "1"},       {"kind", "gates"},        {"method", method},
          {"cnots", g.cnots},    {"singles", g.singles},   {"ancilla_qubits", g.ancilla_qubits},
          {"parts", parts},      {"notes", g.notes}};
}

EnergyOptions to_options(const tssim_estimate_options& o) {
  EnergyOptions e;
  switch (o.method) {
    case TSSIM_METHOD_EXACT: e.method = EnergyMethod::kExact; break;
    case TSSIM_METHOD_TAYLOR: e.method = EnergyMethod::kTaylor; break;
    case TSSIM_METHOD_DC: e.method = EnergyMethod::kDc; break;
    default: throw ContractError("unknown estimate method");
  }
  e.t = o.t;
  e.bits = o.bits;
  e.algorithm = o.iterative ? PhaseAlgorithm::kIpea : PhaseAlgorithm::kPea;
  e.correct = o.correct != 0;
  e.ipea.sample = o.sample != 0;
  e.ipea.seed = o.seed;
  e.ipea.trials = o.trials;
  e.prune_tol = o.prune_tol;
  return e;
}

json estimate_json(const EnergyEstimate& r, const EnergyOptions& o) {
  return {{"schema", "1"},
          {"kind", "estimate"},
          {"method", to_string(o.method)},
          {"algorithm", to_string(o.algorithm)},
          {"t", o.t},
          {"bits", r.phase.bits.size()},
          {"phase_bits", r.phase.bits},
          {"phase", r.phase.phase},
          {"phase_method", to_string(r.phase.method)},
          {"eigenvalue", r.phase.eigenvalue},
          {"scale", r.scale},
          {"energy", r.energy},
          {"reference", r.reference},
          {"error", std::abs(r.energy - r.reference)},
          {"success_prob", r.phase.success_prob},
          {"ties", r.phase.ties},
          {"corrected", o.method == EnergyMethod::kTaylor && o.correct},
          {"block_error", r.block_error}};
}

// Hermitian input normalized by max(inf_norm, one_norm).
ComplexMatrix normalized_hermitian(const ComplexMatrix& m, double* bound) {
  if (!is_hermitian(m, 1e-10)) throw DomainError("encoding needs a Hermitian matrix");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  *bound = std::max(inf_norm(h), one_norm(h));
  if (*bound == 0.0) throw DomainError("zero matrix cannot be normalized");
  return (1.0 / *bound) * h;
}

}  // namespace

extern "C" {

const char* tssim_version(void) { return "1.0.0"; }

const char* tssim_last_error(void) { return g_last_error.c_str(); }

void tssim_string_free(char* s) { delete[] s; }

tssim_status tssim_set_max_dim(size_t dim) {
  return guarded([&] { set_max_dimension(dim); });
}

size_t tssim_max_dim(void) { return max_dimension(); }

tssim_status tssim_pauli_sum_parse(const char* text, tssim_pauli_sum** out) {
  return guarded([&] {
    require(text, out);
    *out = new tssim_pauli_sum{parse_pauli_text(text)};
  });
}

tssim_status tssim_pauli_sum_h2(tssim_pauli_sum** out) {
  return guarded([&] {
    require(out);
    *out = new tssim_pauli_sum{h2_hamiltonian()};
  });
}

void tssim_pauli_sum_free(tssim_pauli_sum* s) { delete s; }

size_t tssim_pauli_sum_num_qubits(const tssim_pauli_sum* s) { return s ? s->sum.num_qubits() : 0; }

size_t tssim_pauli_sum_num_terms(const tssim_pauli_sum* s) { return s ? s->sum.size() : 0; }

tssim_status tssim_pauli_sum_to_matrix(const tssim_pauli_sum* s, tssim_matrix** out) {
  return guarded([&] {
    require(s, out);
    *out = new tssim_matrix{sum_matrix(s->sum)};
  });
}

tssim_status tssim_matrix_parse_json(const char* text, tssim_matrix** out) {
  return guarded([&] {
    require(text, out);
    *out = new tssim_matrix{parse_matrix_json(text)};
  });
}

void tssim_matrix_free(tssim_matrix* m) { delete m; }

size_t tssim_matrix_dim(const tssim_matrix* m) { return m ? m->m.rows() : 0; }

tssim_status tssim_matrix_get(const tssim_matrix* m, size_t row, size_t col, double* re, double* im) {
  return guarded([&] {
    require(m, re, im);
    if (row >= m->m.rows() || col >= m->m.cols()) throw ContractError("matrix index out of range");
    *re = m->m(row, col).real();
    *im = m->m(row, col).imag();
  });
}

tssim_status tssim_matrix_to_json(const tssim_matrix* m, char** out) {
  return guarded([&] {
    require(m, out);
    *out = dup_string(format_matrix_json(m->m));
  });
}

tssim_status tssim_matrix_lowest_eigenvalue(const tssim_matrix* m, double* out) {
  return guarded([&] {
    require(m, out);
    *out = hermitian_eig(m->m).values.front();
  });
}

tssim_status tssim_decompose(const tssim_matrix* m, double prune_tol, tssim_decomposition** out) {
  return guarded([&] {
    require(m, out);
    if (!(prune_tol >= 0.0)) throw ContractError("prune tolerance must be >= 0");
    *out = new tssim_decomposition{build_decomposition(m->m, prune_tol)};
  });
}

void tssim_decomposition_free(tssim_decomposition* d) { delete d; }

size_t tssim_decomposition_num_terms(const tssim_decomposition* d) { return d ? d->d.terms.size() : 0; }

size_t tssim_decomposition_num_groups(const tssim_decomposition* d) { return d ? d->d.groups.size() : 0; }

tssim_status tssim_decomposition_to_json(const tssim_decomposition* d, char** out) {
  return guarded([&] {
    require(d, out);
    *out = dup_string(decomposition_to_json(d->d));
  });
}

tssim_status tssim_decomposition_from_json(const char* text, tssim_decomposition** out) {
  return guarded([&] {
    require(text, out);
    *out = new tssim_decomposition{decomposition_from_json(text)};
  });
}

tssim_status tssim_decomposition_reconstruct(const tssim_decomposition* d, tssim_matrix** out) {
  return guarded([&] {
    require(d, out);
    *out = new tssim_matrix{reconstruct(d->d)};
  });
}

tssim_status tssim_decomposition_residual(const tssim_decomposition* d, const tssim_matrix* m, double* out) {
  return guarded([&] {
    require(d, m, out);
    const ComplexMatrix r = reconstruct(d->d);
    if (r.rows() != m->m.rows() || r.cols() != m->m.cols()) {
      throw ContractError("decomposition and matrix dimensions differ");
    }
    *out = max_abs_diff(r, m->m);
  });
}

tssim_status tssim_encode_pauli(const tssim_pauli_sum* s, const char* method, double t, char** out) {
  return guarded([&] {
    require(s, method, out);
    const std::string_view name(method);
    const NormalizedSum ns = normalize_for_encoding(s->sum);
    json doc;
    if (name == "select") {
      doc = encoding_json(uh_from_sum(ns.sum), name);
    } else if (name == "taylor") {
      const TaylorEncoding te = taylor_encoding(uh_from_sum(ns.sum), t);
      doc = encoding_json(te.encoding, name);
      doc["gate_t"] = te.gate_t;
      doc["t"] = t;
    } else if (name == "exact") {
      doc = encoding_json(dilation_sqrt(t * sum_matrix(ns.sum)), name);
      doc["t"] = t;
    } else {
      throw ContractError("unknown Pauli encoding method '" + std::string(name) + "'");
    }
    doc["normalization"] = ns.scale;
    doc["terms"] = ns.sum.size();
    emit(std::move(doc), out);
  });
}

tssim_status tssim_encode_matrix(const tssim_matrix* m, const char* method, double t, char** out) {
  return guarded([&] {
    require(m, method, out);
    const std::string_view name(method);
    json doc;
    if (name == "dc") {
      const Decomposition d = build_decomposition(m->m);
      doc = encoding_json(assemble_uh(d), name);
      doc["branches"] = d.terms.size();
      doc["groups"] = d.groups;
      doc["normalization"] = d.scale;
    } else {
      double bound = 1.0;
      const ComplexMatrix h = normalized_hermitian(m->m, &bound);
      if (name == "exact") {
        doc = encoding_json(dilation_sqrt(t * h), name);
      } else if (name == "taylor") {
        const TaylorEncoding te = taylor_encoding(dilation_sqrt(h), t);
        doc = encoding_json(te.encoding, name);
        doc["gate_t"] = te.gate_t;
      } else {
        throw ContractError("unknown matrix encoding method '" + std::string(name) + "'");
      }
      doc["t"] = t;
      doc["normalization"] = bound;
    }
    emit(std::move(doc), out);
  });
}

tssim_estimate_options tssim_estimate_options_default(void) {
  tssim_estimate_options o;
  o.method = TSSIM_METHOD_EXACT;
  o.t = 1.0;
  o.bits = 16;
  o.iterative = 0;
  o.correct = 1;
  o.sample = 0;
  o.seed = 0;
  o.trials = 1;
  o.prune_tol = 1e-14;
  return o;
}

tssim_status tssim_estimate_pauli(const tssim_pauli_sum* s, const tssim_estimate_options* opts, char** out) {
  return guarded([&] {
    require(s, opts, out);
    const EnergyOptions o = to_options(*opts);
    emit(estimate_json(estimate_ground_energy(s->sum, o), o), out);
  });
}

tssim_status tssim_estimate_matrix(const tssim_matrix* m, const tssim_estimate_options* opts, char** out) {
  return guarded([&] {
    require(m, opts, out);
    const EnergyOptions o = to_options(*opts);
    emit(estimate_json(estimate_ground_energy(m->m, o), o), out);
  });
}

tssim_status tssim_gates_select(const tssim_pauli_sum* s, unsigned extra_controls, char** out) {
  return guarded([&] {
    require(s, out);
    json doc = gates_json(count_select_path(s->sum, extra_controls), "select");
    doc["extra_controls"] = extra_controls;
    emit(std::move(doc), out);
  });
}

tssim_status tssim_gates_dense(size_t n, char** out) {
  return guarded([&] {
    require(out);
    json doc = gates_json(count_dense(n), "dense");
    doc["dim"] = n;
    emit(std::move(doc), out);
  });
}

tssim_status tssim_gates_dc(const tssim_decomposition* d, int pea_control, char** out) {
  return guarded([&] {
    require(d, out);
    json doc = gates_json(count_dc(d->d, pea_control != 0), "dc");
    doc["pea_control"] = pea_control != 0;
    emit(std::move(doc), out);
  });
}

tssim_status tssim_histogram(size_t ensemble, size_t iterations, uint64_t seed, char** out) {
  return guarded([&] {
    require(out);
    const Histogram h = histogram_prob_diff(ensemble, iterations, seed);
    emit({{"schema", "1"},
          {"kind", "histogram"},
          {"bins", h.bins},
          {"below_0.1", h.below_01},
          {"above_0.9", h.above_09},
          {"samples", h.samples},
          {"iterations", h.iterations},
          {"seed", h.seed}},
         out);
  });
}

}  // extern "C"
