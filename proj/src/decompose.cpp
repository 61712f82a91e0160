#include "tssim/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <json.hpp>

#include "tssim/error.hpp"
#include "tssim/json_util.hpp"

namespace tssim {

using nlohmann::json;

namespace {

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) { return static_cast<std::size_t>(std::countr_zero(n)); }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

ComplexMatrix leaf_at(const ComplexMatrix& m, std::size_t row, std::size_t col) {
  return m.block(2 * row, 2 * col, 2, 2);
}

// A = W S V^dagger with S = diag(s0 >= s1 >= 0), then
// U+/- = W diag(s_k +/- i sqrt(1 - s_k^2)) V^dagger.
UnitarySplit singular_split(const ComplexMatrix& a) {
  const Spectrum gram = hermitian_eig(0.5 * (a.adjoint() * a + (a.adjoint() * a).adjoint()));
  // Largest singular direction first.
  StateVector v0 = gram.vector(1), v1 = gram.vector(0);
  StateVector av0 = a * std::span<const Complex>(v0);
  StateVector w0(2), w1(2);
  const double s0 = norm(av0);
  if (s0 < 1e-300) {
    w0 = {1.0, 0.0};
  } else {
    w0 = {av0[0] / s0, av0[1] / s0};
  }
  w1 = {-std::conj(w0[1]), std::conj(w0[0])};
  const StateVector av1 = a * std::span<const Complex>(v1);
  const Complex proj = inner(w1, av1);
  double s1 = std::abs(proj);
  if (s1 > 0.0) {
    const Complex ph = proj / s1;
    w1 = {w1[0] * ph, w1[1] * ph};
  }
  const double sig[2] = {std::min(s0, 1.0), std::min(s1, 1.0)};
  ComplexMatrix plus(2, 2), minus(2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const double c = std::sqrt(std::max(0.0, 1.0 - sig[k] * sig[k]));
    const StateVector& w = k == 0 ? w0 : w1;
    const StateVector& v = k == 0 ? v0 : v1;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t col = 0; col < 2; ++col) {
        const Complex outer = w[r] * std::conj(v[col]);
        plus(r, col) += Complex(sig[k], c) * outer;
        minus(r, col) += Complex(sig[k], -c) * outer;
      }
  }
  return {std::move(plus), std::move(minus), SplitMethod::kSingular};
}

}  // namespace

const char* to_string(SplitMethod m) {
  switch (m) {
    case SplitMethod::kNone: return "none";
    case SplitMethod::kSqrt: return "sqrt";
    case SplitMethod::kSingular: return "singular";
  }
  return "none";
}

std::array<ComplexMatrix, 4> split_blocks(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() < 2 || !is_pow2(m.rows())) {
    throw ContractError("split_blocks needs a square matrix with power-of-two dimension >= 2");
  }
  const std::size_t h = m.rows() / 2;
  return {m.block(0, 0, h, h), m.block(0, h, h, h), m.block(h, 0, h, h), m.block(h, h, h, h)};
}

std::string diagonal_word(std::size_t i, std::size_t k) {
  std::string w(k, '0');
  for (std::size_t q = 0; q < k; ++q) {
    if ((i >> (k - 1 - q)) & 1U) w[q] = '3';
  }
  return w;
}

std::string apply_rule_one(std::string_view word, std::size_t j) {
  const std::size_t k = word.size();
  std::string out(word);
  for (std::size_t q = 0; q < k; ++q) {
    if (!((j >> (k - 1 - q)) & 1U)) continue;
    switch (out[q]) {
      case '0': out[q] = '1'; break;
      case '1': out[q] = '0'; break;
      case '3': out[q] = '2'; break;
      case '2': out[q] = '3'; break;
      default: throw ContractError("leaf words use the digits 0-3");
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> locate_leaf(std::string_view word) {
  std::size_t row = 0, col = 0;
  for (char d : word) {
    if (d < '0' || d > '3') throw ContractError("leaf words use the digits 0-3");
    const int q = d - '0';
    row = 2 * row + static_cast<std::size_t>(q >> 1);
    col = 2 * col + static_cast<std::size_t>(q & 1);
  }
  return {row, col};
}

std::vector<BlockGroup> recursive_decompose(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() < 2 || !is_pow2(m.rows())) {
    throw ContractError("recursive_decompose needs a 2^n x 2^n matrix with n >= 1");
  }
  const std::size_t k = log2_exact(m.rows()) - 1;
  const std::size_t count = std::size_t{1} << k;
  std::vector<BlockGroup> groups;
  groups.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    BlockGroup g{j, {}};
    g.blocks.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::string word = apply_rule_one(diagonal_word(i, k), j);
      const auto [row, col] = locate_leaf(word);
      g.blocks.push_back(LeafBlock{std::move(word), row, col, leaf_at(m, row, col)});
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

double spectral_norm_2x2(const ComplexMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw ContractError("expected a 2x2 matrix");
  // sigma_max^2 = (f + sqrt(f^2 - 4|det|^2)) / 2 with f = ||A||_F^2.
  double f = 0.0;
  for (auto z : a.entries()) f += std::norm(z);
  const double det = std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
  const double disc = std::max(0.0, f * f - 4.0 * det * det);
  return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

ComplexMatrix sqrtm_2x2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ContractError("expected a 2x2 matrix");
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex s = std::sqrt(det);
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex t = std::sqrt(tr + 2.0 * s);
  if (std::abs(t) < 1e-300) {
    if (max_abs(m) == 0.0) return ComplexMatrix(2, 2);
    throw NumericError("2x2 matrix has no square root");
  }
  ComplexMatrix r = m + s * ComplexMatrix::identity(2);
  r *= 1.0 / t;
  return r;
}

UnitarySplit unitary_split(const ComplexMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw ContractError("unitary_split takes a 2x2 matrix");
  const double nrm = spectral_norm_2x2(a);
  if (nrm > 1.0 + 1e-12) {
    throw DomainError("unitary_split needs spectral norm <= 1, got " + std::to_string(nrm));
  }
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  try {
    ComplexMatrix root = is_hermitian(a, 1e-14) ? sqrtm_psd(eye - a * a) : sqrtm_2x2(eye - a * a);
    ComplexMatrix plus = a + kI * root;
    ComplexMatrix minus = a - kI * root;
    if (is_unitary(plus, 1e-10) && is_unitary(minus, 1e-10)) {
      return {std::move(plus), std::move(minus), SplitMethod::kSqrt};
    }
  } catch (const NumericError&) {
  } catch (const DomainError&) {
  }
  UnitarySplit split = singular_split(a);
  if (!is_unitary(split.plus, 1e-10) || !is_unitary(split.minus, 1e-10)) {
    throw NumericError("unitary_split could not produce unitary factors");
  }
  return split;
}

double Decomposition::beta_sum() const noexcept {
  double s = 0.0;
  for (const auto& t : terms) s += t.beta;
  return s;
}

Decomposition build_decomposition(const ComplexMatrix& m, double prune_tol) {
  const auto groups = recursive_decompose(m);
  Decomposition d;
  d.n = log2_exact(m.rows());
  const double norm_bound = std::max(inf_norm(m), one_norm(m));
  d.scale = norm_bound > 1.0 ? norm_bound : 1.0;

  for (const auto& g : groups) {
    double biggest = 0.0;
    for (const auto& leaf : g.blocks) biggest = std::max(biggest, max_abs(leaf.entries));
    if (biggest < prune_tol) continue;
    d.groups.push_back(g.j);

    std::vector<ComplexMatrix> scaled;
    scaled.reserve(g.blocks.size());
    bool all_unitary = true;
    for (const auto& leaf : g.blocks) {
      scaled.push_back((1.0 / d.scale) * leaf.entries);
      all_unitary = all_unitary && is_unitary(scaled.back(), 1e-12);
    }
    if (all_unitary) {
      d.terms.push_back(DecompositionTerm{g.j, '=', 1.0, std::move(scaled), SplitMethod::kNone});
      continue;
    }
    DecompositionTerm plus{g.j, '+', 0.5, {}, SplitMethod::kSqrt};
    DecompositionTerm minus{g.j, '-', 0.5, {}, SplitMethod::kSqrt};
    for (const auto& leaf : scaled) {
      UnitarySplit s = unitary_split(leaf);
      if (s.method == SplitMethod::kSingular) plus.method = minus.method = SplitMethod::kSingular;
      plus.v_blocks.push_back(std::move(s.plus));
      minus.v_blocks.push_back(std::move(s.minus));
    }
    d.terms.push_back(std::move(plus));
    d.terms.push_back(std::move(minus));
  }
  return d;
}

ComplexMatrix x_permutation(std::size_t j, std::size_t k) {
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix p = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < k; ++i) p = kron(p, ((j >> (k - 1 - i)) & 1U) ? x : id);
  return kron(p, id);
}

ComplexMatrix term_matrix(const DecompositionTerm& term, std::size_t n) {
  const std::size_t k = n - 1;
  if (term.v_blocks.size() != (std::size_t{1} << k)) throw ContractError("term has the wrong number of leaves");
  return block_diag(term.v_blocks) * x_permutation(term.j, k);
}

ComplexMatrix reconstruct(const Decomposition& d) {
  ComplexMatrix out(d.dim(), d.dim());
  for (const auto& t : d.terms) out += (d.scale * t.beta) * term_matrix(t, d.n);
  return out;
}

BlockEncoding assemble_uh(const Decomposition& d) {
  if (d.terms.empty()) throw DomainError("a fully pruned (zero) matrix has no block encoding");
  const std::size_t branches = next_pow2(d.terms.size());
  const std::size_t n = d.dim();
  std::vector<double> betas(branches, 0.0);
  std::vector<ComplexMatrix> selected;
  selected.reserve(branches);
  for (std::size_t b = 0; b < branches; ++b) {
    if (b < d.terms.size()) {
      betas[b] = d.terms[b].beta;
      selected.push_back(term_matrix(d.terms[b], d.n));
    } else {
      selected.push_back(ComplexMatrix::identity(n));
    }
  }
  const ComplexMatrix prep = prepare_oracle(betas);
  const ComplexMatrix vp = block_diag(selected);
  ComplexMatrix u = kron_identity_times(prep.adjoint(), n, times_kron_identity(vp, prep, n));
  return BlockEncoding(std::move(u), n, branches, d.scale * d.beta_sum(), reconstruct(d), 1e-9);
}

std::string decomposition_to_json(const Decomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) {
    json blocks = json::array();
    for (const auto& b : t.v_blocks) {
      json entries = json::array();
      for (auto z : b.entries()) entries.push_back({z.real(), z.imag()});
      blocks.push_back(std::move(entries));
    }
    terms.push_back({{"j", t.j},
                     {"x_mask", t.j},
                     {"branch", std::string(1, t.branch)},
                     {"beta", t.beta},
                     {"split", to_string(t.method)},
                     {"v_blocks", std::move(blocks)}});
  }
  json doc{{"schema", "1"},
           {"kind", "decomposition"},
           {"n", d.n},
           {"scale", d.scale},
           {"groups", d.groups},
           {"terms", std::move(terms)}};
  return dump_canonical(doc);
}

Decomposition decomposition_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (doc.at("kind").get<std::string>() != "decomposition") throw ParseError("not a decomposition document");
    Decomposition d;
    d.n = doc.at("n").get<std::size_t>();
    if (d.n == 0 || d.n > 30) throw ParseError("decomposition qubit count out of range");
    d.scale = doc.at("scale").get<double>();
    d.groups = doc.at("groups").get<std::vector<std::size_t>>();
    const std::size_t leaves = std::size_t{1} << (d.n - 1);
    for (const auto& t : doc.at("terms")) {
      DecompositionTerm term;
      term.j = t.at("j").get<std::size_t>();
      if (term.j >= leaves) throw ParseError("term index out of range");
      const auto branch = t.at("branch").get<std::string>();
      if (branch.size() != 1 || std::string_view("+-=").find(branch[0]) == std::string_view::npos) {
        throw ParseError("bad branch tag");
      }
      term.branch = branch[0];
      term.beta = t.at("beta").get<double>();
      const auto split = t.at("split").get<std::string>();
      term.method = split == "sqrt" ? SplitMethod::kSqrt
                    : split == "singular" ? SplitMethod::kSingular
                                          : SplitMethod::kNone;
      const auto& blocks = t.at("v_blocks");
      if (!blocks.is_array() || blocks.size() != leaves) throw ParseError("term has the wrong number of leaves");
      for (const auto& b : blocks) {
        if (!b.is_array() || b.size() != 4) throw ParseError("each leaf needs 4 [re, im] pairs");
        std::vector<Complex> entries;
        for (const auto& z : b) entries.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        term.v_blocks.emplace_back(2, 2, std::move(entries));
      }
      d.terms.push_back(std::move(term));
    }
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed decomposition: ") + e.what());
  }
}

}  // namespace tssim
