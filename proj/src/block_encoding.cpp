#include "tssim/block_encoding.hpp"

#include <cmath>
#include <string>

#include "tssim/error.hpp"

namespace tssim {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

BlockEncoding::BlockEncoding(ComplexMatrix matrix, std::size_t system_dim, std::size_t ancilla_dim,
                             double scale, const ComplexMatrix& target, double tolerance)
    : matrix_(std::move(matrix)), system_dim_(system_dim), ancilla_dim_(ancilla_dim), scale_(scale) {
  if (system_dim_ == 0 || ancilla_dim_ == 0 || matrix_.rows() != system_dim_ * ancilla_dim_ ||
      !matrix_.is_square()) {
    throw ContractError("block encoding dimensions do not match");
  }
  if (!(scale_ > 0.0)) throw ContractError("block encoding scale must be positive");
  if (target.rows() != system_dim_ || target.cols() != system_dim_) {
    throw ContractError("encoded target has the wrong dimension");
  }
  if (!is_unitary(matrix_, 1e-9)) throw NumericError("block encoding matrix is not unitary");
  ComplexMatrix scaled = block();
  scaled *= scale_;
  block_error_ = max_abs_diff(scaled, target);
  if (!(block_error_ <= tolerance)) {
    throw NumericError("block encoding misses its target by " + std::to_string(block_error_));
  }
}

ComplexMatrix BlockEncoding::block() const { return matrix_.block(0, 0, system_dim_, system_dim_); }

ComplexMatrix kron_identity_times(const ComplexMatrix& small, std::size_t inner, const ComplexMatrix& x) {
  const std::size_t k = small.rows();
  if (small.cols() * inner != x.rows()) throw ContractError("shape mismatch in (S (x) I) * X");
  ComplexMatrix out(k * inner, x.cols());
  const std::size_t n = x.cols();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < small.cols(); ++b) {
      const Complex s = small(a, b);
      if (s == Complex{}) continue;
      for (std::size_t y = 0; y < inner; ++y) {
        Complex* orow = &out(a * inner + y, 0);
        const Complex* xrow = &x(b * inner + y, 0);
        for (std::size_t j = 0; j < n; ++j) orow[j] += s * xrow[j];
      }
    }
  return out;
}

ComplexMatrix times_kron_identity(const ComplexMatrix& x, const ComplexMatrix& small, std::size_t inner) {
  const std::size_t k = small.cols();
  if (small.rows() * inner != x.cols()) throw ContractError("shape mismatch in X * (S (x) I)");
  ComplexMatrix out(x.rows(), k * inner);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const Complex* xrow = &x(r, 0);
    Complex* orow = &out(r, 0);
    for (std::size_t a = 0; a < small.rows(); ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const Complex s = small(a, b);
        if (s == Complex{}) continue;
        for (std::size_t y = 0; y < inner; ++y) orow[b * inner + y] += xrow[a * inner + y] * s;
      }
  }
  return out;
}

BlockEncoding dilation_sqrt(const ComplexMatrix& h) {
  if (!h.is_square() || h.empty()) throw ContractError("dilation needs a square matrix");
  if (!is_hermitian(h, 1e-10)) throw DomainError("dilation needs a Hermitian matrix");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  const double norm = spectral_norm_hermitian(sym);
  if (norm > 1.0 + 1e-10) {
    throw DomainError("dilation needs spectral norm <= 1, got " + std::to_string(norm));
  }
  const std::size_t n = h.rows();
  const ComplexMatrix root = sqrtm_psd(ComplexMatrix::identity(n) - sym * sym);
  ComplexMatrix u(2 * n, 2 * n);
  u.set_block(0, 0, sym);
  u.set_block(0, n, -1.0 * root);
  u.set_block(n, 0, root);
  u.set_block(n, n, sym);
  return BlockEncoding(std::move(u), n, 2, 1.0, h, 1e-10);
}

ComplexMatrix prepare_oracle(std::span<const double> coeffs) {
  if (coeffs.empty()) throw ContractError("prepare oracle needs at least one coefficient");
  double total = 0.0;
  for (double c : coeffs) {
    if (c < 0.0 || !std::isfinite(c)) {
      throw ContractError("prepare oracle coefficients must be finite and non-negative");
    }
    total += c;
  }
  if (total == 0.0) throw ContractError("prepare oracle coefficients are all zero");
  const std::size_t dim = next_pow2(coeffs.size());
  std::vector<double> col(dim, 0.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) col[i] = std::sqrt(coeffs[i] / total);

  // Reflection across the bisector of e0 and col maps e0 onto col.
  std::vector<double> v(col.size());
  for (std::size_t i = 0; i < dim; ++i) v[i] = (i == 0 ? 1.0 : 0.0) - col[i];
  double vv = 0.0;
  for (double x : v) vv += x * x;
  ComplexMatrix h = ComplexMatrix::identity(dim);
  if (vv < 1e-30) return h;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) h(i, j) -= 2.0 * v[i] * v[j] / vv;
  return h;
}

ComplexMatrix select_oracle(const PauliSum& s) {
  if (s.empty()) throw ContractError("select oracle needs a non-empty Pauli sum");
  const std::size_t slots = next_pow2(s.size());
  const std::size_t n = std::size_t{1} << s.num_qubits();
  ComplexMatrix out(slots * n, slots * n);
  for (std::size_t l = 0; l < slots; ++l) {
    if (l < s.size()) {
      const auto& term = s.terms()[l];
      ComplexMatrix blk = word_matrix(term.word);
      if (term.coefficient < 0.0) blk *= -1.0;
      out.set_block(l * n, l * n, blk);
    } else {
      out.set_block(l * n, l * n, ComplexMatrix::identity(n));
    }
  }
  return out;
}

BlockEncoding uh_from_sum(const PauliSum& s) {
  if (s.empty()) throw ContractError("U_H needs a non-empty Pauli sum");
  std::vector<double> weights;
  weights.reserve(s.size());
  for (const auto& t : s.terms()) weights.push_back(std::abs(t.coefficient));
  const ComplexMatrix prep = prepare_oracle(weights);
  const std::size_t n = std::size_t{1} << s.num_qubits();
  const ComplexMatrix sel = select_oracle(s);
  ComplexMatrix u = kron_identity_times(prep.adjoint(), n, times_kron_identity(sel, prep, n));
  return BlockEncoding(std::move(u), n, prep.rows(), s.coefficient_one_norm(), sum_matrix(s), 1e-10);
}

double b_norm_squared(double t) { return t + 1.0 + t * t / 2.0; }

ComplexMatrix b_gate(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ContractError("b_gate needs t >= 0");
  const double st = std::sqrt(t);
  const double h = t / std::sqrt(2.0);
  ComplexMatrix b{{st, 1.0, h, 0.0},   //
                  {1.0, -st, 0.0, h},  //
                  {h, 0.0, -st, -1.0},
                  {0.0, -h, 1.0, -st}};
  b *= 1.0 / std::sqrt(b_norm_squared(t));
  return b;
}

ComplexMatrix pi_permutation(std::size_t ancilla_dim, std::size_t system_dim) {
  if (ancilla_dim == 0 || system_dim == 0) throw ContractError("pi_permutation needs positive dimensions");
  const std::size_t half = ancilla_dim * system_dim;
  ComplexMatrix p(2 * half, 2 * half);
  for (std::size_t i = 0; i < 2 * half; ++i) {
    std::size_t j = i;
    if (i >= system_dim && i < half) {
      j = i + half - system_dim;
    } else if (i >= half && i < 2 * half - system_dim) {
      j = i - half + system_dim;
    }
    p(i, j) = 1.0;
  }
  return p;
}

TaylorEncoding taylor_encoding(const BlockEncoding& uh, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("taylor_encoding needs t >= 0");
  const double gate_t = t * uh.scale();
  if (gate_t > 1.0 + 1e-12) {
    throw DomainError("taylor_encoding needs t * scale <= 1, got " + std::to_string(gate_t));
  }
  const std::size_t n = uh.system_dim();
  const std::size_t d = uh.total_dim();
  const ComplexMatrix& u = uh.matrix();

  // Branch q0 = 0: the first U_H fires on q1 = 0 only.
  ComplexMatrix lower(2 * d, 2 * d);
  lower.set_block(0, 0, u);
  lower.set_block(d, d, ComplexMatrix::identity(d));

  // Branch q0 = 1: (I (x) U_H) * Pi * (U_H (+) I) leaves H^2 in the top-left.
  const ComplexMatrix upper =
      kron(ComplexMatrix::identity(2), u) * (pi_permutation(uh.ancilla_dim(), n) * lower);

  // Branch phases (1, i, -i, 1) on (q0 q1) = 00, 01, 10, 11 turn the real
  // weights t, 1, t^2/2 into t H + i I - i t^2 H^2 / 2. The 11 branch has
  // zero weight in B and stays inert.
  const Complex phase[4] = {1.0, kI, -kI, 1.0};
  ComplexMatrix v(4 * d, 4 * d);
  for (std::size_t r = 0; r < 2 * d; ++r)
    for (std::size_t c = 0; c < 2 * d; ++c) {
      v(r, c) = phase[r / d] * lower(r, c);
      v(2 * d + r, 2 * d + c) = phase[2 + r / d] * upper(r, c);
    }

  const ComplexMatrix b = b_gate(gate_t);
  ComplexMatrix full = kron_identity_times(b.adjoint(), d, times_kron_identity(v, b, d));

  const ComplexMatrix h = uh.scale() * uh.block();
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  ComplexMatrix target = t * h + kI * (eye - (t * t / 2.0) * (h * h));
  constexpr double kTol = 1e-9;
  BlockEncoding enc(std::move(full), n, 4 * uh.ancilla_dim(), b_norm_squared(gate_t), target, kTol);
  return TaylorEncoding{std::move(enc), EncodedTarget{std::move(target), kTol}, gate_t};
}

PostSelected apply_postselect(const BlockEncoding& enc, std::span<const Complex> psi) {
  const std::size_t n = enc.system_dim();
  if (psi.size() != n) throw ContractError("state dimension does not match the encoded system");
  if (std::abs(norm(psi) - 1.0) > 1e-10) throw ContractError("post-selection input must be normalized");
  const ComplexMatrix& m = enc.matrix();
  StateVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * psi[j];
    out[i] = acc;
  }
  const double nrm = norm(out);
  const double prob = nrm * nrm;
  if (prob < 1e-14) throw NumericError("post-selection success probability below 1e-14");
  for (auto& z : out) z /= nrm;
  return {std::move(out), prob};
}

PostSelected power_postselect(const BlockEncoding& enc, std::size_t k, std::span<const Complex> psi) {
  if (psi.size() != enc.system_dim()) throw ContractError("state dimension does not match the encoded system");
  PostSelected acc{StateVector(psi.begin(), psi.end()), 1.0};
  for (std::size_t step = 0; step < k; ++step) {
    PostSelected next = apply_postselect(enc, acc.state);
    acc.state = std::move(next.state);
    acc.success_prob *= next.success_prob;
  }
  return acc;
}

}  // namespace tssim
