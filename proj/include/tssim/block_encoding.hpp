#pragma once

// Block encodings as explicit matrices: the exact square-root dilation, the
// prepare/select construction of U_H from a Pauli sum, and the truncated
// Taylor circuit U(t) = (B^dagger (x) I) V (B (x) I).
//
// Index layout: the ancilla index is always the most significant part of the
// full index, i.e. full = ancilla * N + system. For U(t) the ancilla index is
// itself (q0 * 2 + q1) * a + r, where q0 is the top control qubit of the
// circuit, q1 the second one, and r the ancilla of U_H.

#include <cstddef>
#include <span>
#include <vector>

#include "tssim/linalg.hpp"
#include "tssim/pauli.hpp"

namespace tssim {

/// A unitary whose top-left system_dim x system_dim block equals target/scale.
class BlockEncoding {
 public:
  /// Validates unitarity (1e-9) and max|scale * block - target| <= tolerance;
  /// throws NumericError otherwise.
  BlockEncoding(ComplexMatrix matrix, std::size_t system_dim, std::size_t ancilla_dim, double scale,
                const ComplexMatrix& target, double tolerance);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t system_dim() const noexcept { return system_dim_; }
  std::size_t ancilla_dim() const noexcept { return ancilla_dim_; }
  std::size_t total_dim() const noexcept { return matrix_.rows(); }
  double scale() const noexcept { return scale_; }
  /// max|scale * block - target| measured at construction.
  double block_error() const noexcept { return block_error_; }

  /// The post-selected block (ancilla |0> in and out).
  ComplexMatrix block() const;

 private:
  ComplexMatrix matrix_;
  std::size_t system_dim_;
  std::size_t ancilla_dim_;
  double scale_;
  double block_error_;
};

struct EncodedTarget {
  ComplexMatrix target;
  double tolerance;
};

/// [[h, -sqrt(I - h^2)], [sqrt(I - h^2), h]]. Needs Hermitian h with
/// spectral norm <= 1 (+1e-10); throws DomainError otherwise.
BlockEncoding dilation_sqrt(const ComplexMatrix& h);

/// Real orthogonal Householder reflection whose first column is
/// sqrt(coeffs)/||sqrt(coeffs)||, zero-padded to a power of two.
ComplexMatrix prepare_oracle(std::span<const double> coeffs);

/// blkdiag(sign_l * P_l ..., I ...) over 2^ceil(log2 L) slots.
ComplexMatrix select_oracle(const PauliSum& s);

/// U_H = (B_H^dagger (x) I) select(H) (B_H (x) I), scale = sum |alpha_l|.
BlockEncoding uh_from_sum(const PauliSum& s);

/// The 4x4 coefficient gate with first column [sqrt t, 1, t/sqrt 2, 0]/||b||.
ComplexMatrix b_gate(double t);
double b_norm_squared(double t);

/// blkdiag(I_N, X (x) I_{aN-N}, I_N) on dimension 2aN. a = 1 gives identity.
ComplexMatrix pi_permutation(std::size_t ancilla_dim, std::size_t system_dim);

struct TaylorEncoding {
  BlockEncoding encoding;
  EncodedTarget target;
  /// t * scale(uh): the value fed into the coefficient gate B.
  double gate_t;
};

/// Assembles U(t) around `uh`. With H = scale(uh) * block(uh), the
/// post-selected block equals (tH + i(I - t^2 H^2 / 2)) / ||b(t * scale)||^2.
/// Requires t >= 0 and t * scale(uh) <= 1.
TaylorEncoding taylor_encoding(const BlockEncoding& uh, double t);

struct PostSelected {
  StateVector state;    // normalized block * psi
  double success_prob;  // ||block * psi||^2
};

PostSelected apply_postselect(const BlockEncoding& enc, std::span<const Complex> psi);

/// k successive post-selected applications; probabilities multiply.
PostSelected power_postselect(const BlockEncoding& enc, std::size_t k, std::span<const Complex> psi);

/// (small (x) I_inner) * x without forming the Kronecker product.
ComplexMatrix kron_identity_times(const ComplexMatrix& small, std::size_t inner, const ComplexMatrix& x);
/// x * (small (x) I_inner) without forming the Kronecker product.
ComplexMatrix times_kron_identity(const ComplexMatrix& x, const ComplexMatrix& small, std::size_t inner);

}  // namespace tssim
