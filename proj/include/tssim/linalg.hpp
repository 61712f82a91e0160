#pragma once

// Dense complex linear algebra used by every other module. Everything here is
// O(N^3) and single threaded; matrices are small (N <= 2^10 in practice).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tssim {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Process-wide cap on any single matrix dimension. Defaults to 2^14.
std::size_t max_dimension() noexcept;
void set_max_dimension(std::size_t dim);

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row, std::size_t col, const ComplexMatrix& b);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend StateVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Eigen-decomposition of a Hermitian matrix. Values ascend; column k of
/// `vectors` is the unit eigenvector for values[k].
struct Spectrum {
  std::vector<double> values;
  ComplexMatrix vectors;

  StateVector vector(std::size_t k) const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Block-diagonal concatenation.
ComplexMatrix block_diag(std::span<const ComplexMatrix> blocks);

/// Cyclic complex Jacobi. Throws ContractError for non-Hermitian input
/// (entrywise tolerance 1e-12) and NumericError if 100 sweeps do not
/// converge.
Spectrum hermitian_eig(const ComplexMatrix& h);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything lower throws DomainError.
ComplexMatrix sqrtm_psd(const ComplexMatrix& a);

/// Largest |eigenvalue| of a Hermitian matrix.
double spectral_norm_hermitian(const ComplexMatrix& h);

bool is_unitary(const ComplexMatrix& u, double tol);
bool is_hermitian(const ComplexMatrix& h, double tol);
/// 0/1 matrix with exactly one 1 per row and column.
bool is_permutation(const ComplexMatrix& p);

/// Max absolute row sum.
double inf_norm(const ComplexMatrix& a);
/// Max absolute column sum.
double one_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double norm(std::span<const Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
StateVector normalized(std::span<const Complex> v);

}  // namespace tssim
