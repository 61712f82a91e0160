#include "tssim/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "tssim/error.hpp"

namespace tssim {

namespace {

std::atomic<std::size_t> g_max_dim{std::size_t{1} << 14};

void check_dim(std::size_t rows, std::size_t cols) {
  const std::size_t cap = g_max_dim.load(std::memory_order_relaxed);
  if (rows > cap || cols > cap) {
    throw SizeError("matrix dimension " + std::to_string(std::max(rows, cols)) +
                    " exceeds the configured maximum " + std::to_string(cap));
  }
}

bool all_finite(const ComplexMatrix& m) {
  return std::all_of(m.entries().begin(), m.entries().end(),
                     [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

std::size_t max_dimension() noexcept { return g_max_dim.load(std::memory_order_relaxed); }

void set_max_dimension(std::size_t dim) {
  if (dim == 0) throw ContractError("maximum dimension must be positive");
  g_max_dim.store(dim, std::memory_order_relaxed);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dim(rows, cols);
  entries_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dim(rows, cols);
  if (entries_.size() != rows * cols) {
    throw ContractError("entry count " + std::to_string(entries_.size()) + " does not match " +
                        std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  check_dim(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ContractError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t row, std::size_t col, std::size_t nrows,
                                   std::size_t ncols) const {
  if (row + nrows > rows_ || col + ncols > cols_) throw ContractError("block out of range");
  ComplexMatrix b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    std::copy_n(&(*this)(row + r, col), ncols, &b(r, 0));
  }
  return b;
}

void ComplexMatrix::set_block(std::size_t row, std::size_t col, const ComplexMatrix& b) {
  if (row + b.rows() > rows_ || col + b.cols() > cols_) throw ContractError("block out of range");
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::copy_n(&b(r, 0), b.cols(), &(*this)(row + r, col));
  }
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContractError("shape mismatch in +");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContractError("shape mismatch in -");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw ContractError("shape mismatch in matrix product");
  ComplexMatrix out(a.rows_, b.cols_);
  const std::size_t n = b.cols_;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Complex* orow = &out.entries_[i * n];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a.entries_[i * a.cols_ + k];
      if (aik == Complex{}) continue;
      const Complex* brow = &b.entries_[k * n];
      for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

StateVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols_ != v.size()) throw ContractError("shape mismatch in matrix-vector product");
  StateVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Complex acc{};
    const Complex* row = &a.entries_[i * a.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) acc += row[k] * v[k];
    out[i] = acc;
  }
  return out;
}

StateVector Spectrum::vector(std::size_t k) const {
  StateVector v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
  return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t cap = max_dimension();
  if ((b.rows() && a.rows() > cap / b.rows()) || (b.cols() && a.cols() > cap / b.cols())) {
    throw SizeError("Kronecker product dimension exceeds the configured maximum " +
                    std::to_string(cap));
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix block_diag(std::span<const ComplexMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Spectrum hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square() || h.empty()) throw ContractError("hermitian_eig needs a non-empty square matrix");
  if (!all_finite(h)) throw NumericError("hermitian_eig input has non-finite entries");
  if (!is_hermitian(h, 1e-12)) throw ContractError("hermitian_eig input is not Hermitian");

  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  double frob = 0.0;
  for (auto z : a.entries()) frob += std::norm(z);
  frob = std::sqrt(frob);
  const double threshold = 1e-14 * std::max(frob, 1e-300);

  constexpr int kSweepBudget = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kSweepBudget; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300) continue;
        const Complex e = apq / g;  // e^{i phi}
        const Complex ec = std::conj(e);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged) throw NumericError("Jacobi eigensolver did not converge within 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  Spectrum spec;
  spec.values.resize(n);
  spec.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    spec.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) spec.vectors(i, k) = v(i, order[k]);
  }
  return spec;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& a) {
  if (!a.is_square()) throw ContractError("sqrtm_psd needs a square matrix");
  if (!is_hermitian(a, 1e-10)) throw DomainError("sqrtm_psd input is not Hermitian");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  const Spectrum spec = hermitian_eig(sym);
  const std::size_t n = a.rows();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = spec.values[k];
    if (lam < -1e-10) {
      throw DomainError("sqrtm_psd: eigenvalue " + std::to_string(lam) + " is below -1e-10");
    }
    roots[k] = std::sqrt(std::max(lam, 0.0));
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k)
        acc += spec.vectors(i, k) * roots[k] * std::conj(spec.vectors(j, k));
      out(i, j) = acc;
    }
  return out;
}

double spectral_norm_hermitian(const ComplexMatrix& h) {
  const Spectrum spec = hermitian_eig(h);
  return std::max(std::abs(spec.values.front()), std::abs(spec.values.back()));
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.is_square()) return false;
  const std::size_t n = u.rows();
  // For square u, u^dagger u = I iff u u^dagger = I; the latter walks rows.
  for (std::size_t i = 0; i < n; ++i) {
    const Complex* ri = &u(i, 0);
    for (std::size_t j = i; j < n; ++j) {
      const Complex* rj = &u(j, 0);
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += ri[k] * std::conj(rj[k]);
      if (i == j) acc -= 1.0;
      if (std::abs(acc.real()) > tol || std::abs(acc.imag()) > tol) return false;
    }
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) return false;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j)
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol) return false;
  return true;
}

bool is_permutation(const ComplexMatrix& p) {
  if (!p.is_square()) return false;
  const std::size_t n = p.rows();
  std::vector<int> col_count(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    int row_count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const Complex z = p(r, c);
      if (z == Complex{1.0, 0.0}) {
        ++row_count;
        ++col_count[c];
      } else if (z != Complex{}) {
        return false;
      }
    }
    if (row_count != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(), [](int k) { return k == 1; });
}

double inf_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

double one_norm(const ComplexMatrix& a) {
  std::vector<double> sums(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) sums[c] += std::abs(a(r, c));
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double max_abs(const ComplexMatrix& a) {
  double best = 0.0;
  for (auto z : a.entries()) best = std::max(best, std::abs(z));
  return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractError("shape mismatch in max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
  return best;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (auto z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ContractError("length mismatch in inner product");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

StateVector normalized(std::span<const Complex> v) {
  const double n = norm(v);
  if (n == 0.0) throw NumericError("cannot normalize a zero vector");
  StateVector out(v.begin(), v.end());
  for (auto& z : out) z /= n;
  return out;
}

}  // namespace tssim
