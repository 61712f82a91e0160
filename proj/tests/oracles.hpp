#pragma once

// Independent reference implementations for tests. Nothing here touches the
// library: plain nested vectors, textbook loops, no shared helpers.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = std::vector<std::vector<cd>>;

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<cd>(c)); }

inline Mat eye(std::size_t n) {
  Mat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat c = zeros(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Mat c = zeros(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) c[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return c;
}

inline Mat pauli(char p) {
  const cd i(0, 1);
  switch (p) {
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, -i}, {i, 0}};
    case 'Z': return {{1, 0}, {0, -1}};
    default: return {{1, 0}, {0, 1}};
  }
}

// Leftmost letter is the outermost Kronecker factor.
inline Mat word(const std::string& w) {
  Mat m = {{1.0}};
  for (char c : w) m = kron(m, pauli(c));
  return m;
}

struct Term {
  double c;
  std::string w;
};

inline Mat sum(const std::vector<Term>& terms) {
  Mat m;
  for (const auto& t : terms) {
    Mat p = word(t.w);
    if (m.empty()) m = zeros(p.size(), p.size());
    for (std::size_t r = 0; r < p.size(); ++r)
      for (std::size_t c = 0; c < p.size(); ++c) m[r][c] += t.c * p[r][c];
  }
  return m;
}

// The 15-term H2 Hamiltonian, typed in independently of the library fixture.
inline std::vector<Term> h2_terms() {
  return {{-0.81261, "IIII"},    {0.171201, "IIIZ"},   {0.16862325, "IIZI"}, {-0.2227965, "IZII"},
          {0.171201, "IIZZ"},    {0.12054625, "IZIZ"}, {0.17434925, "ZIZI"}, {0.04532175, "IXZX"},
          {0.04532175, "IYZY"},  {0.165868, "IZZZ"},   {0.12054625, "ZZIZ"}, {-0.2227965, "ZZZI"},
          {0.04532175, "ZXZX"},  {0.04532175, "ZYZY"}, {0.165868, "ZZZZ"}};
}

inline double row_sum_bound(const Mat& h) {
  double best = 0.0;
  for (const auto& row : h) {
    double s = 0.0;
    for (auto z : row) s += std::abs(z);
    best = std::max(best, s);
  }
  return best;
}

// Lowest eigenvalue of a Hermitian matrix by power iteration on
// (shift I - H), shift = row-sum bound, followed by Rayleigh refinement.
inline double lowest_eigenvalue(const Mat& h, int iterations = 200000) {
  const std::size_t n = h.size();
  const double shift = row_sum_bound(h) + 1.0;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> g;
  std::vector<cd> v(n);
  for (auto& x : v) x = cd(g(rng), g(rng));
  double mu = 0.0, prev = -1.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<cd> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      cd acc = shift * v[i];
      for (std::size_t j = 0; j < n; ++j) acc -= h[i][j] * v[j];
      w[i] = acc;
    }
    double nrm = 0.0;
    for (auto z : w) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : w) z /= nrm;
    v = w;
    mu = nrm;
    if (std::abs(mu - prev) < 1e-15 * std::abs(mu) && it > 100) break;
    prev = mu;
  }
  cd num = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) num += std::conj(v[i]) * h[i][j] * v[j];
  return num.real();
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

// Closed-form kickback phase of the exact dilation on the +lambda branch.
inline double dilation_phase(double lambda) { return std::acos(lambda) / (2.0 * M_PI); }

// Phase of the truncated Taylor block eigenvalue t*lambda + i(1 - t^2 lambda^2 / 2).
inline double taylor_phase(double t, double lambda) {
  const double re = t * lambda, im = 1.0 - t * t * lambda * lambda / 2.0;
  double p = std::atan2(im, re) / (2.0 * M_PI);
  return p < 0 ? p + 1.0 : p;
}

// Nearest m-bit grid value of a phase, wrapped into [0, 1).
inline double round_phase(double phase, int m) {
  const double scale = std::ldexp(1.0, m);
  double r = std::round(phase * scale) / scale;
  return r >= 1.0 ? r - 1.0 : r;
}

// Binary digits of floor(phase * 2^m), MSB first.
inline std::vector<int> truncated_bits(double phase, int m) {
  std::vector<int> bits;
  double x = phase;
  for (int k = 0; k < m; ++k) {
    x *= 2.0;
    const int b = x >= 1.0 ? 1 : 0;
    bits.push_back(b);
    x -= b;
  }
  return bits;
}

}  // namespace oracle
