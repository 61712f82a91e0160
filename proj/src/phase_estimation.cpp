#include "tssim/phase_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "tssim/block_encoding.hpp"
#include "tssim/decompose.hpp"
#include "tssim/error.hpp"

namespace tssim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-9;
constexpr std::size_t kMaxSimulatedBits = 20;

void check_bits(std::size_t m) {
  if (m < 1 || m > 48) throw ContractError("bit count must be in [1, 48], got " + std::to_string(m));
}

// In-place radix-2 DFT with the e^{-2 pi i xy / M} kernel (the inverse QFT
// up to normalization).
void dft_inplace(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const Complex wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<int> to_bits(std::uint64_t y, std::size_t m) {
  std::vector<int> bits(m);
  for (std::size_t i = 0; i < m; ++i) bits[i] = static_cast<int>((y >> (m - 1 - i)) & 1U);
  return bits;
}

double phase_of(Complex mu) {
  double p = std::arg(mu) / (2.0 * kPi);
  if (p < 0.0) p += 1.0;
  return p >= 1.0 ? 0.0 : p;
}

StateVector dilated_vector(std::span<const Complex> v) {
  const std::size_t n = v.size();
  StateVector out(2 * n);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = r * v[i];
    out[n + i] = -kI * r * v[i];
  }
  return out;
}

PhaseEstimate run_phase(Complex mu, const EnergyOptions& opts) {
  return opts.algorithm == PhaseAlgorithm::kPea ? pea_from_eigenvalue(mu, opts.bits)
                                                : ipea_from_eigenvalue(mu, opts.bits, opts.ipea);
}

// Exact dilation of t * h_n where h_n is already normalized.
EnergyEstimate exact_path(const ComplexMatrix& h_n, double scale, const EnergyOptions& opts) {
  const Spectrum spec = hermitian_eig(h_n);
  const BlockEncoding enc = dilation_sqrt(opts.t * h_n);
  const StateVector w = dilated_vector(spec.vector(0));
  const Complex mu = eigenvalue_of(enc.matrix(), w);
  EnergyEstimate out;
  out.phase = run_phase(mu, opts);
  out.phase.method = EstimateMethod::kExactDilation;
  out.phase.eigenvalue = eigenvalue_from_phase(out.phase, opts.t, EstimateMethod::kExactDilation);
  out.scale = scale;
  out.energy = scale * out.phase.eigenvalue;
  out.block_error = enc.block_error();
  return out;
}

EnergyEstimate taylor_path(const BlockEncoding& uh, const ComplexMatrix& h_n, double scale,
                           const EnergyOptions& opts) {
  const Spectrum spec = hermitian_eig(h_n);
  const TaylorEncoding te = taylor_encoding(uh, opts.t);
  const StateVector v = spec.vector(0);
  const Complex mu = eigenvalue_of(te.encoding.block(), v);
  EnergyEstimate out;
  out.phase = run_phase(mu, opts);
  out.phase.method = EstimateMethod::kTaylor;
  out.phase.success_prob = std::norm(mu);
  out.phase.eigenvalue = eigenvalue_from_phase(out.phase, opts.t, EstimateMethod::kTaylor, opts.correct);
  out.scale = scale;
  out.energy = out.scale * out.phase.eigenvalue;
  out.block_error = te.encoding.block_error();
  return out;
}

void check_t(const EnergyOptions& opts) {
  if (!(opts.t > 0.0) || !std::isfinite(opts.t)) throw ContractError("t must be positive");
  check_bits(opts.bits);
}

}  // namespace

const char* to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::kExactDilation: return "exact-dilation";
    case EstimateMethod::kTaylor: return "taylor";
    case EstimateMethod::kDirectUnitary: return "direct-unitary";
  }
  return "direct-unitary";
}

const char* to_string(EnergyMethod m) {
  switch (m) {
    case EnergyMethod::kExact: return "exact";
    case EnergyMethod::kTaylor: return "taylor";
    case EnergyMethod::kDc: return "dc";
  }
  return "exact";
}

const char* to_string(PhaseAlgorithm a) { return a == PhaseAlgorithm::kPea ? "pea" : "ipea"; }

Complex eigenvalue_of(const ComplexMatrix& m, std::span<const Complex> v, double tol) {
  if (!m.is_square() || m.rows() != v.size()) throw ContractError("eigenvector dimension mismatch");
  if (std::abs(norm(v) - 1.0) > 1e-10) throw ContractError("eigenvector must be normalized");
  const StateVector mv = m * v;
  const Complex mu = inner(v, mv);
  double res = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(mv[i] - mu * v[i]);
  if (std::sqrt(res) > tol) {
    throw ContractError("input is not an eigenvector (residual " + std::to_string(std::sqrt(res)) + ")");
  }
  return mu;
}

std::vector<Complex> kickback_powers(Complex mu, std::size_t count) {
  if (std::abs(mu) == 0.0) throw NumericError("zero eigenvalue carries no phase");
  std::vector<Complex> out;
  out.reserve(count);
  Complex p = mu / std::abs(mu);
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(p);
    p *= p;
    p /= std::abs(p);
  }
  return out;
}

PhaseEstimate pea_from_eigenvalue(Complex mu, std::size_t m) {
  check_bits(m);
  const auto kicks = kickback_powers(mu, m);
  std::uint64_t best = 0;
  if (m <= kMaxSimulatedBits) {
    const std::size_t dim = std::size_t{1} << m;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Complex> reg(dim);
    reg[0] = amp;
    // Control qubit j (weight 2^j) picks up mu^(2^j) on |1>.
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t half = std::size_t{1} << j;
      for (std::size_t x = 0; x < half; ++x) reg[x + half] = reg[x] * kicks[j];
    }
    dft_inplace(reg);
    double best_p = -1.0;
    for (std::size_t y = 0; y < dim; ++y) {
      const double p = std::norm(reg[y]);
      if (p > best_p + 1e-12) {
        best_p = p;
        best = y;
      }
    }
  } else {
    const double scaled = std::ldexp(phase_of(mu), static_cast<int>(m));
    best = static_cast<std::uint64_t>(std::llround(scaled)) & ((std::uint64_t{1} << m) - 1);
  }
  PhaseEstimate out;
  out.bits = to_bits(best, m);
  out.phase = std::ldexp(static_cast<double>(best), -static_cast<int>(m));
  out.method = EstimateMethod::kDirectUnitary;
  return out;
}

PhaseEstimate pea_phase(const ComplexMatrix& u, std::span<const Complex> v, std::size_t m) {
  if (!is_unitary(u, 1e-9)) throw ContractError("pea_phase needs a unitary");
  return pea_from_eigenvalue(eigenvalue_of(u, v), m);
}

double ipea_diff(double phase, std::size_t k) {
  if (k < 1) throw ContractError("IPEA iterations count from 1");
  double x = std::fmod(std::ldexp(phase, static_cast<int>(k)), 2.0);
  if (x < 0.0) x += 2.0;
  return std::sin(kPi * x);
}

PhaseEstimate ipea_from_eigenvalue(Complex mu, std::size_t m, const IpeaOptions& opts) {
  check_bits(m);
  if (opts.sample && opts.trials < 1) throw ContractError("trials must be >= 1");
  const auto kicks = kickback_powers(mu, m);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PhaseEstimate out;
  out.method = EstimateMethod::kDirectUnitary;
  for (std::size_t k = 1; k <= m; ++k) {
    // Control sees e^{i pi x_k}; the -pi/2 rotation turns P(0) - P(1) into sin(pi x_k).
    const Complex kick = kicks[k - 1];
    const double diff = kick.imag();
    int bit;
    if (opts.sample) {
      const double p1 = 0.5 * (1.0 - diff);
      std::size_t ones = 0;
      for (std::size_t s = 0; s < opts.trials; ++s) ones += unit(rng) < p1 ? 1 : 0;
      bit = 2 * ones > opts.trials ? 1 : 0;
    } else if (std::abs(diff) < kTieTol) {
      // x_k sits on an integer: the un-rotated readout cos(pi x_k) = +-1 decides.
      bit = kick.real() < 0.0 ? 1 : 0;
      ++out.ties;
    } else {
      bit = diff < 0.0 ? 1 : 0;
    }
    out.bits.push_back(bit);
    if (bit) out.phase += std::ldexp(1.0, -static_cast<int>(k));
  }
  return out;
}

PhaseEstimate ipea_msb(const ComplexMatrix& u, std::span<const Complex> v, std::size_t m,
                       const IpeaOptions& opts) {
  if (!is_unitary(u, 1e-9)) throw ContractError("ipea_msb needs a unitary");
  return ipea_from_eigenvalue(eigenvalue_of(u, v), m, opts);
}

double eigenvalue_from_phase(const PhaseEstimate& p, double t, EstimateMethod method, bool correct) {
  if (!(t > 0.0)) throw ContractError("eigenvalue_from_phase needs t > 0");
  const double c = std::cos(2.0 * kPi * p.phase);
  double lambda = c / t;
  if (method == EstimateMethod::kTaylor && correct) {
    for (int i = 0; i < 5; ++i) {
      const double tl = t * lambda;
      lambda = c * std::sqrt(1.0 + tl * tl * tl * tl / 4.0) / t;
    }
  }
  return lambda;
}

EnergyEstimate estimate_ground_energy(const PauliSum& s, const EnergyOptions& opts) {
  check_t(opts);
  if (opts.method == EnergyMethod::kDc) return estimate_ground_energy(sum_matrix(s), opts);
  const NormalizedSum ns = normalize_for_encoding(s);
  const ComplexMatrix h_n = sum_matrix(ns.sum);
  EnergyEstimate out = opts.method == EnergyMethod::kExact ? exact_path(h_n, ns.scale, opts)
                                                           : taylor_path(uh_from_sum(ns.sum), h_n, ns.scale, opts);
  out.reference = hermitian_eig(sum_matrix(s)).values.front();
  return out;
}

EnergyEstimate estimate_ground_energy(const ComplexMatrix& h, const EnergyOptions& opts) {
  check_t(opts);
  if (!h.is_square() || h.empty()) throw ContractError("expected a square matrix");
  if (!is_hermitian(h, 1e-10)) throw DomainError("ground-state estimation needs a Hermitian matrix");
  ComplexMatrix work = 0.5 * (h + h.adjoint());
  if (opts.method == EnergyMethod::kDc) {
    const Decomposition d = build_decomposition(h, opts.prune_tol);
    const ComplexMatrix r = reconstruct(d);
    if (max_abs_diff(r, h) > 1e-9) throw NumericError("decomposition does not reconstruct the input");
    work = 0.5 * (r + r.adjoint());
  }
  const double bound = std::max(inf_norm(work), one_norm(work));
  if (bound == 0.0) throw DomainError("zero matrix has no ground-state phase");
  const ComplexMatrix h_n = (1.0 / bound) * work;
  EnergyEstimate out = opts.method == EnergyMethod::kTaylor
                           ? taylor_path(dilation_sqrt(h_n), h_n, bound, opts)
                           : exact_path(h_n, bound, opts);
  out.reference = hermitian_eig(work).values.front();
  return out;
}

Histogram histogram_prob_diff(std::size_t ensemble, std::size_t iterations, std::uint64_t seed) {
  if (ensemble < 1) throw ContractError("ensemble size must be >= 1");
  if (iterations < 1 || iterations > 48) throw ContractError("iterations must be in [1, 48]");
  Histogram h;
  h.samples = ensemble;
  h.iterations = iterations;
  h.seed = seed;
  std::array<std::size_t, 10> counts{};
  for (std::size_t i = 0; i < ensemble; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    const double phase = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (std::size_t k = 1; k <= iterations; ++k) {
      const double d = std::abs(ipea_diff(phase, k));
      ++counts[std::min<std::size_t>(9, static_cast<std::size_t>(d * 10.0))];
    }
  }
  const double total = static_cast<double>(ensemble * iterations);
  for (std::size_t b = 0; b < 10; ++b) h.bins[b] = static_cast<double>(counts[b]) / total;
  h.below_01 = h.bins[0];
  h.above_09 = h.bins[9];
  return h;
}

}  // namespace tssim
