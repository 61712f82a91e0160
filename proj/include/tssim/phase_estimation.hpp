#pragma once

// Phase estimation on explicit matrices. Both estimators work from the
// eigenvalue mu that the supplied eigenvector kicks back onto the control
// register; controlled powers mu^(2^j) are formed by repeated squaring.
//
// IPEA convention: iteration k (1-based) applies U^(2^(k-1)) so the control
// qubit sees the phase pi * x_k with x_k = 2^k * phase mod 2 = (phi_k.phi_k+1...)_2.
// After the -pi/2 rotation, P(0) - P(1) = sin(pi * x_k) and bit k is 1 when
// that difference is negative.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tssim/linalg.hpp"
#include "tssim/pauli.hpp"

namespace tssim {

enum class EstimateMethod { kExactDilation, kTaylor, kDirectUnitary };

const char* to_string(EstimateMethod m);

struct PhaseEstimate {
  std::vector<int> bits;      // MSB first
  double phase = 0.0;         // in [0, 1)
  double eigenvalue = 0.0;    // filled by the energy estimators
  double success_prob = 1.0;  // post-selection probability of one application
  EstimateMethod method = EstimateMethod::kDirectUnitary;
  std::size_t ties = 0;       // IPEA decisions made on a zero difference
};

/// Rayleigh quotient <v|m|v> for a unit vector v. Throws ContractError when
/// ||m v - mu v|| exceeds `tol`.
Complex eigenvalue_of(const ComplexMatrix& m, std::span<const Complex> v, double tol = 1e-8);

/// mu^(2^j) / |mu^(2^j)| for j = 0 .. count-1.
std::vector<Complex> kickback_powers(Complex mu, std::size_t count);

/// Textbook m-bit PEA on the kickback phases: exact ancilla statevector,
/// inverse QFT, most probable outcome. m <= 20 is simulated; larger m uses
/// the equivalent rounding of the phase.
PhaseEstimate pea_from_eigenvalue(Complex mu, std::size_t m);
PhaseEstimate pea_phase(const ComplexMatrix& u, std::span<const Complex> v, std::size_t m);

struct IpeaOptions {
  bool sample = false;      // Bernoulli draws instead of exact probabilities
  std::uint64_t seed = 0;
  std::size_t trials = 1;   // draws per bit; majority vote
};

/// P(0) - P(1) after iteration k for a given phase (k >= 1).
double ipea_diff(double phase, std::size_t k);

PhaseEstimate ipea_from_eigenvalue(Complex mu, std::size_t m, const IpeaOptions& opts = {});
PhaseEstimate ipea_msb(const ComplexMatrix& u, std::span<const Complex> v, std::size_t m,
                       const IpeaOptions& opts = {});

/// lambda = cos(2 pi phase) / t. For kTaylor with `correct`, the result is
/// refined by five rounds of lambda <- cos(2 pi phase) sqrt(1 + t^4 lambda^4 / 4) / t.
double eigenvalue_from_phase(const PhaseEstimate& p, double t, EstimateMethod method, bool correct = true);

enum class EnergyMethod { kExact, kTaylor, kDc };
enum class PhaseAlgorithm { kPea, kIpea };

const char* to_string(EnergyMethod m);
const char* to_string(PhaseAlgorithm a);

struct EnergyOptions {
  EnergyMethod method = EnergyMethod::kExact;
  double t = 1.0;
  std::size_t bits = 16;
  PhaseAlgorithm algorithm = PhaseAlgorithm::kPea;
  bool correct = true;
  IpeaOptions ipea;
  double prune_tol = 1e-14;
};

struct EnergyEstimate {
  double energy = 0.0;
  double scale = 1.0;          // energy = scale * normalized eigenvalue
  double reference = 0.0;      // lowest eigenvalue from diagonalization
  double block_error = 0.0;    // of the encoding that was used
  PhaseEstimate phase;
};

/// Ground-state energy of a Pauli sum. The sum is divided by its
/// coefficient 1-norm before encoding and the result scaled back.
EnergyEstimate estimate_ground_energy(const PauliSum& s, const EnergyOptions& opts);

/// Same for a dense Hermitian matrix, normalized by max(inf_norm, 1-norm).
EnergyEstimate estimate_ground_energy(const ComplexMatrix& h, const EnergyOptions& opts);

struct Histogram {
  std::array<double, 10> bins{};  // fractions over [0, 0.1), ..., [0.9, 1]
  double below_01 = 0.0;
  double above_09 = 0.0;
  std::size_t samples = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

/// |P(0) - P(1)| over `iterations` IPEA rounds for `ensemble` uniform
/// eigenphases. Member i draws from its own generator seeded from (seed, i).
Histogram histogram_prob_diff(std::size_t ensemble, std::size_t iterations, std::uint64_t seed);

}  // namespace tssim
