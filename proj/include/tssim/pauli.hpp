#pragma once

// Pauli words and sums. String convention: the leftmost letter acts on the
// highest qubit, the rightmost letter on qubit 0, so "ZX" is kron(Z, X).

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tssim/linalg.hpp"

namespace tssim {

class PauliWord {
 public:
  /// Throws ParseError on letters outside {I, X, Y, Z} or an empty word.
  explicit PauliWord(std::string word);

  const std::string& str() const noexcept { return word_; }
  std::size_t num_qubits() const noexcept { return word_.size(); }
  /// Letter acting on `qubit` (qubit 0 is the rightmost character).
  char on_qubit(std::size_t qubit) const { return word_[word_.size() - 1 - qubit]; }
  /// Number of non-identity letters.
  std::size_t weight() const noexcept;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::string word_;
};

struct PauliTerm {
  double coefficient;
  PauliWord word;
};

/// Real-coefficient sum of Pauli words over a fixed qubit count. Duplicate
/// words are merged on construction (first occurrence keeps its position)
/// and terms with |coefficient| < 1e-15 are dropped.
class PauliSum {
 public:
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

  /// Sum of |coefficients|.
  double coefficient_one_norm() const noexcept;

 private:
  std::size_t n_;
  std::vector<PauliTerm> terms_;
};

ComplexMatrix pauli_matrix(char letter);
ComplexMatrix word_matrix(const PauliWord& w);
ComplexMatrix sum_matrix(const PauliSum& s);

/// Jordan-Wigner images: a_j -> I^{n-j-1} (x) sigma_+ (x) Z^j with
/// sigma_+ = |1><0|, and a_j^dagger with sigma_- = |0><1| in its place.
ComplexMatrix jw_annihilation(std::size_t j, std::size_t n);
ComplexMatrix jw_creation(std::size_t j, std::size_t n);

/// Minimal-basis H2 Hamiltonian on 4 qubits (15 terms, Bravyi-Kitaev form).
PauliSum h2_hamiltonian();

/// The same Hamiltonian in the Pauli-file text format.
std::string_view h2_pauli_text();

struct NormalizedSum {
  PauliSum sum;
  double scale;  // original = scale * sum
};

/// Divides every coefficient by the coefficient 1-norm, so the realized
/// matrix has spectral norm <= 1. Throws ContractError on an empty sum.
NormalizedSum normalize_for_encoding(const PauliSum& s);

/// Parses "<float> <word>" lines; '#' comments and blank lines are ignored.
/// Throws ParseError with the offending line number.
PauliSum parse_pauli_text(std::string_view text);

std::string format_pauli_text(const PauliSum& s);

}  // namespace tssim
