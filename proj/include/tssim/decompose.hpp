#pragma once

// Divide-and-conquer expansion of an arbitrary 2^n x 2^n matrix into
//   M = scale * sum_b beta_b * V_b (P_b (x) I_2)
// where every V_b is block diagonal with unitary 2x2 leaves and
// P_b = (x)_{i} X^{j_i} is a tensor product of X and I over k = n - 1 slots.
//
// Leaf subscripts follow the quadrant convention 0 = top-left,
// 1 = top-right, 2 = bottom-left, 3 = bottom-right; the word is read left to
// right from the outermost split inward.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tssim/block_encoding.hpp"
#include "tssim/linalg.hpp"

namespace tssim {

/// Quadrants {top-left, top-right, bottom-left, bottom-right} of a square
/// matrix whose dimension is an even power of two (>= 2).
std::array<ComplexMatrix, 4> split_blocks(const ComplexMatrix& m);

/// One 2x2 leaf A_[word].
struct LeafBlock {
  std::string word;       // digits in {0,1,2,3}, length k
  std::size_t block_row;  // leaf row index in [0, 2^k)
  std::size_t block_col;
  ComplexMatrix entries;  // 2x2
};

/// Leaves assigned to V_j by Rule 1, one per block row, ordered by row.
struct BlockGroup {
  std::size_t j;       // also the X mask: bit (k-1-i) set <=> X at tensor slot i
  std::vector<LeafBlock> blocks;
};

/// The V_0 word for block row i: binary digits of i (MSB first) with 1 -> 3.
std::string diagonal_word(std::size_t i, std::size_t k);
/// Rule 1: at every slot where j carries an X, 0 -> 1 and 3 -> 2 (and back).
std::string apply_rule_one(std::string_view word, std::size_t j);
/// (row, col) of the leaf named by `word`, in units of 2x2 leaves.
std::pair<std::size_t, std::size_t> locate_leaf(std::string_view word);

/// All 2^k groups of an N = 2^(k+1) matrix, j ascending.
std::vector<BlockGroup> recursive_decompose(const ComplexMatrix& m);

enum class SplitMethod {
  kNone,      // leaf already unitary, kept as one branch
  kSqrt,      // (A +/- i sqrt(I - A^2))
  kSingular,  // W (S +/- i sqrt(I - S^2)) V^dagger from the SVD A = W S V^dagger
};

const char* to_string(SplitMethod m);

struct UnitarySplit {
  ComplexMatrix plus;
  ComplexMatrix minus;  // (plus + minus) / 2 == a
  SplitMethod method;
};

/// Writes a 2x2 matrix with spectral norm <= 1 as the average of two
/// unitaries. Tries the square-root form first and falls back to the
/// singular-value form when the result is not unitary to 1e-10.
UnitarySplit unitary_split(const ComplexMatrix& a);

/// Principal square root of a 2x2 matrix (Cayley-Hamilton closed form).
/// Throws NumericError when no square root exists.
ComplexMatrix sqrtm_2x2(const ComplexMatrix& m);

/// Spectral norm of a 2x2 matrix.
double spectral_norm_2x2(const ComplexMatrix& a);

struct DecompositionTerm {
  std::size_t j = 0;
  char branch = '+';  // '+', '-' for split groups, '=' when no split was needed
  double beta = 1.0;
  std::vector<ComplexMatrix> v_blocks;  // diagonal of V_j, one 2x2 per block row
  SplitMethod method = SplitMethod::kNone;
};

struct Decomposition {
  std::size_t n = 0;     // system qubits; N = 2^n
  double scale = 1.0;    // global pre-scaling
  std::vector<DecompositionTerm> terms;
  std::vector<std::size_t> groups;  // surviving j values, ascending

  std::size_t dim() const noexcept { return std::size_t{1} << n; }
  double beta_sum() const noexcept;
};

/// Splits, scales and prunes. scale = max(inf_norm, one_norm) when that
/// exceeds 1, else 1. Groups whose leaves all have max-abs < prune_tol are
/// dropped.
Decomposition build_decomposition(const ComplexMatrix& m, double prune_tol = 1e-14);

/// P_j (x) I_2 built as an explicit tensor product.
ComplexMatrix x_permutation(std::size_t j, std::size_t k);

/// V_j (P_j (x) I_2) for one term.
ComplexMatrix term_matrix(const DecompositionTerm& term, std::size_t n);

/// scale * sum_b beta_b V_b (P_b (x) I_2).
ComplexMatrix reconstruct(const Decomposition& d);

/// U_H = (B_H^dagger (x) I) VP (B_H (x) I); block * scale == reconstruct(d).
BlockEncoding assemble_uh(const Decomposition& d);

std::string decomposition_to_json(const Decomposition& d);
/// Throws ParseError on malformed documents.
Decomposition decomposition_from_json(std::string_view text);

}  // namespace tssim
