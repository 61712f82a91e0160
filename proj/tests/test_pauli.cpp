#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tssim/error.hpp"
#include "tssim/pauli.hpp"

using namespace tssim;

namespace {

double diff_to_oracle(const ComplexMatrix& m, const oracle::Mat& o) {
  double d = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = 0; j < o.size(); ++j) d = std::max(d, std::abs(m(i, j) - o[i][j]));
  return d;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

}  // namespace

TEST_CASE("word_matrix ordering") {
  CHECK(max_abs_diff(word_matrix(PauliWord("I")), ComplexMatrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(word_matrix(PauliWord("ZX")), kron(pauli_matrix('Z'), pauli_matrix('X'))) == 0.0);
  CHECK(max_abs_diff(word_matrix(PauliWord("XZ")), word_matrix(PauliWord("ZX"))) > 0.5);
  CHECK(PauliWord("XYZ").on_qubit(0) == 'Z');
  CHECK(PauliWord("XYZ").on_qubit(2) == 'X');
  CHECK(PauliWord("XIZI").weight() == 2);
  CHECK_THROWS_AS(PauliWord("XQ"), ParseError);
  CHECK_THROWS_AS(PauliWord(""), ParseError);
}

TEST_CASE("word_matrix matches explicit tensor products") {
  for (const char* w : {"X", "Y", "Z", "XY", "YZ", "ZYX", "IYXZ", "YYYY", "XIZYI"}) {
    const ComplexMatrix m = word_matrix(PauliWord(w));
    CHECK(diff_to_oracle(m, oracle::word(w)) == 0.0);
    CHECK(is_unitary(m, 1e-12));
    CHECK(is_hermitian(m, 0.0));
  }
}

TEST_CASE("sum_matrix examples") {
  CHECK(max_abs_diff(sum_matrix(parse_pauli_text("1.0 Z")), pauli_matrix('Z')) == 0.0);
  const ComplexMatrix d = sum_matrix(parse_pauli_text("0.5 I\n0.5 Z\n"));
  CHECK(d(0, 0) == Complex(1.0));
  CHECK(d(1, 1) == Complex(0.0));
  CHECK(max_abs(d.block(0, 1, 1, 1)) == 0.0);
}

TEST_CASE("H2 matrix structure") {
  const ComplexMatrix h = sum_matrix(h2_hamiltonian());
  CHECK(diff_to_oracle(h, oracle::sum(oracle::h2_terms())) <= 1e-15);
  CHECK(is_hermitian(h, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j)
      if (i != j && std::abs(h(i, j)) > 1e-15) off.emplace_back(i, j);
  // Four off-diagonal entries of magnitude 4 * 0.04532175 (XZX, YZY and their Z-prefixed copies).
  REQUIRE(off.size() == 4);
  const std::vector<std::pair<std::size_t, std::size_t>> expected{{1, 4}, {3, 6}, {4, 1}, {6, 3}};
  CHECK(off == expected);
  for (auto [i, j] : off) CHECK(std::abs(h(i, j)) == doctest::Approx(0.181287).epsilon(1e-12));
}

TEST_CASE("H2 fixture constants") {
  const PauliSum s = h2_hamiltonian();
  CHECK(s.size() == 15);
  CHECK(s.num_qubits() == 4);
  CHECK(s.terms().back().word.str() == "ZZZZ");
  CHECK(s.terms().back().coefficient == 0.165868);
  CHECK(s.terms().front().coefficient == -0.81261);
  CHECK(s.coefficient_one_norm() == doctest::Approx(fixtures::kH2CoefficientNorm).epsilon(1e-14));

  const double e0 = oracle::lowest_eigenvalue(oracle::sum(oracle::h2_terms()));
  CHECK(std::abs(e0 - fixtures::kH2GroundEnergy) <= 1e-10);
  CHECK(std::abs(hermitian_eig(sum_matrix(s)).values.front() - fixtures::kH2GroundEnergy) <= 1e-10);
}

TEST_CASE("shipped h2.pauli equals the embedded Hamiltonian") {
  std::ifstream in(fixtures::data_path("h2.pauli"));
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const PauliSum a = parse_pauli_text(ss.str());
  const PauliSum b = h2_hamiltonian();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.terms()[i].word == b.terms()[i].word);
    CHECK(a.terms()[i].coefficient == b.terms()[i].coefficient);
  }
  CHECK(parse_pauli_text(h2_pauli_text()).size() == 15);
}

TEST_CASE("Jordan-Wigner operators") {
  const ComplexMatrix a0 = jw_annihilation(0, 1);
  CHECK(max_abs_diff(a0, ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}) == 0.0);
  CHECK(max_abs_diff(anticommutator(a0, jw_creation(0, 1)), ComplexMatrix::identity(2)) == 0.0);

  CHECK(max_abs_diff(jw_annihilation(1, 2), kron(ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}, pauli_matrix('Z'))) == 0.0);
  CHECK(max_abs(anticommutator(jw_annihilation(0, 2), jw_annihilation(1, 2))) == 0.0);

  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexMatrix aj = jw_annihilation(j, n);
      CHECK(max_abs_diff(jw_creation(j, n), aj.adjoint()) == 0.0);
      CHECK(max_abs(aj * aj) <= 1e-12);
      for (std::size_t k = 0; k < n; ++k) {
        const ComplexMatrix ac = anticommutator(aj, jw_creation(k, n));
        const ComplexMatrix expect = j == k ? ComplexMatrix::identity(dim) : ComplexMatrix(dim, dim);
        CHECK(max_abs_diff(ac, expect) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(jw_annihilation(2, 2), ContractError);
}

TEST_CASE("normalize_for_encoding") {
  const NormalizedSum a = normalize_for_encoding(parse_pauli_text("2.0 Z"));
  CHECK(a.scale == 2.0);
  CHECK(a.sum.terms()[0].coefficient == 1.0);

  const NormalizedSum b = normalize_for_encoding(parse_pauli_text("1 X\n-1 Z"));
  CHECK(b.scale == 2.0);
  CHECK(b.sum.terms()[0].coefficient == 0.5);
  CHECK(b.sum.terms()[1].coefficient == -0.5);

  const NormalizedSum h = normalize_for_encoding(h2_hamiltonian());
  double total = 0.0;
  for (const auto& t : oracle::h2_terms()) total += std::abs(t.c);
  CHECK(h.scale == doctest::Approx(total).epsilon(1e-15));
  const Spectrum sp = hermitian_eig(sum_matrix(h.sum));
  CHECK(std::max(std::abs(sp.values.front()), std::abs(sp.values.back())) <= 1.0 + 1e-12);
}

TEST_CASE("parse_pauli_text") {
  const PauliSum one = parse_pauli_text("1.0 Z\n");
  CHECK(one.size() == 1);
  CHECK(one.num_qubits() == 1);

  const PauliSum merged = parse_pauli_text("0.5 ZI\n0.5 ZI\n");
  REQUIRE(merged.size() == 1);
  CHECK(merged.terms()[0].coefficient == 1.0);
  CHECK(merged.terms()[0].word.str() == "ZI");

  const PauliSum comments = parse_pauli_text("# header\n\n  +0.25   XY  # trailing\n-1e-1 ZZ\n");
  CHECK(comments.size() == 2);
  CHECK(comments.terms()[0].coefficient == 0.25);

  CHECK(parse_pauli_text("1 X\n-1 X\n0.5 Z\n").size() == 1);  // cancelled term dropped

  auto line_of = [](const char* text) {
    try {
      parse_pauli_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("1 XX\n2 XXX\n") == 2);
  CHECK(line_of("1 XX\nabc YY\n") == 2);
  CHECK(line_of("# c\n1 XQ\n") == 2);
  CHECK(line_of("1+2j Z\n") == 1);
  CHECK(line_of("1 Z extra\n") == 1);
  CHECK_THROWS_AS(parse_pauli_text("# nothing\n\n"), ParseError);
  CHECK_THROWS_AS(parse_pauli_text("nan Z"), ParseError);
}

TEST_CASE("format round trip") {
  const PauliSum s = h2_hamiltonian();
  const PauliSum back = parse_pauli_text(format_pauli_text(s));
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.terms()[i].coefficient == s.terms()[i].coefficient);
}
