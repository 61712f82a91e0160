#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tssim/decompose.hpp"
#include "tssim/error.hpp"
#include "tssim/matrix_io.hpp"
#include "tssim/pauli.hpp"

using namespace tssim;

namespace {

ComplexMatrix counting(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<double>(i * n + j + 1);
  return m;
}

ComplexMatrix random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (auto& z : m.entries()) z = {g(rng), g(rng)};
  return m;
}

// Oracle for V_j (P_j (x) I2): entry (r, c) of the input survives iff the
// leaf coordinates satisfy row XOR col == j.
oracle::Mat group_oracle(const ComplexMatrix& m, std::size_t j) {
  oracle::Mat out = oracle::zeros(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (((r / 2) ^ (c / 2)) == j) out[r][c] = m(r, c);
  return out;
}

ComplexMatrix group_sum(const Decomposition& d, std::size_t j) {
  ComplexMatrix out(d.dim(), d.dim());
  for (const auto& t : d.terms)
    if (t.j == j) out += (d.scale * t.beta) * term_matrix(t, d.n);
  return out;
}

double max_abs_oracle(const ComplexMatrix& a, const oracle::Mat& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e = std::max(e, std::abs(a(i, j) - b[i][j]));
  return e;
}

}  // namespace

TEST_CASE("split_blocks quadrants") {
  const auto q = split_blocks(counting(4));
  CHECK(max_abs_diff(q[0], ComplexMatrix{{1.0, 2.0}, {5.0, 6.0}}) == 0.0);
  CHECK(max_abs_diff(q[1], ComplexMatrix{{3.0, 4.0}, {7.0, 8.0}}) == 0.0);
  CHECK(max_abs_diff(q[2], ComplexMatrix{{9.0, 10.0}, {13.0, 14.0}}) == 0.0);
  CHECK(max_abs_diff(q[3], ComplexMatrix{{11.0, 12.0}, {15.0, 16.0}}) == 0.0);

  const auto s = split_blocks(ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}});
  CHECK(s[0](0, 0) == Complex(1.0));
  CHECK(s[1](0, 0) == Complex(2.0));
  CHECK(s[2](0, 0) == Complex(3.0));
  CHECK(s[3](0, 0) == Complex(4.0));

  ComplexMatrix bd(4, 4);
  bd(0, 0) = 1.0; bd(1, 0) = 2.0; bd(2, 3) = 3.0; bd(3, 2) = 4.0;
  const auto b = split_blocks(bd);
  CHECK(max_abs(b[1]) == 0.0);
  CHECK(max_abs(b[2]) == 0.0);

  CHECK_THROWS_AS(split_blocks(ComplexMatrix(6, 6)), ContractError);
  CHECK_THROWS_AS(split_blocks(ComplexMatrix(1, 1)), ContractError);
  CHECK_THROWS_AS(split_blocks(ComplexMatrix(4, 2)), ContractError);
}

TEST_CASE("words, Rule 1 and the leaf locator") {
  CHECK(diagonal_word(0, 3) == "000");
  CHECK(diagonal_word(5, 3) == "303");
  CHECK(diagonal_word(7, 3) == "333");
  CHECK(apply_rule_one("03", 2) == "13");
  CHECK(apply_rule_one("33", 3) == "22");
  CHECK(apply_rule_one("12", 3) == "03");
  CHECK(locate_leaf("0") == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(locate_leaf("1") == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(locate_leaf("2") == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(locate_leaf("31") == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK_THROWS_AS(locate_leaf("04"), ContractError);
}

TEST_CASE("recursive_decompose on small inputs") {
  const ComplexMatrix m4 = counting(4);
  const auto groups = recursive_decompose(m4);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].blocks[0].word == "0");
  CHECK(groups[0].blocks[1].word == "3");
  CHECK(max_abs_diff(groups[0].blocks[0].entries, ComplexMatrix{{1.0, 2.0}, {5.0, 6.0}}) == 0.0);
  CHECK(max_abs_diff(groups[0].blocks[1].entries, ComplexMatrix{{11.0, 12.0}, {15.0, 16.0}}) == 0.0);
  CHECK(groups[1].blocks[0].word == "1");
  CHECK(groups[1].blocks[1].word == "2");

  // V0 + V1 (X (x) I2) rebuilt by hand.
  oracle::Mat v0 = oracle::zeros(4, 4), v1 = oracle::zeros(4, 4);
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        v0[2 * b + r][2 * b + c] = groups[0].blocks[b].entries(r, c);
        v1[2 * b + r][2 * b + c] = groups[1].blocks[b].entries(r, c);
      }
  const oracle::Mat p1 = oracle::kron(oracle::pauli('X'), oracle::eye(2));
  const oracle::Mat v1p = oracle::mul(v1, p1);
  oracle::Mat total = oracle::zeros(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) total[i][j] = v0[i][j] + v1p[i][j];
  CHECK(max_abs_oracle(m4, total) == 0.0);

  const auto g8 = recursive_decompose(counting(8));
  REQUIRE(g8.size() == 4);
  std::vector<std::string> w2, w3;
  for (const auto& b : g8[2].blocks) w2.push_back(b.word);
  for (const auto& b : g8[3].blocks) w3.push_back(b.word);
  CHECK(w2 == std::vector<std::string>{"10", "13", "20", "23"});
  CHECK(w3 == std::vector<std::string>{"11", "12", "21", "22"});

  CHECK_THROWS_AS(recursive_decompose(ComplexMatrix(1, 1)), ContractError);
}

TEST_CASE("Rule 1 bijection and locator on random inputs") {
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    const ComplexMatrix m = random_complex(n, n);
    const auto groups = recursive_decompose(m);
    const std::size_t leaves = n / 2;
    REQUIRE(groups.size() == leaves);
    for (const auto& g : groups) {
      std::multiset<std::size_t> rows;
      for (const auto& b : g.blocks) {
        rows.insert(b.block_row);
        CHECK((b.block_row ^ b.block_col) == g.j);
        CHECK(locate_leaf(b.word) == std::pair{b.block_row, b.block_col});
        CHECK(max_abs_diff(b.entries, m.block(2 * b.block_row, 2 * b.block_col, 2, 2)) == 0.0);
      }
      std::multiset<std::size_t> expect;
      for (std::size_t r = 0; r < leaves; ++r) expect.insert(r);
      CHECK(rows == expect);
    }
  }
}

TEST_CASE("unitary_split examples") {
  const auto half = unitary_split(0.5 * ComplexMatrix::identity(2));
  const Complex root(0.0, std::sqrt(3.0) / 2.0);
  CHECK(max_abs_diff(half.plus, (0.5 + root) * ComplexMatrix::identity(2)) <= 1e-15);
  CHECK(max_abs_diff(half.minus, (0.5 - root) * ComplexMatrix::identity(2)) <= 1e-15);

  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const auto sx = unitary_split(x);
  CHECK(max_abs_diff(sx.plus, x) <= 1e-12);
  CHECK(max_abs_diff(sx.minus, x) <= 1e-12);

  const auto dg = unitary_split(ComplexMatrix{{0.6, 0.0}, {0.0, -0.8}});
  CHECK(std::abs(dg.plus(0, 0) - Complex(0.6, 0.8)) <= 1e-15);
  CHECK(std::abs(dg.plus(1, 1) - Complex(-0.8, 0.6)) <= 1e-15);
  CHECK(std::abs(dg.minus(0, 0) - Complex(0.6, -0.8)) <= 1e-15);
  CHECK(std::abs(dg.minus(1, 1) - Complex(-0.8, -0.6)) <= 1e-15);

  CHECK_THROWS_AS(unitary_split(1.5 * ComplexMatrix::identity(2)), DomainError);
  CHECK_THROWS_AS(unitary_split(ComplexMatrix(3, 3)), ContractError);
}

TEST_CASE("unitary_split round trip, including defective leaves") {
  std::vector<ComplexMatrix> cases{
      ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}},  // nilpotent: I - A^2 = I but A is not normal
      ComplexMatrix{{0.0, 0.9}, {0.0, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},  // rank-one projector
      ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}},
      ComplexMatrix{{Complex(0, 1), 0.0}, {0.0, 1.0}},
  };
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    ComplexMatrix a(2, 2);
    for (auto& z : a.entries()) z = {g(rng), g(rng)};
    cases.push_back((1.0 / (spectral_norm_2x2(a) * (1.0 + 1e-3 * (i % 3)))) * a);
  }
  for (const auto& a : cases) {
    const auto s = unitary_split(a);
    CHECK(max_abs_diff(0.5 * (s.plus + s.minus), a) <= 1e-12);
    CHECK(is_unitary(s.plus, 1e-10));
    CHECK(is_unitary(s.minus, 1e-10));
  }
}

TEST_CASE("spectral_norm_2x2 and sqrtm_2x2") {
  CHECK(spectral_norm_2x2(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}) == doctest::Approx(2.0));
  CHECK(spectral_norm_2x2(ComplexMatrix{{3.0, 0.0}, {0.0, -4.0}}) == doctest::Approx(4.0));
  // ||[[1,1],[0,1]]|| = golden ratio
  CHECK(spectral_norm_2x2(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));

  const ComplexMatrix m{{4.0, 1.0}, {0.0, 9.0}};
  const ComplexMatrix r = sqrtm_2x2(m);
  CHECK(max_abs_diff(r * r, m) <= 1e-12);
  CHECK_THROWS_AS(sqrtm_2x2(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NumericError);
}

TEST_CASE("build_decomposition on structured inputs") {
  const Decomposition id = build_decomposition(ComplexMatrix::identity(4));
  REQUIRE(id.terms.size() == 1);
  CHECK(id.terms[0].j == 0);
  CHECK(id.terms[0].branch == '=');
  CHECK(id.terms[0].beta == 1.0);
  CHECK(id.scale == 1.0);
  CHECK(id.groups == std::vector<std::size_t>{0});
  CHECK(max_abs_diff(reconstruct(id), ComplexMatrix::identity(4)) == 0.0);
  const BlockEncoding ide = assemble_uh(id);
  CHECK(ide.ancilla_dim() == 1);
  CHECK(max_abs_diff(ide.block(), ComplexMatrix::identity(4)) <= 1e-15);

  ComplexMatrix anti(4, 4);
  for (std::size_t i = 0; i < 4; ++i) anti(i, 3 - i) = 0.25 * static_cast<double>(i + 1);
  const Decomposition ad = build_decomposition(anti);
  CHECK(ad.groups == std::vector<std::size_t>{1});
  for (const auto& t : ad.terms) CHECK(t.j == 1);
  CHECK(max_abs_diff(reconstruct(ad), anti) <= 1e-12);

  // A unitary (permutation) matrix is passed through without splitting.
  const Decomposition pd = build_decomposition(anti * (1.0 / 0.25));
  CHECK(pd.scale == doctest::Approx(4.0));

  CHECK_THROWS_AS(assemble_uh(build_decomposition(ComplexMatrix(4, 4))), DomainError);
  CHECK(build_decomposition(ComplexMatrix(4, 4)).terms.empty());
}

TEST_CASE("build_decomposition on H2") {
  const ComplexMatrix h = sum_matrix(h2_hamiltonian());
  const Decomposition d = build_decomposition(h);
  CHECK(d.n == 4);
  CHECK(d.groups == std::vector<std::size_t>{0, 2});
  CHECK(d.terms.size() == 4);
  CHECK(d.scale == doctest::Approx(std::max(inf_norm(h), one_norm(h))));
  for (const auto& t : d.terms)
    for (const auto& b : t.v_blocks) CHECK(is_unitary(b, 1e-10));
  CHECK(max_abs_diff(reconstruct(d), h) <= 1e-12);

  // Each surviving group rebuilds exactly the entries the locator assigns to it.
  for (std::size_t j : d.groups) CHECK(max_abs_oracle(group_sum(d, j), group_oracle(h, j)) <= 1e-12);

  const BlockEncoding u = assemble_uh(d);
  CHECK(u.ancilla_dim() == 4);
  CHECK(max_abs_diff(u.scale() * u.block(), h) <= 1e-9);
  CHECK(is_unitary(u.matrix(), 1e-10));
}

TEST_CASE("reconstruction over random complex matrices") {
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ComplexMatrix m = random_complex(n, 1000 * n + seed);
      const Decomposition d = build_decomposition(m);
      CHECK(d.groups.size() == std::max<std::size_t>(1, n / 2));
      CHECK(max_abs_diff(reconstruct(d), m) <= 1e-9);
      for (const auto& t : d.terms)
        for (const auto& b : t.v_blocks) CHECK(is_unitary(b, 1e-10));
      if (n <= 8) {
        const BlockEncoding u = assemble_uh(d);
        CHECK(max_abs_diff(u.scale() * u.block(), m) <= 1e-9);
      }
    }
  }
}

TEST_CASE("pruning soundness") {
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix m = random_complex(8, 500 + trial);
    // Shrink two groups to noise just under and just over the threshold.
    const double tau = 1e-6;
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) {
        const std::size_t j = (r / 2) ^ (c / 2);
        if (j == 1) m(r, c) *= 0.5 * tau / 4.0;
        if (j == 3) m(r, c) *= 1e-3;
      }
    const Decomposition full = build_decomposition(m, 0.0);
    const Decomposition pruned = build_decomposition(m, tau);
    CHECK(full.groups.size() == 4);
    CHECK(std::find(pruned.groups.begin(), pruned.groups.end(), 1) == pruned.groups.end());
    CHECK(std::find(pruned.groups.begin(), pruned.groups.end(), 3) != pruned.groups.end());
    CHECK(max_abs_diff(reconstruct(pruned), reconstruct(full)) <= 4.0 * tau);
  }
}

TEST_CASE("x_permutation is P_j (x) I2") {
  const oracle::Mat x = oracle::pauli('X'), i2 = oracle::eye(2);
  const oracle::Mat p5 = oracle::kron(oracle::kron(oracle::kron(x, i2), x), i2);
  CHECK(max_abs_oracle(x_permutation(5, 3), p5) == 0.0);
  CHECK(max_abs_diff(x_permutation(0, 2), ComplexMatrix::identity(8)) == 0.0);
}

TEST_CASE("decomposition JSON round trip") {
  const ComplexMatrix m = random_complex(8, 42);
  const Decomposition d = build_decomposition(m);
  const std::string text = decomposition_to_json(d);
  const Decomposition back = decomposition_from_json(text);
  CHECK(back.n == d.n);
  CHECK(back.scale == d.scale);
  CHECK(back.groups == d.groups);
  REQUIRE(back.terms.size() == d.terms.size());
  CHECK(max_abs_diff(reconstruct(back), reconstruct(d)) == 0.0);
  CHECK(decomposition_to_json(back) == text);

  CHECK_THROWS_AS(decomposition_from_json("{"), ParseError);
  CHECK_THROWS_AS(decomposition_from_json(R"({"kind": "matrix"})"), ParseError);
  CHECK_THROWS_AS(decomposition_from_json(R"({"schema": "1", "kind": "decomposition"})"), ParseError);
}

TEST_CASE("random8 fixture") {
  std::ifstream in(fixtures::data_path("random8.json"));
  std::stringstream buf;
  buf << in.rdbuf();
  const ComplexMatrix m = parse_matrix_json(buf.str());
  const Decomposition d = build_decomposition(m);
  CHECK(d.groups.size() == 4);
  CHECK(max_abs_diff(reconstruct(d), m) <= 1e-9);
}
