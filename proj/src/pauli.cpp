#include "tssim/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "tssim/error.hpp"

namespace tssim {

namespace {

constexpr double kDropThreshold = 1e-15;

bool is_pauli_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

constexpr std::string_view kH2Text =
    "# H2, minimal basis, Bravyi-Kitaev form. Rightmost letter = qubit 0.\n"
    "-0.81261     IIII\n"
    "0.171201     IIIZ\n"
    "0.16862325   IIZI\n"
    "-0.2227965   IZII\n"
    "0.171201     IIZZ\n"
    "0.12054625   IZIZ\n"
    "0.17434925   ZIZI\n"
    "0.04532175   IXZX\n"
    "0.04532175   IYZY\n"
    "0.165868     IZZZ\n"
    "0.12054625   ZZIZ\n"
    "-0.2227965   ZZZI\n"
    "0.04532175   ZXZX\n"
    "0.04532175   ZYZY\n"
    "0.165868     ZZZZ\n";

}  // namespace

PauliWord::PauliWord(std::string word) : word_(std::move(word)) {
  if (word_.empty()) throw ParseError("empty Pauli word");
  for (char c : word_) {
    if (!is_pauli_letter(c)) throw ParseError(std::string("invalid Pauli letter '") + c + "'");
  }
}

std::size_t PauliWord::weight() const noexcept {
  return static_cast<std::size_t>(std::count_if(word_.begin(), word_.end(), [](char c) { return c != 'I'; }));
}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms) : n_(num_qubits) {
  if (n_ == 0) throw ContractError("PauliSum needs at least one qubit");
  std::unordered_map<std::string, std::size_t> index;
  for (auto& t : terms) {
    if (t.word.num_qubits() != n_) {
      throw ContractError("Pauli word '" + t.word.str() + "' does not have " + std::to_string(n_) + " qubits");
    }
    auto [it, inserted] = index.try_emplace(t.word.str(), terms_.size());
    if (inserted) {
      terms_.push_back(std::move(t));
    } else {
      terms_[it->second].coefficient += t.coefficient;
    }
  }
  std::erase_if(terms_, [](const PauliTerm& t) { return std::abs(t.coefficient) < kDropThreshold; });
}

double PauliSum::coefficient_one_norm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

ComplexMatrix pauli_matrix(char letter) {
  switch (letter) {
    case 'I': return ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}};
    case 'X': return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case 'Y': return ComplexMatrix{{0.0, -kI}, {kI, 0.0}};
    case 'Z': return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    default: throw ParseError(std::string("invalid Pauli letter '") + letter + "'");
  }
}

ComplexMatrix word_matrix(const PauliWord& w) {
  // A Pauli word has one nonzero per row: flip the X/Y bits, collect a phase.
  const std::size_t n = w.num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t row = col;
    Complex amp = 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = (col >> q) & 1U;
      switch (w.on_qubit(q)) {
        case 'X': row ^= std::size_t{1} << q; break;
        case 'Y':
          row ^= std::size_t{1} << q;
          amp *= bit ? -kI : kI;
          break;
        case 'Z':
          if (bit) amp = -amp;
          break;
        default: break;
      }
    }
    m(row, col) = amp;
  }
  return m;
}

ComplexMatrix sum_matrix(const PauliSum& s) {
  const std::size_t dim = std::size_t{1} << s.num_qubits();
  ComplexMatrix m(dim, dim);
  for (const auto& t : s.terms()) m += t.coefficient * word_matrix(t.word);
  return m;
}

namespace {

ComplexMatrix jw_string(std::size_t j, std::size_t n, const ComplexMatrix& ladder) {
  if (j >= n) {
    throw ContractError("Jordan-Wigner index " + std::to_string(j) + " out of range for " +
                        std::to_string(n) + " qubits");
  }
  ComplexMatrix m = ComplexMatrix::identity(std::size_t{1} << (n - j - 1));
  m = kron(m, ladder);
  for (std::size_t k = 0; k < j; ++k) m = kron(m, pauli_matrix('Z'));
  return m;
}

}  // namespace

ComplexMatrix jw_annihilation(std::size_t j, std::size_t n) {
  return jw_string(j, n, ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}});  // |1><0|
}

ComplexMatrix jw_creation(std::size_t j, std::size_t n) {
  return jw_string(j, n, ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});  // |0><1|
}

std::string_view h2_pauli_text() { return kH2Text; }

PauliSum h2_hamiltonian() { return parse_pauli_text(kH2Text); }

NormalizedSum normalize_for_encoding(const PauliSum& s) {
  if (s.empty()) throw ContractError("cannot normalize an empty Pauli sum");
  const double scale = s.coefficient_one_norm();
  std::vector<PauliTerm> terms = s.terms();
  for (auto& t : terms) t.coefficient /= scale;
  return {PauliSum(s.num_qubits(), std::move(terms)), scale};
}

PauliSum parse_pauli_text(std::string_view text) {
  std::vector<PauliTerm> terms;
  std::size_t n = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() != 2) throw ParseError("expected '<coefficient> <word>'", line_no);

    double coeff = 0.0;
    const auto tok = tokens[0];
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), coeff);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(coeff)) {
      throw ParseError("bad coefficient '" + std::string(tok) + "'", line_no);
    }
    std::string word(tokens[1]);
    for (char c : word) {
      if (!is_pauli_letter(c)) throw ParseError("bad Pauli letter in '" + word + "'", line_no);
    }
    if (n == 0) {
      n = word.size();
    } else if (word.size() != n) {
      throw ParseError("word '" + word + "' has length " + std::to_string(word.size()) + ", expected " +
                           std::to_string(n),
                       line_no);
    }
    terms.push_back({coeff, PauliWord(std::move(word))});
    if (end == text.size()) break;
  }
  if (terms.empty()) throw ParseError("no Pauli terms found");
  return PauliSum(n, std::move(terms));
}

std::string format_pauli_text(const PauliSum& s) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : s.terms()) out << t.coefficient << ' ' << t.word.str() << '\n';
  return out.str();
}

}  // namespace tssim
