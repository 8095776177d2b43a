// Copyright 2026 The UQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uqs/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "uqs/errors.hpp"

namespace uqs {

namespace {

constexpr double kHermiticityTolerance = 1e-12;

int index_of(Pauli p) { return static_cast<int>(p); }

// Phase exponent (power of i) of the single-site product a*b.
int site_phase(Pauli a, Pauli b) {
  if (a == Pauli::I || b == Pauli::I || a == b) return 0;
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  int diff = (index_of(b) - index_of(a) + 3) % 3;
  return diff == 1 ? 1 : 3;
}

Pauli site_product(Pauli a, Pauli b) {
  return static_cast<Pauli>(index_of(a) ^ index_of(b));
}

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": size mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[index_of(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw InvalidArgument(std::string("not a Pauli operator: '") + c + "'");
  }
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(std::vector<Pauli> ops, double coeff)
    : ops_(std::move(ops)), coeff_(coeff) {
  if (!std::isfinite(coeff_)) throw InvalidArgument("PauliString: coefficient is not finite");
}

PauliString PauliString::identity(std::size_t n_qubits, double coeff) {
  return PauliString(std::vector<Pauli>(n_qubits, Pauli::I), coeff);
}

PauliString PauliString::from_sites(std::size_t n_qubits,
                                    std::initializer_list<std::pair<std::size_t, Pauli>> sites,
                                    double coeff) {
  std::vector<Pauli> ops(n_qubits, Pauli::I);
  for (auto [site, op] : sites) {
    if (site >= n_qubits) throw InvalidArgument("PauliString: site index out of range");
    ops[site] = op;
  }
  return PauliString(std::move(ops), coeff);
}

PauliString PauliString::from_label(std::string_view label, double coeff) {
  std::vector<Pauli> ops;
  ops.reserve(label.size());
  for (char c : label) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops), coeff);
}

PauliString PauliString::with_coeff(double coeff) const { return PauliString(ops_, coeff); }

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i] != Pauli::I) out.push_back(i);
  }
  return out;
}

std::string PauliString::label() const {
  std::string s;
  s.reserve(ops_.size());
  for (Pauli p : ops_) s.push_back(to_char(p));
  return s;
}

bool ops_less(const PauliString& a, const PauliString& b) { return a.ops() < b.ops(); }
bool same_ops(const PauliString& a, const PauliString& b) { return a.ops() == b.ops(); }

std::complex<double> Phase::value() const {
  switch (((power % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliProduct pauli_multiply(const PauliString& p, const PauliString& q) {
  check_same_size(p.size(), q.size(), "pauli_multiply");
  std::vector<Pauli> ops(p.size());
  int power = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    power += site_phase(p[i], q[i]);
    ops[i] = site_product(p[i], q[i]);
  }
  return {Phase{power % 4}, PauliString(std::move(ops), p.coeff() * q.coeff())};
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_same_size(p.size(), q.size(), "commutes");
  std::size_t anti = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != Pauli::I && q[i] != Pauli::I && p[i] != q[i]) ++anti;
  }
  return anti % 2 == 0;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  const std::size_t n = p.size();
  const std::size_t dim = std::size_t{1} << n;
  std::size_t flip = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (p[q] == Pauli::X || p[q] == Pauli::Y) flip |= std::size_t{1} << q;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::complex<double> amp = p.coeff();
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = (k >> q) & 1u;
      switch (p[q]) {
        case Pauli::Y: amp *= bit ? std::complex<double>(0, -1) : std::complex<double>(0, 1); break;
        case Pauli::Z: if (bit) amp = -amp; break;
        default: break;
      }
    }
    m(k ^ flip, k) = amp;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Hamiltonian

Hamiltonian::Hamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {}

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<PauliString> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  for (const auto& t : terms_) check_same_size(t.size(), n_qubits_, "Hamiltonian");
  canonicalize();
}

void Hamiltonian::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(), ops_less);
  std::vector<PauliString> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && same_ops(merged.back(), t)) {
      merged.back() = merged.back().with_coeff(merged.back().coeff() + t.coeff());
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PauliString& t) { return std::abs(t.coeff()) < kPruneTolerance; });
  terms_ = std::move(merged);
}

double Hamiltonian::coefficient(const std::vector<Pauli>& ops) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), ops,
                             [](const PauliString& t, const std::vector<Pauli>& o) { return t.ops() < o; });
  if (it != terms_.end() && it->ops() == ops) return it->coeff();
  return 0.0;
}

double Hamiltonian::coefficient(std::string_view label) const {
  return coefficient(PauliString::from_label(label).ops());
}

double Hamiltonian::coefficient_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coeff() * t.coeff();
  return std::sqrt(s);
}

std::size_t Hamiltonian::max_weight() const {
  std::size_t w = 0;
  for (const auto& t : terms_) w = std::max(w, t.weight());
  return w;
}

Hamiltonian& Hamiltonian::operator+=(const Hamiltonian& other) {
  if (n_qubits_ == 0 && terms_.empty()) n_qubits_ = other.n_qubits_;
  check_same_size(n_qubits_, other.n_qubits_, "Hamiltonian::operator+=");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

Hamiltonian& Hamiltonian::operator-=(const Hamiltonian& other) { return *this += (-1.0) * other; }

Hamiltonian& Hamiltonian::operator*=(double s) {
  for (auto& t : terms_) t = t.with_coeff(t.coeff() * s);
  canonicalize();
  return *this;
}

Hamiltonian& Hamiltonian::add_term(const PauliString& term) {
  check_same_size(term.size(), n_qubits_, "Hamiltonian::add_term");
  terms_.push_back(term);
  canonicalize();
  return *this;
}

bool Hamiltonian::approx_equal(const Hamiltonian& other, double tol) const {
  if (n_qubits_ != other.n_qubits_) return false;
  Hamiltonian diff = *this - other;
  for (const auto& t : diff.terms()) {
    if (std::abs(t.coeff()) > tol) return false;
  }
  return true;
}

Eigen::MatrixXcd Hamiltonian::to_dense() const {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) m += dense_matrix(t);
  return m;
}

bool Hamiltonian::is_real() const {
  for (const auto& t : terms_) {
    auto ys = std::count(t.ops().begin(), t.ops().end(), Pauli::Y);
    if (ys % 2 != 0) return false;
  }
  return true;
}

std::string Hamiltonian::to_text() const {
  std::ostringstream out;
  out << "# qubits: " << n_qubits_ << "\n";
  for (const auto& t : terms_) {
    out << format_double(t.coeff());
    for (Pauli p : t.ops()) out << ' ' << to_char(p);
    out << '\n';
  }
  return out.str();
}

Hamiltonian Hamiltonian::parse(std::string_view text) {
  std::vector<PauliString> terms;
  std::size_t n_qubits = 0;
  bool have_size = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    if (line[first] == '#') {
      constexpr std::string_view kHint = "# qubits:";
      if (line.substr(first).starts_with(kHint) && !have_size) {
        std::string_view rest = line.substr(first + kHint.size());
        rest.remove_prefix(std::min(rest.find_first_not_of(' '), rest.size()));
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
        if (ec == std::errc()) {
          n_qubits = n;
          have_size = true;
        }
      }
      if (end == text.size()) break;
      continue;
    }

    // Tokenize on whitespace, remembering columns.
    std::vector<std::pair<std::size_t, std::string_view>> tokens;
    std::size_t i = first;
    while (i < line.size()) {
      std::size_t j = line.find_first_of(" \t\r", i);
      if (j == std::string_view::npos) j = line.size();
      tokens.emplace_back(i + 1, line.substr(i, j - i));
      i = line.find_first_not_of(" \t\r", j);
      if (i == std::string_view::npos) break;
    }

    const auto& [coeff_col, coeff_tok] = tokens.front();
    std::string coeff_str(coeff_tok);
    char* parse_end = nullptr;
    double coeff = std::strtod(coeff_str.c_str(), &parse_end);
    if (parse_end != coeff_str.c_str() + coeff_str.size() || !std::isfinite(coeff)) {
      throw ParseError(line_no, coeff_col, "expected a finite coefficient, got '" + coeff_str + "'");
    }
    std::vector<Pauli> ops;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const auto& [col, tok] = tokens[k];
      if (tok.size() != 1 || std::string_view("IXYZ").find(tok[0]) == std::string_view::npos) {
        throw ParseError(line_no, col, "expected one of I, X, Y, Z, got '" + std::string(tok) + "'");
      }
      ops.push_back(pauli_from_char(tok[0]));
    }
    if (ops.empty()) throw ParseError(line_no, coeff_col + coeff_tok.size(), "term has no operators");
    if (!have_size) {
      n_qubits = ops.size();
      have_size = true;
    } else if (ops.size() != n_qubits) {
      throw ParseError(line_no, tokens.back().first,
                       "expected " + std::to_string(n_qubits) + " operators, got " +
                           std::to_string(ops.size()));
    }
    terms.emplace_back(std::move(ops), coeff);
    if (end == text.size()) break;
  }
  return Hamiltonian(n_qubits, std::move(terms));
}

// ---------------------------------------------------------------------------
// Ladder-operator ingestion

Hamiltonian from_ladder_terms(std::size_t n_qubits, std::span<const LadderTerm> terms) {
  using Complex = std::complex<double>;
  const Complex half(0.5, 0.0);
  const Complex half_i(0.0, 0.5);
  std::map<std::vector<Pauli>, Complex> acc;

  for (const auto& term : terms) {
    check_same_size(term.ops.size(), n_qubits, "from_ladder_terms");
    std::vector<std::pair<std::vector<Pauli>, Complex>> partial{{{}, term.coeff}};
    for (char c : term.ops) {
      // |1><0| = (X - iY)/2, |0><1| = (X + iY)/2.
      std::vector<std::pair<Pauli, Complex>> site;
      switch (c) {
        case '+': site = {{Pauli::X, half}, {Pauli::Y, -half_i}}; break;
        case '-': site = {{Pauli::X, half}, {Pauli::Y, half_i}}; break;
        default: site = {{pauli_from_char(c), Complex(1.0, 0.0)}}; break;
      }
      std::vector<std::pair<std::vector<Pauli>, Complex>> next;
      next.reserve(partial.size() * site.size());
      for (const auto& [ops, w] : partial) {
        for (const auto& [p, sw] : site) {
          auto grown = ops;
          grown.push_back(p);
          next.emplace_back(std::move(grown), w * sw);
        }
      }
      partial = std::move(next);
    }
    for (auto& [ops, w] : partial) acc[ops] += w;
  }

  std::vector<PauliString> out;
  for (const auto& [ops, w] : acc) {
    if (std::abs(w.imag()) > kHermiticityTolerance) {
      throw InvalidArgument("from_ladder_terms: operator is not Hermitian (imaginary Pauli weight on " +
                            PauliString(ops).label() + ")");
    }
    out.emplace_back(ops, w.real());
  }
  return Hamiltonian(n_qubits, std::move(out));
}

// ---------------------------------------------------------------------------
// Commutators

Commutator commutator(const Hamiltonian& h1, const Hamiltonian& h2) {
  check_same_size(h1.n_qubits(), h2.n_qubits(), "commutator");
  std::map<std::vector<Pauli>, double> acc;
  for (const auto& p : h1.terms()) {
    for (const auto& q : h2.terms()) {
      if (commutes(p, q)) continue;
      // Anticommuting: [P, Q] = 2 P Q = 2 (+-i) R.
      auto prod = pauli_multiply(p, q);
      const double sign = prod.phase.power == 1 ? 1.0 : -1.0;
      acc[prod.string.ops()] += 2.0 * sign * prod.string.coeff();
    }
  }
  std::vector<Commutator::Term> terms;
  for (const auto& [ops, imag] : acc) {
    if (std::abs(imag) >= kPruneTolerance) terms.push_back({imag, PauliString(ops)});
  }
  return Commutator(h1.n_qubits(), std::move(terms));
}

Hamiltonian Commutator::generator() const {
  // -i * (i * imag) = imag
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.ops.with_coeff(t.imag));
  return Hamiltonian(n_qubits_, std::move(out));
}

Eigen::MatrixXcd Commutator::to_dense() const {
  return std::complex<double>(0.0, 1.0) * generator().to_dense();
}

// ---------------------------------------------------------------------------
// Coefficient matrices

bool CoeffMatrix::is_symmetric(double tol) const {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool CoeffMatrix::is_diagonal(double tol) const {
  Eigen::Matrix3d off = m;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= tol;
}

TwoQubitDecomposition coeff_matrix(const Hamiltonian& h) {
  if (h.n_qubits() != 2) {
    throw InvalidArgument("coeff_matrix: expected a two-qubit Hamiltonian, got " +
                          std::to_string(h.n_qubits()) + " qubits");
  }
  TwoQubitDecomposition out{CoeffMatrix{}, Hamiltonian(2)};
  std::vector<PauliString> local;
  for (const auto& t : h.terms()) {
    if (t.weight() > 2) throw InvalidArgument("coeff_matrix: term with more than 2 non-identity sites");
    if (t[0] != Pauli::I && t[1] != Pauli::I) {
      out.interaction.m(index_of(t[0]) - 1, index_of(t[1]) - 1) = t.coeff();
    } else {
      local.push_back(t);
    }
  }
  out.local = Hamiltonian(2, std::move(local));
  return out;
}

CoeffMatrix pair_coeff_matrix(const Hamiltonian& h, std::size_t a, std::size_t b) {
  if (a >= h.n_qubits() || b >= h.n_qubits() || a == b) {
    throw InvalidArgument("pair_coeff_matrix: invalid qubit pair");
  }
  CoeffMatrix out;
  for (const auto& t : h.terms()) {
    if (t.weight() != 2 || t[a] == Pauli::I || t[b] == Pauli::I) continue;
    out.m(index_of(t[a]) - 1, index_of(t[b]) - 1) = t.coeff();
  }
  return out;
}

Hamiltonian from_coeff_matrix(const CoeffMatrix& m) { return from_coeff_matrix(m, 2, 0, 1); }

Hamiltonian from_coeff_matrix(const CoeffMatrix& m, std::size_t n_qubits, std::size_t a,
                              std::size_t b) {
  if (a >= n_qubits || b >= n_qubits || a == b) {
    throw InvalidArgument("from_coeff_matrix: invalid qubit pair");
  }
  static constexpr Pauli kAxes[] = {Pauli::X, Pauli::Y, Pauli::Z};
  std::vector<PauliString> terms;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (m.m(i, j) == 0.0) continue;
      std::vector<Pauli> ops(n_qubits, Pauli::I);
      ops[a] = kAxes[i];
      ops[b] = kAxes[j];
      terms.emplace_back(std::move(ops), m.m(i, j));
    }
  }
  return Hamiltonian(n_qubits, std::move(terms));
}

}  // namespace uqs
