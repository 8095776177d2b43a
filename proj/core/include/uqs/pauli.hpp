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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace uqs {

/// Single-site Pauli operator. The numeric order I < X < Y < Z is the
/// canonical term order used by Hamiltonian.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Terms whose magnitude falls below this are dropped when merging.
inline constexpr double kPruneTolerance = 1e-14;

/// A real-weighted tensor product of single-site Paulis over a fixed number
/// of qubits. Site i of `ops()` acts on qubit i (bit i of a basis index).
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::vector<Pauli> ops, double coeff = 1.0);

  static PauliString identity(std::size_t n_qubits, double coeff = 1.0);
  /// Builds a string from (site, op) pairs, identity elsewhere.
  static PauliString from_sites(std::size_t n_qubits,
                                std::initializer_list<std::pair<std::size_t, Pauli>> sites,
                                double coeff = 1.0);
  /// Parses a compact label such as "XIZ" (site 0 first).
  static PauliString from_label(std::string_view label, double coeff = 1.0);

  std::size_t size() const { return ops_.size(); }
  Pauli operator[](std::size_t site) const { return ops_[site]; }
  const std::vector<Pauli>& ops() const { return ops_; }
  double coeff() const { return coeff_; }

  PauliString with_coeff(double coeff) const;
  /// Number of non-identity sites.
  std::size_t weight() const;
  /// Sites carrying a non-identity operator, ascending.
  std::vector<std::size_t> support() const;
  std::string label() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> ops_;
  double coeff_ = 1.0;
};

/// Lexicographic comparison of the operator sequences only (I<X<Y<Z).
bool ops_less(const PauliString& a, const PauliString& b);
bool same_ops(const PauliString& a, const PauliString& b);

/// The phase i^power, power in {0,1,2,3}.
struct Phase {
  int power = 0;

  std::complex<double> value() const;
  bool is_real() const { return power % 2 == 0; }
  friend bool operator==(const Phase&, const Phase&) = default;
};

struct PauliProduct {
  Phase phase;
  PauliString string;
};

/// p·q = phase · r, with r.coeff() = p.coeff()·q.coeff().
PauliProduct pauli_multiply(const PauliString& p, const PauliString& q);

/// True iff the operator parts of p and q commute.
bool commutes(const PauliString& p, const PauliString& q);

/// A Hermitian operator stored as a canonical list of Pauli strings: sorted by
/// `ops_less`, merged, and pruned of |coeff| < kPruneTolerance.
class Hamiltonian {
 public:
  explicit Hamiltonian(std::size_t n_qubits = 0);
  Hamiltonian(std::size_t n_qubits, std::vector<PauliString> terms);

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const PauliString> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of the term with the given operator sequence (0 if absent).
  double coefficient(const std::vector<Pauli>& ops) const;
  double coefficient(std::string_view label) const;

  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const;
  /// Largest number of non-identity sites over all terms.
  std::size_t max_weight() const;

  Hamiltonian& operator+=(const Hamiltonian& other);
  Hamiltonian& operator-=(const Hamiltonian& other);
  Hamiltonian& operator*=(double s);
  Hamiltonian& add_term(const PauliString& term);

  friend Hamiltonian operator+(Hamiltonian a, const Hamiltonian& b) { return a += b; }
  friend Hamiltonian operator-(Hamiltonian a, const Hamiltonian& b) { return a -= b; }
  friend Hamiltonian operator*(double s, Hamiltonian h) { return h *= s; }
  friend Hamiltonian operator*(Hamiltonian h, double s) { return h *= s; }

  /// Exact equality of canonical forms.
  friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;
  /// Equality with every coefficient difference at most `tol`.
  bool approx_equal(const Hamiltonian& other, double tol) const;

  /// Dense 2^N x 2^N matrix, little-endian (qubit 0 = least significant bit).
  Eigen::MatrixXcd to_dense() const;
  /// True when every dense entry is real (no odd count of Y on any term).
  bool is_real() const;

  /// One term per line: "coeff op_1 ... op_N".
  std::string to_text() const;
  /// Parses the text format; '#' starts a comment line. Throws ParseError.
  static Hamiltonian parse(std::string_view text);

 private:
  void canonicalize();

  std::size_t n_qubits_ = 0;
  std::vector<PauliString> terms_;
};

/// Dense matrix of a single Pauli string (including its coefficient).
Eigen::MatrixXcd dense_matrix(const PauliString& p);

/// A product of single-site ladder/Pauli operators with a complex weight.
/// Site characters: I, X, Y, Z, '+' (|1><0|), '-' (|0><1|).
struct LadderTerm {
  std::complex<double> coeff;
  std::string ops;
};

/// Expands ladder operators into the Pauli basis and sums. The result must be
/// Hermitian (all Pauli coefficients real within 1e-12) or this throws.
Hamiltonian from_ladder_terms(std::size_t n_qubits, std::span<const LadderTerm> terms);

/// [h1, h2] expanded in the Pauli basis. Every coefficient is imaginary; the
/// stored value is the imaginary part.
class Commutator {
 public:
  struct Term {
    double imag;
    PauliString ops;
  };

  Commutator(std::size_t n_qubits, std::vector<Term> terms)
      : n_qubits_(n_qubits), terms_(std::move(terms)) {}

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const Term> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// The Hermitian operator -i[h1, h2].
  Hamiltonian generator() const;
  Eigen::MatrixXcd to_dense() const;

 private:
  std::size_t n_qubits_;
  std::vector<Term> terms_;
};

Commutator commutator(const Hamiltonian& h1, const Hamiltonian& h2);

/// Real 3x3 coefficient matrix of a two-qubit interaction,
/// H = sum_{i,j in x,y,z} M(i,j) sigma_i (x) sigma_j.
struct CoeffMatrix {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();

  double operator()(int i, int j) const { return m(i, j); }
  bool is_symmetric(double tol) const;
  bool is_diagonal(double tol) const;
  friend bool operator==(const CoeffMatrix& a, const CoeffMatrix& b) { return a.m == b.m; }
};

struct TwoQubitDecomposition {
  CoeffMatrix interaction;
  /// Terms with at least one identity site (I(x)s, s(x)I, I(x)I).
  Hamiltonian local;
};

/// Splits a two-qubit Hamiltonian into its coefficient matrix and local part.
TwoQubitDecomposition coeff_matrix(const Hamiltonian& h);
/// Coefficient matrix of the (a, b) interaction inside an N-qubit Hamiltonian.
CoeffMatrix pair_coeff_matrix(const Hamiltonian& h, std::size_t a, std::size_t b);
/// Two-qubit Hamiltonian with the given coefficient matrix.
Hamiltonian from_coeff_matrix(const CoeffMatrix& m);
/// Embeds M on the qubit pair (a, b) of an N-qubit register.
Hamiltonian from_coeff_matrix(const CoeffMatrix& m, std::size_t n_qubits, std::size_t a,
                              std::size_t b);

}  // namespace uqs
