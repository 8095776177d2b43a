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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "uqs/pauli.hpp"
#include "uqs/statevector.hpp"

namespace uqs {

/// Largest register for dense diagonalization: 12 unless the environment
/// variable UQS_DENSE_CAP says otherwise.
std::size_t dense_cap();
/// Throws InvalidArgument when n_qubits exceeds dense_cap().
void check_dense_size(std::size_t n_qubits);

/// Full eigendecomposition of a Hamiltonian with eigenvalues grouped into
/// (possibly degenerate) levels. Real Hamiltonians use a real symmetric
/// solver.
class SpectrumCache {
 public:
  struct Level {
    double energy = 0.0;
    std::size_t begin = 0;
    std::size_t size = 0;
  };

  /// Eigenvalues join a level while they lie within `tol` of its lowest
  /// member.
  explicit SpectrumCache(const Hamiltonian& h, double tol = 1e-9);

  std::size_t n_qubits() const { return n_qubits_; }
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }
  const std::vector<Level>& levels() const { return levels_; }
  double tolerance() const { return tol_; }

  /// Orthonormal basis of one level, as columns.
  Eigen::MatrixXcd level_basis(std::size_t level) const;
  /// E_1 - E_0 between the two lowest levels (0 with a single level).
  double gap() const;
  /// exp(-i H t).
  Eigen::MatrixXcd evolution(double t) const;
  StateVector evolve(const StateVector& state, double t) const;

 private:
  std::size_t n_qubits_;
  double tol_;
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
  std::vector<Level> levels_;
};

/// exp(-i H t) as a dense matrix.
Eigen::MatrixXcd dense_exp(const Hamiltonian& h, double t);

StateVector exact_evolve(const Hamiltonian& h, double t, const StateVector& state);

struct GroundState {
  double energy = 0.0;
  StateVector state;
  std::size_t degeneracy = 1;
};

/// Lowest level of h. For a degenerate level the returned vector is the
/// normalized projection P|k> of the basis state k with the largest overlap
/// (first index on ties); it is independent of how the solver chose the
/// level's basis.
GroundState ground_state(const Hamiltonian& h, double tol = 1e-9);
GroundState ground_state(const SpectrumCache& spectrum);

/// |<psi|phi>|^2.
double fidelity(const StateVector& psi, const StateVector& phi);
/// ||P psi||^2 for the projector onto the span of the orthonormal columns.
double subspace_fidelity(const StateVector& psi, const Eigen::MatrixXcd& basis);

struct LevelWeight {
  double energy = 0.0;
  std::size_t degeneracy = 0;
  double weight = 0.0;
};

std::vector<LevelWeight> eigenspace_histogram(const StateVector& state, const SpectrumCache& spectrum);
std::vector<LevelWeight> eigenspace_histogram(const StateVector& state, const Hamiltonian& h,
                                              double tol = 1e-9);

/// Expectation values of each requested Pauli string.
std::vector<double> observables(const StateVector& state, const std::vector<PauliString>& requests);

/// min over phi of ||U - e^{i phi} V||_2, using phi = arg tr(V^dagger U).
double operator_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

}  // namespace uqs
