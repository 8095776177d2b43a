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

#include "uqs/spectrum.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "uqs/errors.hpp"

namespace uqs {

std::size_t dense_cap() {
  if (const char* env = std::getenv("UQS_DENSE_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 12;
}

void check_dense_size(std::size_t n_qubits) {
  if (n_qubits == 0) throw InvalidArgument("dense operations need at least one qubit");
  if (n_qubits > dense_cap()) {
    throw InvalidArgument(std::to_string(n_qubits) + " qubits exceeds the dense-matrix cap of " +
                          std::to_string(dense_cap()) + " (set UQS_DENSE_CAP to raise it)");
  }
}

SpectrumCache::SpectrumCache(const Hamiltonian& h, double tol) : n_qubits_(h.n_qubits()), tol_(tol) {
  check_dense_size(n_qubits_);
  if (!(tol >= 0.0)) throw InvalidArgument("degeneracy tolerance must be non-negative");
  const Eigen::MatrixXcd dense = h.to_dense();
  if (h.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense.real());
    if (eig.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
    values_ = eig.eigenvalues();
    vectors_ = eig.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense);
    if (eig.info() != Eigen::Success) throw NumericError("eigensolver failed to converge");
    values_ = eig.eigenvalues();
    vectors_ = eig.eigenvectors();
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (levels_.empty() || values_(i) - levels_.back().energy > tol_) {
      levels_.push_back({values_(i), k, 1});
    } else {
      ++levels_.back().size;
    }
  }
}

Eigen::MatrixXcd SpectrumCache::level_basis(std::size_t level) const {
  if (level >= levels_.size()) throw InvalidArgument("level index out of range");
  const auto& l = levels_[level];
  return vectors_.middleCols(static_cast<Eigen::Index>(l.begin), static_cast<Eigen::Index>(l.size));
}

double SpectrumCache::gap() const { return levels_.size() < 2 ? 0.0 : levels_[1].energy - levels_[0].energy; }

Eigen::MatrixXcd SpectrumCache::evolution(double t) const {
  const Eigen::VectorXcd phases =
      (values_ * t).unaryExpr([](double x) { return std::complex<double>(std::cos(x), -std::sin(x)); });
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

StateVector SpectrumCache::evolve(const StateVector& state, double t) const {
  if (state.n_qubits() != n_qubits_) throw InvalidArgument("state size does not match the Hamiltonian");
  const Eigen::VectorXcd coeffs = vectors_.adjoint() * state.amplitudes();
  const Eigen::VectorXcd phases =
      (values_ * t).unaryExpr([](double x) { return std::complex<double>(std::cos(x), -std::sin(x)); });
  return StateVector::from_amplitudes(n_qubits_, vectors_ * phases.cwiseProduct(coeffs));
}

Eigen::MatrixXcd dense_exp(const Hamiltonian& h, double t) { return SpectrumCache(h).evolution(t); }

StateVector exact_evolve(const Hamiltonian& h, double t, const StateVector& state) {
  return SpectrumCache(h).evolve(state, t);
}

GroundState ground_state(const SpectrumCache& spectrum) {
  const Eigen::MatrixXcd basis = spectrum.level_basis(0);
  // Diagonal of the projector onto the ground level.
  const Eigen::VectorXd diag = basis.rowwise().squaredNorm();
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < diag.size(); ++k) {
    if (diag(k) > diag(best) + 1e-12) best = k;
  }
  Eigen::VectorXcd v = basis * basis.row(best).adjoint();
  v /= v.norm();
  GroundState g;
  g.energy = spectrum.levels().front().energy;
  g.degeneracy = spectrum.levels().front().size;
  g.state = StateVector::from_amplitudes(spectrum.n_qubits(), std::move(v));
  return g;
}

GroundState ground_state(const Hamiltonian& h, double tol) { return ground_state(SpectrumCache(h, tol)); }

double fidelity(const StateVector& psi, const StateVector& phi) { return std::norm(psi.inner(phi)); }

double subspace_fidelity(const StateVector& psi, const Eigen::MatrixXcd& basis) {
  if (basis.rows() != psi.amplitudes().size()) throw InvalidArgument("basis size does not match the state");
  return (basis.adjoint() * psi.amplitudes()).squaredNorm();
}

std::vector<LevelWeight> eigenspace_histogram(const StateVector& state, const SpectrumCache& spectrum) {
  if (state.n_qubits() != spectrum.n_qubits()) throw InvalidArgument("state size does not match the spectrum");
  const Eigen::VectorXcd coeffs = spectrum.eigenvectors().adjoint() * state.amplitudes();
  std::vector<LevelWeight> out;
  out.reserve(spectrum.levels().size());
  for (const auto& l : spectrum.levels()) {
    const double w =
        coeffs.segment(static_cast<Eigen::Index>(l.begin), static_cast<Eigen::Index>(l.size)).squaredNorm();
    out.push_back({l.energy, l.size, w});
  }
  return out;
}

std::vector<LevelWeight> eigenspace_histogram(const StateVector& state, const Hamiltonian& h, double tol) {
  return eigenspace_histogram(state, SpectrumCache(h, tol));
}

std::vector<double> observables(const StateVector& state, const std::vector<PauliString>& requests) {
  std::vector<double> out;
  out.reserve(requests.size());
  for (const auto& p : requests) out.push_back(expectation(state, p));
  return out;
}

double operator_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw InvalidArgument("operator_distance: size mismatch");
  const std::complex<double> overlap = (v.adjoint() * u).trace();
  const std::complex<double> phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
  const Eigen::MatrixXcd diff = u - phase * v;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace uqs
