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

#include "uqs/unitary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "uqs/errors.hpp"

namespace uqs {

namespace {

using Complex = std::complex<double>;

const std::array<Mat2, 3>& sigmas() {
  static const std::array<Mat2, 3> kSigma = [] {
    std::array<Mat2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return kSigma;
}

// Entries this close to 0 or +-1 are rounded so Clifford conjugations stay exact.
double snap(double v) {
  constexpr double kSnap = 4e-16;
  if (std::abs(v) < kSnap) return 0.0;
  if (std::abs(v - 1.0) < kSnap) return 1.0;
  if (std::abs(v + 1.0) < kSnap) return -1.0;
  return v;
}

}  // namespace

SingleQubitUnitary::SingleQubitUnitary(const Mat2& m) : m_(m) {
  if (!m_.allFinite()) throw NumericError("SingleQubitUnitary: non-finite entries");
  const double dev = (m_.adjoint() * m_ - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (dev > kUnitarityTolerance) {
    throw NumericError("SingleQubitUnitary: matrix is not unitary (deviation " +
                       std::to_string(dev) + ")");
  }
}

SingleQubitUnitary SingleQubitUnitary::pauli(Pauli p) {
  if (p == Pauli::I) return identity();
  return SingleQubitUnitary(sigmas()[static_cast<int>(p) - 1], Unchecked{});
}

SingleQubitUnitary SingleQubitUnitary::rotation(const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("SingleQubitUnitary::rotation: axis is not a unit vector");
  }
  const auto& s = sigmas();
  const Mat2 ns = axis.x() * s[0] + axis.y() * s[1] + axis.z() * s[2];
  Mat2 u = std::cos(angle) * Mat2::Identity() - Complex(0, std::sin(angle)) * ns;
  return SingleQubitUnitary(u, Unchecked{});
}

SingleQubitUnitary SingleQubitUnitary::adjoint() const {
  return SingleQubitUnitary(m_.adjoint(), Unchecked{});
}

bool SingleQubitUnitary::is_identity(double tol) const {
  return (m_ - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

AxisAngle SingleQubitUnitary::axis_angle() const {
  const Complex det = m_.determinant();
  double phase = std::arg(det) / 2.0;
  Mat2 v = m_ * std::exp(Complex(0, -phase));
  if (v.trace().real() < 0.0) {
    v = -v;
    phase += std::numbers::pi;
  }
  // v = cos(a) 1 - i sin(a) n.sigma
  const double c = v.trace().real() / 2.0;
  Vec3 s(-(v(0, 1) + v(1, 0)).imag() / 2.0, (v(1, 0) - v(0, 1)).real() / 2.0,
         -(v(0, 0) - v(1, 1)).imag() / 2.0);
  const double sn = s.norm();
  AxisAngle out;
  out.phase = phase;
  if (sn < 1e-300) return out;
  out.angle = std::atan2(sn, c);
  out.axis = s / sn;
  return out;
}

SingleQubitUnitary SingleQubitUnitary::stretched(double factor) const {
  const AxisAngle aa = axis_angle();
  SingleQubitUnitary r = rotation(aa.axis, aa.angle * factor);
  return SingleQubitUnitary(r.m_ * std::exp(Complex(0, aa.phase)), Unchecked{});
}

Eigen::Matrix3d SingleQubitUnitary::adjoint_action() const {
  const auto& s = sigmas();
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i) {
    const Mat2 rotated = m_ * s[i] * m_.adjoint();
    for (int j = 0; j < 3; ++j) r(i, j) = snap(0.5 * (s[j] * rotated).trace().real());
  }
  return r;
}

SingleQubitUnitary operator*(const SingleQubitUnitary& a, const SingleQubitUnitary& b) {
  return SingleQubitUnitary(a.m_ * b.m_, SingleQubitUnitary::Unchecked{});
}

SingleQubitUnitary quarter_turn(Pauli axis, int sign) {
  if (axis == Pauli::I) throw InvalidArgument("quarter_turn: axis must be X, Y or Z");
  Vec3 n = Vec3::Zero();
  n(static_cast<int>(axis) - 1) = 1.0;
  return SingleQubitUnitary::rotation(n, sign * std::numbers::pi / 4.0);
}

// ---------------------------------------------------------------------------
// LocalLayer

LocalLayer LocalLayer::homogeneous(SingleQubitUnitary u) {
  LocalLayer l;
  l.uniform_ = std::move(u);
  return l;
}

LocalLayer LocalLayer::inhomogeneous(std::vector<SingleQubitUnitary> us) {
  if (us.empty()) throw InvalidArgument("LocalLayer::inhomogeneous: empty layer");
  LocalLayer l;
  l.per_qubit_ = std::move(us);
  return l;
}

std::optional<std::size_t> LocalLayer::size() const {
  if (is_homogeneous()) return std::nullopt;
  return per_qubit_.size();
}

const SingleQubitUnitary& LocalLayer::on(std::size_t qubit) const {
  if (is_homogeneous()) return uniform_;
  if (qubit >= per_qubit_.size()) throw InvalidArgument("LocalLayer::on: qubit out of range");
  return per_qubit_[qubit];
}

void LocalLayer::check_size(std::size_t n_qubits) const {
  if (!is_homogeneous() && per_qubit_.size() != n_qubits) {
    throw InvalidArgument("LocalLayer: layer has " + std::to_string(per_qubit_.size()) +
                          " unitaries for " + std::to_string(n_qubits) + " qubits");
  }
}

LocalLayer LocalLayer::adjoint() const {
  if (is_homogeneous()) return homogeneous(uniform_.adjoint());
  std::vector<SingleQubitUnitary> us;
  us.reserve(per_qubit_.size());
  for (const auto& u : per_qubit_) us.push_back(u.adjoint());
  return inhomogeneous(std::move(us));
}

LocalLayer LocalLayer::then(const LocalLayer& next) const {
  if (is_homogeneous() && next.is_homogeneous()) return homogeneous(next.uniform_ * uniform_);
  const std::size_t n = std::max(per_qubit_.size(), next.per_qubit_.size());
  if (!is_homogeneous() && !next.is_homogeneous() && per_qubit_.size() != next.per_qubit_.size()) {
    throw InvalidArgument("LocalLayer::then: layer sizes differ");
  }
  std::vector<SingleQubitUnitary> us;
  us.reserve(n);
  for (std::size_t q = 0; q < n; ++q) us.push_back(next.on(q) * on(q));
  return inhomogeneous(std::move(us));
}

bool LocalLayer::is_identity(double tol) const {
  if (is_homogeneous()) return uniform_.is_identity(tol);
  for (const auto& u : per_qubit_) {
    if (!u.is_identity(tol)) return false;
  }
  return true;
}

Eigen::MatrixXcd LocalLayer::to_dense(std::size_t n_qubits) const {
  check_size(n_qubits);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  // Kronecker order: highest qubit leftmost.
  for (std::size_t q = n_qubits; q-- > 0;) {
    const Mat2& u = on(q).matrix();
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        next.block<2, 2>(2 * i, 2 * j) = m(i, j) * u;
      }
    }
    m = std::move(next);
  }
  return m;
}

Hamiltonian conjugate(const Hamiltonian& h, const LocalLayer& layer) {
  layer.check_size(h.n_qubits());
  const std::size_t n = h.n_qubits();
  std::vector<Eigen::Matrix3d> action(n);
  if (layer.is_homogeneous()) {
    std::fill(action.begin(), action.end(), layer.on(0).adjoint_action());
  } else {
    for (std::size_t q = 0; q < n; ++q) action[q] = layer.on(q).adjoint_action();
  }

  static constexpr Pauli kAxes[] = {Pauli::X, Pauli::Y, Pauli::Z};
  std::vector<PauliString> out;
  for (const auto& term : h.terms()) {
    std::vector<std::pair<std::vector<Pauli>, double>> partial{{term.ops(), term.coeff()}};
    for (std::size_t q : term.support()) {
      const int i = static_cast<int>(term[q]) - 1;
      std::vector<std::pair<std::vector<Pauli>, double>> next;
      for (const auto& [ops, w] : partial) {
        for (int j = 0; j < 3; ++j) {
          const double r = action[q](i, j);
          if (r == 0.0) continue;
          auto grown = ops;
          grown[q] = kAxes[j];
          next.emplace_back(std::move(grown), w * r);
        }
      }
      partial = std::move(next);
    }
    for (auto& [ops, w] : partial) out.emplace_back(std::move(ops), w);
  }
  return Hamiltonian(n, std::move(out));
}

}  // namespace uqs
