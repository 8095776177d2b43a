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
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "uqs/pauli.hpp"

namespace uqs {

inline constexpr double kUnitarityTolerance = 1e-12;

using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

/// u = e^{i phase} exp(-i angle (axis . sigma)), with angle in [0, pi/2].
///
/// The branch is the shortest rotation: any SU(2) element and its negative
/// describe the same Bloch rotation, and the one with non-negative trace has
/// the smaller angle. Timing jitter is modeled by stretching `angle`.
struct AxisAngle {
  double phase = 0.0;
  double angle = 0.0;
  Vec3 axis = Vec3::UnitZ();
};

class SingleQubitUnitary {
 public:
  SingleQubitUnitary() : m_(Mat2::Identity()) {}
  /// Throws NumericError unless U^dagger U = 1 within kUnitarityTolerance.
  explicit SingleQubitUnitary(const Mat2& m);

  static SingleQubitUnitary identity() { return {}; }
  static SingleQubitUnitary pauli(Pauli p);
  /// exp(-i angle (axis . sigma)); axis must be a unit vector.
  static SingleQubitUnitary rotation(const Vec3& axis, double angle);

  const Mat2& matrix() const { return m_; }
  SingleQubitUnitary adjoint() const;
  bool is_identity(double tol = 1e-14) const;

  AxisAngle axis_angle() const;
  /// Same axis and phase, angle multiplied by `factor`.
  SingleQubitUnitary stretched(double factor) const;

  /// R with u sigma_i u^dagger = sum_j R(i, j) sigma_j (i, j over x, y, z).
  Eigen::Matrix3d adjoint_action() const;

  friend SingleQubitUnitary operator*(const SingleQubitUnitary& a, const SingleQubitUnitary& b);

 private:
  struct Unchecked {};
  SingleQubitUnitary(const Mat2& m, Unchecked) : m_(m) {}

  Mat2 m_;
};

/// One time slice of fast local control: the same unitary on every qubit, or
/// an independent unitary per qubit.
class LocalLayer {
 public:
  LocalLayer() = default;

  static LocalLayer homogeneous(SingleQubitUnitary u);
  static LocalLayer inhomogeneous(std::vector<SingleQubitUnitary> us);
  static LocalLayer identity() { return {}; }

  bool is_homogeneous() const { return per_qubit_.empty(); }
  /// Number of qubits for inhomogeneous layers; empty for homogeneous ones.
  std::optional<std::size_t> size() const;
  const SingleQubitUnitary& on(std::size_t qubit) const;
  /// Throws InvalidArgument when an inhomogeneous layer has the wrong length.
  void check_size(std::size_t n_qubits) const;

  LocalLayer adjoint() const;
  /// The layer equal to applying *this first and then `next`.
  LocalLayer then(const LocalLayer& next) const;
  bool is_identity(double tol = 1e-14) const;

  /// Dense 2^N tensor-product matrix (test and oracle use).
  Eigen::MatrixXcd to_dense(std::size_t n_qubits) const;

 private:
  SingleQubitUnitary uniform_;
  std::vector<SingleQubitUnitary> per_qubit_;
};

/// V h V^dagger re-expanded in the Pauli basis.
Hamiltonian conjugate(const Hamiltonian& h, const LocalLayer& layer);

/// (1 - i sigma)/sqrt(2) for sigma in {X, Y, Z}: a quarter turn about that axis.
SingleQubitUnitary quarter_turn(Pauli axis, int sign = +1);

}  // namespace uqs
