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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uqs/errors.hpp"
#include "uqs/unitary.hpp"

namespace {

using uqs::Hamiltonian;
using uqs::LocalLayer;
using uqs::Pauli;
using uqs::PauliString;
using uqs::SingleQubitUnitary;
using uqs::Vec3;

oracle::Matrix quarter(char axis, int sign) {
  // (1 - i sign sigma) / sqrt(2)
  return (oracle::Matrix::Identity(2, 2) - std::complex<double>(0, sign) * oracle::pauli(axis)) / std::sqrt(2.0);
}

TEST(SingleQubit, RejectsNonUnitary) {
  uqs::Mat2 m;
  m << 1, 0, 0, 2;
  EXPECT_THROW(SingleQubitUnitary{m}, uqs::NumericError);
}

TEST(SingleQubit, RotationMatchesExponential) {
  const Vec3 axis = Vec3(1, 2, -2).normalized();
  const double angle = 0.83;
  const auto u = SingleQubitUnitary::rotation(axis, angle);
  const oracle::Matrix gen = axis.x() * oracle::pauli('X') + axis.y() * oracle::pauli('Y') + axis.z() * oracle::pauli('Z');
  EXPECT_LT((oracle::Matrix(u.matrix()) - oracle::expm(gen, angle)).norm(), 1e-13);
  EXPECT_THROW(SingleQubitUnitary::rotation(Vec3(1, 1, 0), 0.1), uqs::InvalidArgument);
}

TEST(SingleQubit, AxisAngleRecoversRotation) {
  const Vec3 axis = Vec3(-0.3, 0.4, 0.5).normalized();
  const auto u = SingleQubitUnitary::rotation(axis, 1.1);
  const auto aa = u.axis_angle();
  const auto back = SingleQubitUnitary::rotation(aa.axis, aa.angle);
  const oracle::Matrix phased = std::polar(1.0, aa.phase) * oracle::Matrix(back.matrix());
  EXPECT_LT((phased - oracle::Matrix(u.matrix())).norm(), 1e-12);
}

TEST(SingleQubit, StretchScalesAngle) {
  const auto u = SingleQubitUnitary::rotation(Vec3::UnitX(), 0.4);
  const auto s = u.stretched(1.5);
  EXPECT_LT((oracle::Matrix(s.matrix()) - oracle::expm(oracle::pauli('X'), 0.6)).norm(), 1e-12);
}

TEST(SingleQubit, AdjointActionOfQuarterTurns) {
  // Quarter turn about x with sign +1 sends Z to -Y; about y it sends Z to X.
  const auto rx = uqs::quarter_turn(Pauli::X, +1).adjoint_action();
  EXPECT_NEAR(rx(2, 1), -1.0, 1e-15);
  const auto ry = uqs::quarter_turn(Pauli::Y, +1).adjoint_action();
  EXPECT_NEAR(ry(2, 0), 1.0, 1e-15);
  const auto rxm = uqs::quarter_turn(Pauli::X, -1).adjoint_action();
  EXPECT_NEAR(rxm(2, 1), 1.0, 1e-15);
  EXPECT_LT((oracle::Matrix(uqs::quarter_turn(Pauli::X, +1).matrix()) - quarter('X', +1)).norm(), 1e-15);
}

TEST(SingleQubit, AdjointActionMatchesDenseConjugation) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-1, 1);
  const char axes[] = {'X', 'Y', 'Z'};
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = SingleQubitUnitary::rotation(Vec3(d(rng), d(rng), d(rng)).normalized(), 3 * d(rng));
    const auto r = u.adjoint_action();
    const oracle::Matrix m = u.matrix();
    for (int i = 0; i < 3; ++i) {
      const oracle::Matrix conj = m * oracle::pauli(axes[i]) * m.adjoint();
      for (int j = 0; j < 3; ++j) {
        const double coeff = 0.5 * (oracle::pauli(axes[j]) * conj).trace().real();
        EXPECT_NEAR(r(i, j), coeff, 1e-12);
      }
    }
  }
}

TEST(LocalLayer, ThenComposesInOrder) {
  const auto a = LocalLayer::homogeneous(SingleQubitUnitary::rotation(Vec3::UnitX(), 0.3));
  const auto b = LocalLayer::inhomogeneous(
      {SingleQubitUnitary::rotation(Vec3::UnitY(), 0.2), SingleQubitUnitary::rotation(Vec3::UnitZ(), 0.9)});
  const oracle::Matrix composed = a.then(b).to_dense(2);
  EXPECT_LT((composed - b.to_dense(2) * a.to_dense(2)).norm(), 1e-13);
  EXPECT_TRUE(a.then(a.adjoint()).is_identity(1e-13));
  EXPECT_THROW(b.check_size(3), uqs::InvalidArgument);
}

TEST(LocalLayer, HomogeneousDenseIsTensorPower) {
  const auto u = uqs::quarter_turn(Pauli::Y, +1);
  const oracle::Matrix one = u.matrix();
  const oracle::Matrix expect = Eigen::kroneckerProduct(one, Eigen::kroneckerProduct(one, one).eval()).eval();
  EXPECT_LT((LocalLayer::homogeneous(u).to_dense(3) - expect).norm(), 1e-14);
}

TEST(Conjugate, QuarterTurnSendsZZtoYY) {
  const Hamiltonian zz(2, {PauliString::from_label("ZZ", 1.5)});
  const Hamiltonian out = uqs::conjugate(zz, LocalLayer::homogeneous(uqs::quarter_turn(Pauli::X)));
  EXPECT_EQ(out.size(), 1u);
  EXPECT_NEAR(out.coefficient("YY"), 1.5, 1e-15);
}

TEST(Conjugate, MatchesDenseConjugationAndPreservesInvariants) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-1, 1);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t n = 1; n <= 4; ++n) {
    Hamiltonian h(n);
    for (int k = 0; k < 6; ++k) {
      std::string label;
      for (std::size_t s = 0; s < n; ++s) label.push_back(letters[rng() % 4]);
      h.add_term(PauliString::from_label(label, d(rng)));
    }
    std::vector<SingleQubitUnitary> us;
    for (std::size_t s = 0; s < n; ++s)
      us.push_back(SingleQubitUnitary::rotation(Vec3(d(rng), d(rng), d(rng)).normalized(), 2 * d(rng)));
    const auto layer = LocalLayer::inhomogeneous(us);
    const Hamiltonian out = uqs::conjugate(h, layer);
    const oracle::Matrix v = layer.to_dense(n);
    const oracle::Matrix expect = v * h.to_dense() * v.adjoint();
    EXPECT_LT((out.to_dense() - expect).norm(), 1e-12);
    EXPECT_NEAR(out.coefficient_norm(), h.coefficient_norm(), 1e-12);

    Eigen::SelfAdjointEigenSolver<oracle::Matrix> e1(h.to_dense()), e2(out.to_dense());
    EXPECT_LT((e1.eigenvalues() - e2.eigenvalues()).norm(), 1e-10);
  }
}

}  // namespace
