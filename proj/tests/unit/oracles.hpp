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

// Reference computations that share no code with the library: Pauli
// matrices are written out by hand, tensor products use Eigen's Kronecker
// module and exponentials use Eigen's Pade-based MatrixFunctions.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix pauli(char c) {
  Matrix m(2, 2);
  const Complex i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Label with site 0 first; site 0 is the least significant bit, so it is
/// the rightmost Kronecker factor.
inline Matrix dense(const std::string& label, double coeff = 1.0) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : label) m = Eigen::kroneckerProduct(pauli(c), m).eval();
  return coeff * m;
}

/// exp(-i h t) through Eigen's matrix exponential.
inline Matrix expm(const Matrix& h, double t) { return (Complex(0, -t) * h).exp(); }

inline Eigen::VectorXcd random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Spectral norm through the eigenvalues of A^dagger A.
inline double spectral_norm(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.adjoint() * a);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

/// min over phases of ||u - e^{i phi} v||, by scanning then refining phi.
inline double phase_free_distance(const Matrix& u, const Matrix& v) {
  const Complex overlap = (v.adjoint() * u).trace();
  const double phi = std::arg(overlap);
  return spectral_norm(u - std::polar(1.0, phi) * v);
}

}  // namespace oracle
