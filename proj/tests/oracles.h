// Copyright 2026 The platonic-rb Authors
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


// Independent reference computations shared by the tests.

#ifndef PLATONIC_TESTS_ORACLES_H
#define PLATONIC_TESTS_ORACLES_H

#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cd = std::complex<double>;

inline Eigen::Matrix2cd pauli(int a) {
  Eigen::Matrix2cd m;
  const cd i(0, 1);
  switch (a) {
    case 0:
      m << 0, 1, 1, 0;
      break;
    case 1:
      m << 0, -i, i, 0;
      break;
    default:
      m << 1, 0, 0, -1;
  }
  return m;
}

/// exp(-i angle n.sigma / 2) through the general matrix exponential.
inline Eigen::Matrix2cd rotation(const Eigen::Vector3d& n, double angle) {
  Eigen::Matrix2cd h = n(0) * pauli(0) + n(1) * pauli(1) + n(2) * pauli(2);
  Eigen::Matrix2cd a = cd(0, -angle / 2) * h;
  return a.exp();
}

/// Bloch-vector image of r under rho -> u rho u^dagger.
inline Eigen::Vector3d rotate_bloch(const Eigen::Matrix2cd& u, const Eigen::Vector3d& r) {
  Eigen::Matrix2cd rho = 0.5 * (Eigen::Matrix2cd::Identity() + r(0) * pauli(0) +
                                r(1) * pauli(1) + r(2) * pauli(2));
  Eigen::Matrix2cd out = u * rho * u.adjoint();
  Eigen::Vector3d v;
  for (int a = 0; a < 3; ++a) v(a) = (pauli(a) * out).trace().real();
  return v;
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v.normalized();
}

/// Haar-random SU(2) from a normalized Gaussian quaternion.
inline Eigen::Matrix2cd haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  Eigen::Matrix2cd u;
  u << cd(q(0), q(3)), cd(q(2), q(1)), cd(-q(2), q(1)), cd(q(0), -q(3));
  return u;
}

/// Random Kraus channel with `rank` operators from a Haar-ish isometry:
/// a Gaussian (2 rank) x 2 matrix orthonormalized by QR.
inline std::vector<Eigen::Matrix2cd> random_kraus(std::mt19937_64& rng, int rank) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd g(2 * rank, 2);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < 2; ++j) g(i, j) = cd(n(rng), n(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd v = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * rank, 2);
  std::vector<Eigen::Matrix2cd> ks;
  for (int k = 0; k < rank; ++k) ks.push_back(v.block(2 * k, 0, 2, 2));
  return ks;
}

inline Eigen::Matrix2cd apply_kraus(const std::vector<Eigen::Matrix2cd>& ks,
                                    const Eigen::Matrix2cd& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (const auto& k : ks) out += k * rho * k.adjoint();
  return out;
}

/// Average fidelity of a Kraus channel to `target` over the six cardinal states.
inline double cardinal_fidelity(const std::vector<Eigen::Matrix2cd>& ks,
                                const Eigen::Matrix2cd& target) {
  double sum = 0;
  for (int a = 0; a < 3; ++a) {
    for (int s : {-1, 1}) {
      Eigen::Vector3d r = Eigen::Vector3d::Zero();
      r(a) = s;
      Eigen::Matrix2cd rho = 0.5 * (Eigen::Matrix2cd::Identity() + s * pauli(a));
      Eigen::Matrix2cd ideal = target * rho * target.adjoint();
      sum += (ideal * apply_kraus(ks, rho)).trace().real();
    }
  }
  return sum / 6;
}

}  // namespace oracle

#endif  // PLATONIC_TESTS_ORACLES_H
