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

#include "platonic/channels.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace platonic {

namespace {

constexpr double kValidationTolerance = 1e-9;

const Eigen::Matrix2cd& basis_pauli(int i) {
  static const Eigen::Matrix2cd kIdentity = Eigen::Matrix2cd::Identity();
  switch (i) {
    case 1:
      return pauli_matrix(Pauli::kX);
    case 2:
      return pauli_matrix(Pauli::kY);
    case 3:
      return pauli_matrix(Pauli::kZ);
    default:
      return kIdentity;
  }
}

TransferMatrix transfer_from_kraus(const std::vector<Eigen::Matrix2cd>& kraus) {
  TransferMatrix r = TransferMatrix::Zero();
  for (const auto& k : kraus) {
    Eigen::Matrix2cd kd = k.adjoint();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        r(i, j) += (basis_pauli(i) * k * basis_pauli(j) * kd).trace().real() / 2;
      }
    }
  }
  return r;
}

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(value));
  }
}

}  // namespace

Channel::Channel() : kraus_{Eigen::Matrix2cd::Identity()}, ptm_(TransferMatrix::Identity()) {}

Channel Channel::from_kraus(std::vector<Eigen::Matrix2cd> kraus) {
  if (kraus.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& k : kraus) {
    if (!k.allFinite()) throw std::invalid_argument("Kraus operator has non-finite entries");
    sum += k.adjoint() * k;
  }
  if ((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kValidationTolerance) {
    throw std::invalid_argument("Kraus operators are not trace preserving");
  }
  TransferMatrix ptm = transfer_from_kraus(kraus);
  return Channel(std::move(kraus), ptm);
}

Channel Channel::from_transfer_matrix(const TransferMatrix& r) {
  if (!r.allFinite()) throw std::invalid_argument("transfer matrix has non-finite entries");
  Eigen::Vector4d first_row = r.row(0).transpose();
  if ((first_row - Eigen::Vector4d::UnitX()).cwiseAbs().maxCoeff() > kValidationTolerance) {
    throw std::invalid_argument("transfer matrix is not trace preserving");
  }
  // E(|a><b|) from the transfer matrix, then the Choi matrix.
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
      unit(a, b) = 1;
      Eigen::Matrix2cd image = Eigen::Matrix2cd::Zero();
      for (int i = 0; i < 4; ++i) {
        cd coefficient = 0;
        for (int j = 0; j < 4; ++j) {
          coefficient += r(i, j) * (basis_pauli(j) * unit).trace();
        }
        image += coefficient * basis_pauli(i) / 2.0;
      }
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) choi(a * 2 + c, b * 2 + d) = image(c, d);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(choi);
  if (solver.eigenvalues().minCoeff() < -kValidationTolerance) {
    throw std::invalid_argument("transfer matrix is not completely positive");
  }
  std::vector<Eigen::Matrix2cd> kraus;
  for (int k = 3; k >= 0; --k) {
    double lambda = solver.eigenvalues()(k);
    if (lambda <= 1e-14) continue;
    Eigen::Matrix2cd op;
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) op(c, a) = std::sqrt(lambda) * solver.eigenvectors()(a * 2 + c, k);
    }
    kraus.push_back(op);
  }
  return Channel(std::move(kraus), r);
}

Channel Channel::unitary(const Unitary2& u) {
  if (!is_unitary(u, kValidationTolerance)) throw std::invalid_argument("matrix is not unitary");
  return Channel({u}, transfer_matrix_of(u));
}

Density2 Channel::apply(const Density2& rho) const {
  Density2 out = Density2::Zero();
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Density2 Channel::apply_transfer(const Density2& rho) const {
  Eigen::Vector4d v;
  v(0) = rho.trace().real();
  v.tail<3>() = bloch_vector(rho);
  Eigen::Vector4d w = ptm_ * v;
  Density2 out = w(0) / 2 * Density2::Identity();
  for (int i = 1; i < 4; ++i) out += w(i) / 2 * basis_pauli(i);
  return out;
}

Eigen::Matrix4cd Channel::choi() const {
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  for (const auto& k : kraus_) {
    Eigen::Vector4cd v;
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) v(a * 2 + c) = k(c, a);
    }
    j += v * v.adjoint();
  }
  return j;
}

Channel compose(const Channel& first, const Channel& second) {
  TransferMatrix r = second.transfer_matrix() * first.transfer_matrix();
  if (first.kraus().size() * second.kraus().size() > 4) {
    return Channel::from_transfer_matrix(r);
  }
  std::vector<Eigen::Matrix2cd> kraus;
  for (const auto& b : second.kraus()) {
    for (const auto& a : first.kraus()) kraus.push_back(b * a);
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel depolarizing(double strength) {
  check_probability(strength, "depolarizing strength");
  double c0 = std::sqrt(1.0 - 3.0 * strength / 4.0);
  double c1 = std::sqrt(strength / 4.0);
  std::vector<Eigen::Matrix2cd> kraus = {c0 * Eigen::Matrix2cd::Identity()};
  if (strength > 0) {
    for (int i = 1; i < 4; ++i) kraus.push_back(c1 * basis_pauli(i));
  }
  return Channel::from_kraus(std::move(kraus));
}

Channel amplitude_damping(double gamma) {
  check_probability(gamma, "amplitude damping gamma");
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k1(0, 1) = std::sqrt(gamma);
  if (gamma == 0) return Channel::from_kraus({k0});
  return Channel::from_kraus({k0, k1});
}

Channel phase_damping(double lambda) {
  check_probability(lambda, "phase damping lambda");
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1.0 - lambda);
  Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
  k1(1, 1) = std::sqrt(lambda);
  if (lambda == 0) return Channel::from_kraus({k0});
  return Channel::from_kraus({k0, k1});
}

Channel coherent_error(const Axis& axis, double epsilon) {
  return Channel::unitary(rotation_unitary(axis, epsilon));
}

double depolarizing_strength_for_error(double r) { return 2.0 * r; }

TransferMatrix transfer_matrix_of(const Unitary2& u) {
  TransferMatrix r = TransferMatrix::Zero();
  r(0, 0) = 1;
  r.bottomRightCorner<3, 3>() = bloch_rotation(u);
  return r;
}

double average_gate_error(const Channel& ch, const Unitary2& target) {
  double overlap = (transfer_matrix_of(target).transpose() * ch.transfer_matrix()).trace();
  return 1.0 - (overlap + 2.0) / 6.0;
}

}  // namespace platonic
