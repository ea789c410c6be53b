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

#include "platonic/qmath.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace platonic {

namespace {

const Eigen::Matrix2cd& sigma_x() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  return m;
}
const Eigen::Matrix2cd& sigma_y() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished();
  return m;
}
const Eigen::Matrix2cd& sigma_z() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  return m;
}

Eigen::Vector3d unit_vector(Pauli p) {
  switch (p) {
    case Pauli::kX:
      return Eigen::Vector3d::UnitX();
    case Pauli::kY:
      return Eigen::Vector3d::UnitY();
    case Pauli::kZ:
      return Eigen::Vector3d::UnitZ();
  }
  return Eigen::Vector3d::Zero();
}

}  // namespace

char pauli_name(Pauli p) {
  switch (p) {
    case Pauli::kX:
      return 'X';
    case Pauli::kY:
      return 'Y';
    case Pauli::kZ:
      return 'Z';
  }
  return '?';
}

const Eigen::Matrix2cd& pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::kX:
      return sigma_x();
    case Pauli::kY:
      return sigma_y();
    case Pauli::kZ:
      break;
  }
  return sigma_z();
}

Axis::Axis(Pauli p) : direction_(unit_vector(p)), label_(p) {}

Axis Axis::from_vector(const Eigen::Vector3d& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("invalid axis: rotation axis must be a unit vector");
  }
  return Axis(v, std::nullopt);
}

Unitary2 rotation_unitary(const Axis& axis, double angle) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  double c = std::cos(angle / 2);
  double s = std::sin(angle / 2);
  const Eigen::Vector3d& n = axis.direction();
  Unitary2 u;
  if (auto label = axis.label()) {
    u = c * Unitary2::Identity() - cd(0, s) * pauli_matrix(*label);
    return u;
  }
  Eigen::Matrix2cd ns = n.x() * sigma_x() + n.y() * sigma_y() + n.z() * sigma_z();
  u = c * Unitary2::Identity() - cd(0, s) * ns;
  return u;
}

double golden_angle() { return std::atan((1.0 + std::sqrt(5.0)) / 2.0); }

bool equal_up_to_phase(const Unitary2& u, const Unitary2& v, double tol) {
  Eigen::Index r = 0, c = 0;
  v.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(v(r, c)) == 0.0) {
    return u.cwiseAbs().maxCoeff() <= tol;
  }
  cd ratio = u(r, c) / v(r, c);
  cd phase = std::abs(ratio) > 0 ? ratio / std::abs(ratio) : cd(1, 0);
  return (u - phase * v).cwiseAbs().maxCoeff() <= tol;
}

BlochRotation bloch_rotation(const Unitary2& u) {
  BlochRotation m;
  const Pauli axes[3] = {Pauli::kX, Pauli::kY, Pauli::kZ};
  Unitary2 ud = u.adjoint();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      cd tr = (pauli_matrix(axes[a]) * u * pauli_matrix(axes[b]) * ud).trace();
      m(a, b) = tr.real() / 2;
    }
  }
  return m;
}

AxisAngle axis_angle(const BlochRotation& r) {
  double cos_angle = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  double angle = std::acos(cos_angle);
  Eigen::Vector3d w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  if (w.norm() > 1e-7) {
    return {w.normalized(), angle};
  }
  if (angle < 1e-6) {
    return {Eigen::Vector3d::UnitZ(), 0.0};
  }
  // Half-turn: R = 2 n n^T - I.
  Eigen::Vector3d n;
  Eigen::Index k = 0;
  r.diagonal().maxCoeff(&k);
  n(k) = std::sqrt(std::max(0.0, (r(k, k) + 1.0) / 2.0));
  for (int i = 0; i < 3; ++i) {
    if (i != k) n(i) = (r(i, k) + r(k, i)) / (4.0 * n(k));
  }
  n.normalize();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(n(i)) > 1e-9) {
      if (n(i) < 0) n = -n;
      break;
    }
  }
  return {n, kPi};
}

bool is_rotation(const BlochRotation& r, double tol) {
  return (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

Eigen::Vector3d bloch_vector(const Density2& rho) {
  return {(sigma_x() * rho).trace().real(), (sigma_y() * rho).trace().real(),
          (sigma_z() * rho).trace().real()};
}

Density2 density_from_bloch(const Eigen::Vector3d& r) {
  return 0.5 * (Density2::Identity() + r.x() * sigma_x() + r.y() * sigma_y() + r.z() * sigma_z());
}

Unitary3 embed_qubit(const Unitary2& u) {
  Unitary3 e = Unitary3::Identity();
  e.topLeftCorner<2, 2>() = u;
  return e;
}

Unitary2 qubit_block(const Unitary3& u) { return u.topLeftCorner<2, 2>(); }

}  // namespace platonic
