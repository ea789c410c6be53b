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

#ifndef PLATONIC_QMATH_H
#define PLATONIC_QMATH_H

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace platonic {

using cd = std::complex<double>;

/// Single-qubit gate, 2x2 complex.
using Unitary2 = Eigen::Matrix2cd;
/// Qutrit (transmon with one leakage level) gate, 3x3 complex.
using Unitary3 = Eigen::Matrix3cd;
/// SO(3) image of a qubit unitary acting on Bloch vectors.
using BlochRotation = Eigen::Matrix3d;
using Density2 = Eigen::Matrix2cd;
using Density3 = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPhaseTolerance = 1e-9;

enum class Pauli { kX, kY, kZ };

char pauli_name(Pauli p);
const Eigen::Matrix2cd& pauli_matrix(Pauli p);

/// A rotation axis: either one of the lab axes or an arbitrary unit vector.
class Axis {
 public:
  static Axis x() { return Axis(Pauli::kX); }
  static Axis y() { return Axis(Pauli::kY); }
  static Axis z() { return Axis(Pauli::kZ); }
  /// Throws std::invalid_argument unless |v| = 1 to within 1e-12.
  static Axis from_vector(const Eigen::Vector3d& v);

  Axis(Pauli p);  // NOLINT: implicit on purpose, a label is an axis.

  const Eigen::Vector3d& direction() const { return direction_; }
  std::optional<Pauli> label() const { return label_; }

 private:
  Axis(const Eigen::Vector3d& v, std::optional<Pauli> label) : direction_(v), label_(label) {}

  Eigen::Vector3d direction_;
  std::optional<Pauli> label_;
};

/// exp(-i angle n.sigma / 2). Throws std::invalid_argument for non-finite angles.
Unitary2 rotation_unitary(const Axis& axis, double angle);

/// arctan of the golden ratio, the irrational angle used by the icosahedral words.
double golden_angle();

/// True iff max |u - e^{i theta} v| <= tol for the phase fixed by the largest |v| entry.
bool equal_up_to_phase(const Unitary2& u, const Unitary2& v, double tol = kPhaseTolerance);

/// M_ab = Tr(sigma_a u sigma_b u^dagger) / 2.
BlochRotation bloch_rotation(const Unitary2& u);

struct AxisAngle {
  Eigen::Vector3d axis;
  double angle;  // in [0, pi]
};

/// Axis and angle of a proper rotation. For angle < pi the axis is oriented so
/// the rotation is right-handed; at angle pi the sign is chosen with the first
/// non-zero component positive.
AxisAngle axis_angle(const BlochRotation& r);

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol) {
  auto n = u.rows();
  auto g = (u.adjoint() * u).eval();
  return (g - decltype(g)::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

bool is_rotation(const BlochRotation& r, double tol);

/// Bloch vector (<X>, <Y>, <Z>) of a qubit density matrix.
Eigen::Vector3d bloch_vector(const Density2& rho);
Density2 density_from_bloch(const Eigen::Vector3d& r);

/// Embeds a qubit gate in the computational block of a qutrit, acting as
/// identity on the third level.
Unitary3 embed_qubit(const Unitary2& u);
Unitary2 qubit_block(const Unitary3& u);

}  // namespace platonic

#endif  // PLATONIC_QMATH_H
