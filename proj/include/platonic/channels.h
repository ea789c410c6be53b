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

#ifndef PLATONIC_CHANNELS_H
#define PLATONIC_CHANNELS_H

#include <vector>

#include "platonic/qmath.h"

namespace platonic {

/// Pauli transfer matrix R_ij = Tr(P_i E(P_j)) / 2 over (I, X, Y, Z).
using TransferMatrix = Eigen::Matrix4d;

/// A CPTP qubit map. Stores a Kraus list and the matching transfer matrix;
/// both are fixed at construction.
class Channel {
 public:
  Channel();  // identity

  /// Throws std::invalid_argument unless sum K^dagger K = I to 1e-9.
  static Channel from_kraus(std::vector<Eigen::Matrix2cd> kraus);
  /// Kraus operators are recovered from the Choi matrix. Throws
  /// std::invalid_argument if the map is not completely positive to 1e-9.
  static Channel from_transfer_matrix(const TransferMatrix& r);
  static Channel unitary(const Unitary2& u);

  const std::vector<Eigen::Matrix2cd>& kraus() const { return kraus_; }
  const TransferMatrix& transfer_matrix() const { return ptm_; }
  /// Unital 3x3 block acting on the Bloch vector.
  Eigen::Matrix3d bloch_block() const { return ptm_.bottomRightCorner<3, 3>(); }

  Density2 apply(const Density2& rho) const;
  /// Same map evaluated through the transfer matrix.
  Density2 apply_transfer(const Density2& rho) const;

  /// Choi matrix sum_ab |a><b| (x) E(|a><b|).
  Eigen::Matrix4cd choi() const;

 private:
  Channel(std::vector<Eigen::Matrix2cd> kraus, const TransferMatrix& ptm)
      : kraus_(std::move(kraus)), ptm_(ptm) {}

  std::vector<Eigen::Matrix2cd> kraus_;
  TransferMatrix ptm_;
};

/// Apply `first`, then `second`.
Channel compose(const Channel& first, const Channel& second);

/// rho -> (1 - s) rho + s I/2.
Channel depolarizing(double strength);
Channel amplitude_damping(double gamma);
/// Coherences shrink by sqrt(1 - lambda).
Channel phase_damping(double lambda);
Channel coherent_error(const Axis& axis, double epsilon);

/// Depolarizing strength whose average gate error equals r, i.e. 2r.
double depolarizing_strength_for_error(double r);

/// Average gate infidelity of `ch` against the ideal unitary `target`:
/// r = 1 - (Tr(R_target^T R_ch) + 2) / 6 with 4x4 transfer matrices.
double average_gate_error(const Channel& ch, const Unitary2& target);

TransferMatrix transfer_matrix_of(const Unitary2& u);

}  // namespace platonic

#endif  // PLATONIC_CHANNELS_H
