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

#ifndef PLATONIC_GROUPS_H
#define PLATONIC_GROUPS_H

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "platonic/channels.h"
#include "platonic/errors.h"
#include "platonic/gates.h"
#include "platonic/qmath.h"

namespace platonic {

enum class GroupKind { kTetrahedral, kOctahedral, kIcosahedral };

std::string_view group_kind_name(GroupKind kind);
/// Accepts "tetrahedral", "octahedral", "icosahedral". Throws std::invalid_argument.
GroupKind parse_group_kind(std::string_view name);
/// Largest t for which the group is a unitary t-design: 2, 3, 5.
int claimed_design_order(GroupKind kind);

enum class ElementClass {
  kIdentity,
  kEdgePi,
  kFace2PiOver3,
  kVertex2PiOver5,
  kVertex4PiOver5,
  kOrder4,
  kHadamardLike,
};

std::string_view element_class_name(ElementClass c);

struct GroupElement {
  int index = 0;
  Word word;
  Unitary2 unitary;
  BlochRotation bloch;
  ElementClass element_class = ElementClass::kIdentity;
};

class Group {
 public:
  GroupKind kind() const { return kind_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(int i) const { return elements_.at(i); }

  /// Index of element(i).unitary * element(j).unitary, i.e. j applied first.
  int multiply(int i, int j) const { return mult_[i * order() + j]; }
  int inverse(int i) const { return inv_[i]; }
  int identity_index() const { return identity_; }

  /// Element with this Bloch rotation, matched at 1e-9.
  std::optional<int> find(const BlochRotation& r) const;
  /// Element whose unitary matches `word`'s product up to global phase.
  std::optional<int> find_word(const Word& word) const;

  /// Index of the time-ordered product of `sequence`.
  int compose(std::span<const int> sequence) const;

 private:
  friend Group build_group(GroupKind kind);

  GroupKind kind_ = GroupKind::kTetrahedral;
  std::vector<GroupElement> elements_;
  std::vector<int> mult_;
  std::vector<int> inv_;
  int identity_ = 0;
  std::unordered_map<std::string, int> by_key_;
};

/// Builds the group from its decomposition table and certifies closure.
/// Throws IntegrityError on duplicate rows or products outside the set.
Group build_group(GroupKind kind);
/// Cached instance, built once per kind and shared read-only afterwards.
const Group& group(GroupKind kind);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Exact mean word length (idle counts as one gate).
Rational avg_word_length(const Group& g);

/// (1/|G|^2) sum_{u,v} |Tr(u^dagger v)|^{2t}. Requires 1 <= t <= 6.
double frame_potential(const Group& g, int t);
/// Haar value of the frame potential for a qubit, the Catalan number C_t.
double catalan(int t);

/// (1/|G|) sum_u U^dagger o ch o U.
Channel twirl_channel(const Group& g, const Channel& ch);

/// r with element(r) * product(sequence) = identity.
int recovery_element(const Group& g, std::span<const int> sequence);

struct SolidOrbit {
  bool closed = false;          // closed under every group rotation
  bool spectrum_matches = false; // pairwise inner products as expected
  std::vector<Eigen::Vector3d> points;
  std::vector<double> inner_products;  // distinct values, ascending

  bool ok() const { return closed && spectrum_matches; }
};

/// Rotation-axis endpoints of the characteristic class: 2pi/3 faces for the
/// tetrahedral group (a cube), quarter turns for the octahedral group, and
/// 2pi/5 vertices for the icosahedral group.
SolidOrbit solid_orbit(const Group& g);
bool solid_orbit_check(const Group& g);

/// The tetrahedral-subgroup members of `g`, by Bloch rotation.
std::vector<int> tetrahedral_subset(const Group& g);

nlohmann::json group_to_json(const Group& g);

}  // namespace platonic

#endif  // PLATONIC_GROUPS_H
