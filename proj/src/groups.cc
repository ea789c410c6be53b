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

#include "platonic/groups.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "group_tables.h"

namespace platonic {

namespace {

constexpr double kMatchTolerance = 1e-9;

// Entries rounded to 1e-6; a hash, confirmed by an exact comparison.
std::string rotation_key(const BlochRotation& r) {
  std::string key;
  key.reserve(9 * 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      key += std::to_string(std::llround(r(i, j) * 1e6));
      key += ',';
    }
  }
  return key;
}

bool same_rotation(const BlochRotation& a, const BlochRotation& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kMatchTolerance;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-6; }

ElementClass classify(GroupKind kind, const BlochRotation& r) {
  AxisAngle aa = axis_angle(r);
  if (aa.angle < 1e-6) return ElementClass::kIdentity;
  if (near(aa.angle, kPi)) {
    if (kind == GroupKind::kOctahedral) {
      // Half-turns about the cube axes are the Paulis; the rest are Hadamard-like.
      bool coordinate_axis = aa.axis.cwiseAbs().maxCoeff() > 1 - 1e-9;
      return coordinate_axis ? ElementClass::kEdgePi : ElementClass::kHadamardLike;
    }
    return ElementClass::kEdgePi;
  }
  if (near(aa.angle, 2 * kPi / 3)) return ElementClass::kFace2PiOver3;
  if (near(aa.angle, kPi / 2)) return ElementClass::kOrder4;
  if (near(aa.angle, 2 * kPi / 5)) return ElementClass::kVertex2PiOver5;
  if (near(aa.angle, 4 * kPi / 5)) return ElementClass::kVertex4PiOver5;
  throw IntegrityError("rotation angle " + std::to_string(aa.angle) +
                       " does not belong to any Platonic rotation class");
}

double round12(double x) {
  double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace

std::string_view group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::kTetrahedral:
      return "tetrahedral";
    case GroupKind::kOctahedral:
      return "octahedral";
    case GroupKind::kIcosahedral:
      break;
  }
  return "icosahedral";
}

GroupKind parse_group_kind(std::string_view name) {
  if (name == "tetrahedral") return GroupKind::kTetrahedral;
  if (name == "octahedral") return GroupKind::kOctahedral;
  if (name == "icosahedral") return GroupKind::kIcosahedral;
  throw std::invalid_argument("unknown group kind '" + std::string(name) + "'");
}

int claimed_design_order(GroupKind kind) {
  switch (kind) {
    case GroupKind::kTetrahedral:
      return 2;
    case GroupKind::kOctahedral:
      return 3;
    case GroupKind::kIcosahedral:
      break;
  }
  return 5;
}

std::string_view element_class_name(ElementClass c) {
  switch (c) {
    case ElementClass::kIdentity:
      return "identity";
    case ElementClass::kEdgePi:
      return "edge-pi";
    case ElementClass::kFace2PiOver3:
      return "face-2pi/3";
    case ElementClass::kVertex2PiOver5:
      return "vertex-2pi/5";
    case ElementClass::kVertex4PiOver5:
      return "vertex-4pi/5";
    case ElementClass::kOrder4:
      return "order-4";
    case ElementClass::kHadamardLike:
      break;
  }
  return "hadamard-like";
}

std::optional<int> Group::find(const BlochRotation& r) const {
  auto it = by_key_.find(rotation_key(r));
  if (it != by_key_.end() && same_rotation(elements_[it->second].bloch, r)) return it->second;
  // Rounding can straddle a bucket boundary; fall back to a scan.
  for (const auto& e : elements_) {
    if (same_rotation(e.bloch, r)) return e.index;
  }
  return std::nullopt;
}

std::optional<int> Group::find_word(const Word& word) const {
  return find(bloch_rotation(word_unitary(word)));
}

int Group::compose(std::span<const int> sequence) const {
  int acc = identity_;
  for (int s : sequence) acc = multiply(s, acc);
  return acc;
}

Group build_group(GroupKind kind) {
  Group g;
  g.kind_ = kind;
  const auto& rows = internal::table_rows(kind);
  int n = static_cast<int>(rows.size());
  g.elements_.reserve(n);
  for (int i = 0; i < n; ++i) {
    GroupElement e;
    e.index = i;
    e.word = parse_word(rows[i]);
    e.unitary = word_unitary(e.word);
    e.bloch = bloch_rotation(e.unitary);
    e.element_class = classify(kind, e.bloch);
    if (auto dup = g.find(e.bloch)) {
      throw IntegrityError("table rows " + std::to_string(*dup) + " and " + std::to_string(i) +
                           " of the " + std::string(group_kind_name(kind)) +
                           " group give the same rotation");
    }
    g.by_key_.emplace(rotation_key(e.bloch), i);
    if (e.element_class == ElementClass::kIdentity) g.identity_ = i;
    g.elements_.push_back(std::move(e));
  }

  g.mult_.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto k = g.find(g.elements_[i].bloch * g.elements_[j].bloch);
      if (!k) {
        throw IntegrityError("product of elements " + std::to_string(i) + " and " +
                             std::to_string(j) + " falls outside the " +
                             std::string(group_kind_name(kind)) + " group");
      }
      g.mult_[i * n + j] = *k;
    }
  }
  g.inv_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g.mult_[i * n + j] == g.identity_) {
        g.inv_[i] = j;
        break;
      }
    }
    if (g.inv_[i] < 0) throw IntegrityError("element " + std::to_string(i) + " has no inverse");
  }
  return g;
}

const Group& group(GroupKind kind) {
  static std::once_flag flags[3];
  static Group groups[3];
  int slot = static_cast<int>(kind);
  std::call_once(flags[slot], [&] { groups[slot] = build_group(kind); });
  return groups[slot];
}

Rational avg_word_length(const Group& g) {
  std::int64_t total = 0;
  for (const auto& e : g.elements()) total += static_cast<std::int64_t>(e.word.size());
  std::int64_t n = g.order();
  std::int64_t d = std::gcd(total, n);
  return {total / d, n / d};
}

double frame_potential(const Group& g, int t) {
  if (t < 1 || t > 6) throw std::invalid_argument("frame potential order must be in 1..6");
  double sum = 0;
  for (const auto& u : g.elements()) {
    Unitary2 ud = u.unitary.adjoint();
    for (const auto& v : g.elements()) {
      double overlap = std::norm((ud * v.unitary).trace());
      sum += std::pow(overlap, t);
    }
  }
  double n = g.order();
  return sum / (n * n);
}

double catalan(int t) {
  double c = 1;
  for (int k = 0; k < t; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return std::round(c);
}

Channel twirl_channel(const Group& g, const Channel& ch) {
  TransferMatrix sum = TransferMatrix::Zero();
  for (const auto& e : g.elements()) {
    TransferMatrix r = transfer_matrix_of(e.unitary);
    sum += r.transpose() * ch.transfer_matrix() * r;
  }
  return Channel::from_transfer_matrix(sum / g.order());
}

int recovery_element(const Group& g, std::span<const int> sequence) {
  return g.inverse(g.compose(sequence));
}

SolidOrbit solid_orbit(const Group& g) {
  ElementClass target = ElementClass::kVertex2PiOver5;
  std::vector<double> expected;
  switch (g.kind()) {
    case GroupKind::kTetrahedral:
      target = ElementClass::kFace2PiOver3;
      expected = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
      break;
    case GroupKind::kOctahedral:
      target = ElementClass::kOrder4;
      expected = {-1.0, 0.0, 1.0};
      break;
    case GroupKind::kIcosahedral:
      expected = {-1.0, -1.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0), 1.0};
      break;
  }

  SolidOrbit orbit;
  for (const auto& e : g.elements()) {
    if (e.element_class == target) orbit.points.push_back(axis_angle(e.bloch).axis);
  }
  auto contains = [&](const Eigen::Vector3d& p) {
    return std::any_of(orbit.points.begin(), orbit.points.end(), [&](const Eigen::Vector3d& q) {
      return (p - q).cwiseAbs().maxCoeff() <= kMatchTolerance;
    });
  };
  orbit.closed = !orbit.points.empty();
  for (const auto& e : g.elements()) {
    for (const auto& p : orbit.points) {
      if (!contains(e.bloch * p)) orbit.closed = false;
    }
  }
  for (const auto& p : orbit.points) {
    for (const auto& q : orbit.points) {
      double d = p.dot(q);
      bool seen = std::any_of(orbit.inner_products.begin(), orbit.inner_products.end(),
                              [&](double x) { return std::abs(x - d) <= kMatchTolerance; });
      if (!seen) orbit.inner_products.push_back(d);
    }
  }
  std::sort(orbit.inner_products.begin(), orbit.inner_products.end());
  orbit.spectrum_matches = orbit.inner_products.size() == expected.size();
  for (size_t i = 0; orbit.spectrum_matches && i < expected.size(); ++i) {
    orbit.spectrum_matches = std::abs(orbit.inner_products[i] - expected[i]) <= kMatchTolerance;
  }
  return orbit;
}

bool solid_orbit_check(const Group& g) { return solid_orbit(g).ok(); }

std::vector<int> tetrahedral_subset(const Group& g) {
  std::vector<int> subset;
  for (const auto& e : group(GroupKind::kTetrahedral).elements()) {
    if (auto i = g.find(e.bloch)) subset.push_back(*i);
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

nlohmann::json group_to_json(const Group& g) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : g.elements()) {
    nlohmann::json word = nlohmann::json::array();
    for (const auto& gate : e.word) {
      std::string axis = gate.axis == GateAxis::kIdle ? "I" : gate.label().substr(0, 1);
      word.push_back({{"axis", axis},
                      {"angle", round12(gate.angle.radians())},
                      {"angle_label", gate.angle.label()},
                      {"duration_ns", gate.duration_ns()}});
    }
    nlohmann::json bloch = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
      bloch.push_back({round12(e.bloch(i, 0)), round12(e.bloch(i, 1)), round12(e.bloch(i, 2))});
    }
    elements.push_back({{"index", e.index},
                        {"class", element_class_name(e.element_class)},
                        {"label", word_label(e.word)},
                        {"word", word},
                        {"bloch", bloch}});
  }
  Rational avg = avg_word_length(g);
  return {{"kind", group_kind_name(g.kind())},
          {"order", g.order()},
          {"avg_word_length", avg.str()},
          {"elements", elements}};
}

}  // namespace platonic
