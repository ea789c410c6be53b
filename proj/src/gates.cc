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

#include "platonic/gates.h"

#include <array>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace platonic {

namespace {

constexpr std::array<std::pair<std::string_view, AngleMagnitude>, 7> kMagnitudeLabels = {{
    {"0", AngleMagnitude::kZero},
    {"pi/2", AngleMagnitude::kHalfPi},
    {"pi", AngleMagnitude::kPi},
    {"2pi/5", AngleMagnitude::kTwoPiOverFive},
    {"4pi/5", AngleMagnitude::kFourPiOverFive},
    {"phi", AngleMagnitude::kGolden},
    {"2phi", AngleMagnitude::kTwoGolden},
}};

}  // namespace

double magnitude_radians(AngleMagnitude m) {
  switch (m) {
    case AngleMagnitude::kZero:
      return 0.0;
    case AngleMagnitude::kHalfPi:
      return kPi / 2;
    case AngleMagnitude::kPi:
      return kPi;
    case AngleMagnitude::kTwoPiOverFive:
      return 2 * kPi / 5;
    case AngleMagnitude::kFourPiOverFive:
      return 4 * kPi / 5;
    case AngleMagnitude::kGolden:
      return golden_angle();
    case AngleMagnitude::kTwoGolden:
      return 2 * golden_angle();
  }
  return 0.0;
}

std::string magnitude_label(AngleMagnitude m) {
  for (const auto& [label, value] : kMagnitudeLabels) {
    if (value == m) return std::string(label);
  }
  return "?";
}

std::string AngleId::label() const {
  std::string s = magnitude_label(magnitude);
  return sign < 0 && magnitude != AngleMagnitude::kZero ? "-" + s : s;
}

PhysicalGate PhysicalGate::parse(std::string_view text) {
  auto fail = [&]() {
    return std::invalid_argument("unrecognized physical gate '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  if (text == "I") return idle();
  GateAxis axis;
  switch (text.front()) {
    case 'X':
      axis = GateAxis::kX;
      break;
    case 'Y':
      axis = GateAxis::kY;
      break;
    case 'Z':
      axis = GateAxis::kZ;
      break;
    default:
      throw fail();
  }
  std::string_view rest = text.substr(1);
  int sign = +1;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    sign = rest.front() == '-' ? -1 : +1;
    rest.remove_prefix(1);
  }
  if (rest.empty()) return {axis, {AngleMagnitude::kPi, sign}};
  for (const auto& [label, value] : kMagnitudeLabels) {
    if (label == rest && value != AngleMagnitude::kZero) return {axis, {value, sign}};
  }
  throw fail();
}

double PhysicalGate::duration_ns() const {
  switch (axis) {
    case GateAxis::kZ:
      return kZDurationNs;
    case GateAxis::kX:
    case GateAxis::kY:
      return kXYDurationNs;
    case GateAxis::kIdle:
      break;
  }
  return kIdleDurationNs;
}

Unitary2 PhysicalGate::unitary() const {
  switch (axis) {
    case GateAxis::kX:
      return rotation_unitary(Axis::x(), angle.radians());
    case GateAxis::kY:
      return rotation_unitary(Axis::y(), angle.radians());
    case GateAxis::kZ:
      return rotation_unitary(Axis::z(), angle.radians());
    case GateAxis::kIdle:
      break;
  }
  return Unitary2::Identity();
}

std::string PhysicalGate::label() const {
  switch (axis) {
    case GateAxis::kX:
      return "X" + angle.label();
    case GateAxis::kY:
      return "Y" + angle.label();
    case GateAxis::kZ:
      return "Z" + angle.label();
    case GateAxis::kIdle:
      break;
  }
  return "I";
}

Word parse_word(std::string_view text) {
  Word word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) word.push_back(PhysicalGate::parse(token));
  if (word.empty()) throw std::invalid_argument("empty gate word");
  return word;
}

std::string word_label(const Word& word) {
  std::string out;
  for (const auto& g : word) {
    if (!out.empty()) out += ' ';
    out += g.label();
  }
  return out;
}

Unitary2 word_unitary(const Word& word) {
  Unitary2 u = Unitary2::Identity();
  for (const auto& g : word) u = g.unitary() * u;
  return u;
}

}  // namespace platonic
