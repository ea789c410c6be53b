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

#ifndef PLATONIC_GATES_H
#define PLATONIC_GATES_H

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "platonic/qmath.h"

namespace platonic {

/// Unsigned rotation angles that appear in the decomposition tables.
enum class AngleMagnitude {
  kZero,
  kHalfPi,
  kPi,
  kTwoPiOverFive,
  kFourPiOverFive,
  kGolden,     // phi = arctan((1 + sqrt 5) / 2)
  kTwoGolden,  // 2 phi
};

double magnitude_radians(AngleMagnitude m);
std::string magnitude_label(AngleMagnitude m);

/// A signed table angle. Negative angles are physically the same pulse about
/// the opposite axis, but are kept signed here.
struct AngleId {
  AngleMagnitude magnitude = AngleMagnitude::kZero;
  int sign = +1;

  double radians() const { return sign * magnitude_radians(magnitude); }
  std::string label() const;
  auto operator<=>(const AngleId&) const = default;
};

enum class GateAxis { kIdle, kX, kY, kZ };

inline constexpr double kXYDurationNs = 12.0;
inline constexpr double kZDurationNs = 10.0;
inline constexpr double kIdleDurationNs = 12.0;

/// One physical microwave (X/Y) or detuning (Z) pulse, or the idle.
struct PhysicalGate {
  GateAxis axis = GateAxis::kIdle;
  AngleId angle;

  static PhysicalGate idle() { return {}; }
  static PhysicalGate x(AngleMagnitude m, int sign = +1) { return {GateAxis::kX, {m, sign}}; }
  static PhysicalGate y(AngleMagnitude m, int sign = +1) { return {GateAxis::kY, {m, sign}}; }
  static PhysicalGate z(AngleMagnitude m, int sign = +1) { return {GateAxis::kZ, {m, sign}}; }

  /// Parses labels such as "I", "Xpi", "Y-pi/2", "Z2pi/5", "X-phi", "X2phi".
  /// A bare axis letter means a pi rotation. Throws std::invalid_argument.
  static PhysicalGate parse(std::string_view text);

  double duration_ns() const;
  Unitary2 unitary() const;
  std::string label() const;
  auto operator<=>(const PhysicalGate&) const = default;
};

using Word = std::vector<PhysicalGate>;

/// Whitespace-separated gate labels in time order (first applied first).
Word parse_word(std::string_view text);
std::string word_label(const Word& word);

/// Product of the word's rotations with the last-applied gate leftmost.
Unitary2 word_unitary(const Word& word);

}  // namespace platonic

#endif  // PLATONIC_GATES_H
