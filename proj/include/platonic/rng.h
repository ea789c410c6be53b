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


// Counter-based random streams. Every stream is a pure function of
// (seed, tag, a, b), so results do not depend on thread scheduling.

#ifndef PLATONIC_RNG_H
#define PLATONIC_RNG_H

#include <cstdint>

namespace platonic {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t tag = 0, std::uint64_t a = 0, std::uint64_t b = 0);

  std::uint64_t next();
  /// Uniform in [0, n) by rejection; identical on every platform.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Standard normal by Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

/// Stream tags, kept distinct so that streams never overlap by accident.
enum RngTag : std::uint64_t {
  kTagSequence = 1,
  kTagShots = 2,
  kTagBootstrap = 3,
  kTagOrbit = 4,
  kTagTest = 5,
};

}  // namespace platonic

#endif  // PLATONIC_RNG_H
