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


#ifndef PLATONIC_NELDER_MEAD_H
#define PLATONIC_NELDER_MEAD_H

#include <functional>
#include <span>
#include <vector>

namespace platonic {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0;
  int evaluations = 0;
  bool converged = false;      // simplex shrank below tolerance
  std::vector<double> trace;   // objective value of each evaluation, in order
};

/// Downhill simplex with dimension-adaptive coefficients. The initial simplex
/// steps `scale[i]` along each axis from x0. Stops once every vertex lies
/// within 1e-6 scale[i] of the best one, or after `budget` evaluations.
/// Returns the best point evaluated.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             std::vector<double> scale, int budget);

}  // namespace platonic

#endif  // PLATONIC_NELDER_MEAD_H
