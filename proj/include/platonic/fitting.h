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


// Fits of the randomized-benchmarking decay F(m) = A p^m + B.

#ifndef PLATONIC_FITTING_H
#define PLATONIC_FITTING_H

#include <span>
#include <vector>

#include "json.hpp"

#include "platonic/rb.h"
#include "platonic/rng.h"

namespace platonic {

struct FitPoint {
  double m = 0;
  double fidelity = 0;
  double weight = 1;
};

struct DecayFit {
  double A = 0;
  double B = 0;
  double p = 0;
  double p_std_error = 0;
  double residual_norm = 0;  // unweighted L2 norm of the residuals
  int iterations = 0;
  bool unidentifiable = false;  // flat data: p carries no information
  bool p_at_boundary = false;   // p within 1e-9 of 0 or 1
};

/// Points from a curve with weights 1/stderr^2 when every stderr is
/// positive, otherwise uniform weights.
std::vector<FitPoint> fit_points(const RBCurve& curve);

/// Weighted Levenberg-Marquardt fit with p = 1 / (1 + exp(-q)). Needs at
/// least three distinct m. Throws std::invalid_argument on bad input and
/// ConvergenceError when 200 iterations do not settle.
DecayFit fit_decay(std::span<const FitPoint> points);
DecayFit fit_decay(const RBCurve& curve);

/// (1 - p) / 2.
double reference_error(const DecayFit& fit);
double reference_error(double p);

struct InterleavedError {
  double r = 0;
  double fidelity = 1;
  bool negative_error = false;
};

/// r = (1 - p_gate / p_ref) / 2. Throws std::invalid_argument if p_ref is 0.
InterleavedError interleaved_error(double p_gate, double p_ref);
double gate_fidelity(double r);

/// Standard deviation of p over fits to curves rebuilt by resampling each
/// m's per-sequence fidelities with replacement.
double bootstrap_p_std_error(const RBCurve& curve, int resamples, Rng& rng);

nlohmann::json fit_report(const DecayFit& fit);

}  // namespace platonic

#endif  // PLATONIC_FITTING_H
