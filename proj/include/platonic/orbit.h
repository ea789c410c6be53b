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


// Pulse tuning against fixed-length randomized-benchmarking fidelity.

#ifndef PLATONIC_ORBIT_H
#define PLATONIC_ORBIT_H

#include <cstdint>
#include <span>
#include <vector>

#include "platonic/nelder_mead.h"
#include "platonic/noise_model.h"
#include "platonic/pulse.h"

namespace platonic {

enum class SeedPolicy {
  kFrozen,     // the same sequences at every evaluation
  kResampled,  // fresh sequences per evaluation, still seed-determined
};

struct ObjectiveSpec {
  GroupKind group_kind = GroupKind::kTetrahedral;
  int fixed_m = 100;
  int n_sequences = 20;
  SeedPolicy seed_policy = SeedPolicy::kFrozen;
  std::uint64_t seed = 0;
  PulseSimConfig pulse_cfg;
  Decoherence decoherence;
  /// Key layout of the parameter vector; values are ignored.
  PulseParams layout;
  int threads = 1;
};

/// Length where A p^m is most sensitive to p, about 1 / (1 - p), clamped to
/// [1, 500]. Longer sequences make the coherent-error landscape rugged.
int steepest_m(double p);

/// Decay parameter implied by the synthesized gates' qubit-block fidelities,
/// 2 F - 1 averaged over the group.
double estimated_decay(const PulseParams& params, GroupKind kind, const PulseSimConfig& cfg);

/// 1 - mean sequence fidelity over the spec's sequences at fixed m.
class OrbitObjective {
 public:
  /// Sequences come from stream `stream`; the held-out set uses another one.
  explicit OrbitObjective(const ObjectiveSpec& spec, std::uint64_t stream = 0);

  /// Throws std::invalid_argument if the vector does not fit the layout.
  double operator()(std::span<const double> x);
  double evaluate(const PulseParams& params);
  int evaluations() const { return evaluations_; }

 private:
  std::vector<std::vector<int>> sequences_for_call();

  ObjectiveSpec spec_;
  std::uint64_t stream_;
  std::vector<std::vector<int>> frozen_;
  int evaluations_ = 0;
};

double orbit_objective(std::span<const double> x, const ObjectiveSpec& spec);

struct OrbitResult {
  PulseParams params;
  double start_objective = 0;
  double final_objective = 0;
  double heldout_start = 0;
  double heldout_final = 0;
  /// False when the held-out set disagreed with the optimizer's improvement,
  /// in which case `params` is the start point.
  bool confirmed = true;
  NelderMeadResult search;
};

struct OrbitOptions {
  int budget = 2000;
  int heldout_sequences = 50;
  double amplitude_scale = 0.01;  // relative
  double drag_scale = 0.05;       // absolute
};

OrbitResult orbit_tune(const PulseParams& start, const ObjectiveSpec& spec,
                       const OrbitOptions& options = {});

}  // namespace platonic

#endif  // PLATONIC_ORBIT_H
