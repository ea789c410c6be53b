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


#ifndef PLATONIC_RB_H
#define PLATONIC_RB_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "platonic/groups.h"
#include "platonic/noise_model.h"
#include "platonic/pulse.h"
#include "platonic/rng.h"

namespace platonic {

struct RBConfig {
  GroupKind group_kind = GroupKind::kTetrahedral;
  std::vector<int> m_values;  // strictly increasing, >= 1
  int k = 50;
  std::optional<int> interleaved;  // element index
  /// Physical word played at interleaved positions. Must realize the
  /// interleaved element; defaults to its table row.
  std::optional<Word> interleaved_word;
  /// Lengths for the interleaved curve; m_values when empty.
  std::vector<int> interleaved_m_values;
  bool run_reference = true;
  NoiseModel noise;
  std::optional<int> shots;  // absent: exact expectation
  std::uint64_t seed = 0;
  int threads = 1;

  // Pulse-level mode only. Calibrated on the fly when params are absent.
  std::optional<PulseParams> pulse_params;
  PulseSimConfig pulse_cfg;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct RBPoint {
  int m = 0;
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(k)
  int k = 0;
  std::vector<double> fidelities;
};

struct RBCurve {
  std::vector<RBPoint> points;
};

struct RBResult {
  RBCurve reference;
  std::optional<RBCurve> interleaved;
};

/// m uniform draws (each followed by the interleaved element when given),
/// then the recovery element.
std::vector<int> generate_sequence(const Group& g, int m, std::optional<int> interleaved, Rng& rng);

/// Noisy execution of element sequences from |0>. Per-element maps are
/// precomputed: a Pauli transfer matrix at gate level, a qutrit
/// superoperator at pulse level.
class SequenceSimulator {
 public:
  /// Words in `extra` get indices order(), order() + 1, ...
  static SequenceSimulator gate_level(const Group& g, const NoiseModel& noise,
                                      std::span<const Word> extra = {});
  /// Simulated pulses, each followed by qutrit relaxation for its duration.
  static SequenceSimulator pulse_level(const Group& g, const PulseGateSet& gates,
                                       const Decoherence& decoherence,
                                       std::span<const Word> extra = {});

  /// Exact ground-state population after the sequence.
  double fidelity(std::span<const int> sequence) const;

 private:
  bool pulse_ = false;
  std::vector<Eigen::Matrix4d> transfer_;
  std::vector<Eigen::Matrix<cd, 9, 9>> super_;
};

/// Qutrit relaxation over `duration_ns` as a superoperator on column-stacked
/// density matrices: decay |1> -> |0> at 1/T1 and |2> -> |1> at 2/T1, and
/// coherences rho_jk damped by exp(-(j-k)^2 t / Tphi).
Eigen::Matrix<cd, 9, 9> qutrit_decoherence(const Decoherence& d, double duration_ns);

/// Binomial estimate of `fidelity` from `shots` Bernoulli draws.
double sample_shots(double fidelity, int shots, Rng& rng);

/// Gate-level sequence fidelity, optionally shot-sampled.
double sequence_fidelity(const Group& g, std::span<const int> sequence, const NoiseModel& noise,
                         std::optional<int> shots, Rng& rng);

/// Deterministic given config.seed, for any thread count.
RBResult run_rb(const RBConfig& config);

/// 15 roughly geometric lengths from 1 to clamp(ceil(3 / (1 - p)), 10, 5000).
std::vector<int> default_m_grid(double p_expected);

}  // namespace platonic

#endif  // PLATONIC_RB_H
