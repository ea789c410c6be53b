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

// Pulse-level model of a weakly anharmonic qubit truncated to three levels.
//
// XY gates are raised-cosine microwave envelopes
//   Omega(t) = A (1 - cos(2 pi t / T)) / 2,  t in [0, T],
// so the pulse area is A T / 2. In the frame rotating at the qubit frequency
//   H(t) = eta |2><2| + Omega/2 (cos p X + sin p Y) + Q/2 (-sin p X + cos p Y)
//          + delta(t) n
// with X = a + a^dagger, Y = i (a^dagger - a), n the number operator, and the
// DRAG terms Q = -alpha dOmega/dt / eta, delta = (1 - 2 alpha) Omega^2 / (2 eta).
// A single coefficient alpha sets both the quadrature and the accompanying
// Stark-shift detuning.
//
// Z gates detune the qubit with the same envelope over 10 ns, H = -delta(t) n,
// so the qubit acquires the phase of R_Z(integral of delta).

#ifndef PLATONIC_PULSE_H
#define PLATONIC_PULSE_H

#include <map>
#include <set>
#include <span>
#include <vector>

#include "json.hpp"

#include "platonic/gates.h"
#include "platonic/groups.h"
#include "platonic/qmath.h"

namespace platonic {

enum class ZCompilation {
  kDetuning,     // flux detuning pulse, 10 ns
  kCompositeXY,  // X(-pi/2) Y(theta) X(pi/2), three 12 ns pulses
};

struct PulseSimConfig {
  double anharmonicity = -2 * kPi * 0.2;  // rad/ns, i.e. -200 MHz
  double time_step = 0.01;                 // ns
  /// true: frame rotating at the qubit frequency. false: interaction frame of
  /// the undriven transmon, which also removes the |2> phase eta t.
  bool rotating_frame = true;
  /// Drop the third level (the eta -> -infinity limit).
  bool two_level = false;
  ZCompilation z_compilation = ZCompilation::kDetuning;
};

/// Pulse knobs for one rotation group: a peak XY amplitude per unsigned
/// angle, a peak detuning per signed Z angle, and the DRAG coefficient.
struct PulseParams {
  std::map<AngleMagnitude, double> xy_amplitudes;  // rad/ns
  std::map<AngleId, double> z_amplitudes;          // rad/ns
  double drag = 0;
  double xy_duration = kXYDurationNs;
  double z_duration = kZDurationNs;
  double idle_duration = kIdleDurationNs;

  int parameter_count() const;
  /// Layout: XY amplitudes by magnitude, Z amplitudes by signed angle, DRAG.
  std::vector<double> to_vector() const;
  /// Same key set with new values. Throws std::invalid_argument on a size
  /// mismatch or non-finite entries.
  PulseParams with_vector(std::span<const double> values) const;

  nlohmann::json to_json() const;
  static PulseParams from_json(const nlohmann::json& j);
};

struct PulseRequirements {
  std::set<AngleMagnitude> xy;
  std::set<AngleId> z;
};

PulseRequirements required_pulses(const Group& g, ZCompilation z = ZCompilation::kDetuning);

/// Closed-form two-level amplitudes: area A T / 2 equal to the angle.
PulseParams area_params(const Group& g, const PulseSimConfig& cfg = {});

/// Raised-cosine XY pulse with drive phase `phase` (0 = X, pi/2 = Y).
Unitary3 simulate_xy_pulse(double amplitude, double drag, double phase, double duration,
                           const PulseSimConfig& cfg);
Unitary3 simulate_z_pulse(double amplitude, double duration, const PulseSimConfig& cfg);
Unitary3 simulate_idle(double duration, const PulseSimConfig& cfg);

/// Throws std::invalid_argument if the amplitude for |angle| is missing or the
/// time step does not divide the duration.
Unitary3 simulate_xy_gate(const PulseParams& params, Pauli axis, AngleId angle,
                          const PulseSimConfig& cfg);
Unitary3 simulate_z_gate(const PulseParams& params, AngleId angle, const PulseSimConfig& cfg);
Unitary3 simulate_gate(const PulseParams& params, const PhysicalGate& gate,
                       const PulseSimConfig& cfg);

/// Max over computational inputs of the final |2> population.
double leakage(const Unitary3& u);
/// Average gate fidelity of the (possibly non-unitary) qubit block against
/// `ideal`, phase insensitive: (|Tr(V^dagger B)|^2 + Tr(B^dagger B)) / 6.
double qubit_block_fidelity(const Unitary3& u, const Unitary2& ideal);

/// Excited-state probability after one X pulse from |0>, per amplitude.
std::vector<double> rabi_scan(std::span<const double> amplitudes, const PulseSimConfig& cfg,
                              double drag = 0, double duration = kXYDurationNs);
/// Phase acquired by (|0> + |1>)/sqrt 2 under one Z pulse, from simulated
/// <X>, <Y> tomography, unwrapped along the amplitude list.
std::vector<double> z_phase_scan(std::span<const double> amplitudes, const PulseSimConfig& cfg,
                                 double duration = kZDurationNs);

/// Amplitudes from Rabi and Z-phase inversion, DRAG from a leakage sweep.
/// Throws ConvergenceError naming the failing angle.
PulseParams calibrate(GroupKind kind, const PulseSimConfig& cfg = {});

/// Every physical gate a group uses, synthesized once.
class PulseGateSet {
 public:
  PulseGateSet(const PulseParams& params, const Group& g, const PulseSimConfig& cfg);

  const Unitary3& gate(const PhysicalGate& gate) const;
  /// Wall-clock length of the synthesized gate (composite Z gates are longer).
  double duration(const PhysicalGate& gate) const;
  /// Product of the element's simulated pulses, last applied leftmost.
  const Unitary3& element(int index) const { return elements_.at(index); }
  const std::map<PhysicalGate, Unitary3>& gates() const { return gates_; }

 private:
  std::map<PhysicalGate, Unitary3> gates_;
  std::map<PhysicalGate, double> durations_;
  std::vector<Unitary3> elements_;
};

}  // namespace platonic

#endif  // PLATONIC_PULSE_H
