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

#ifndef PLATONIC_NOISE_MODEL_H
#define PLATONIC_NOISE_MODEL_H

#include <map>
#include <optional>
#include <span>
#include <string>

#include "platonic/channels.h"
#include "platonic/gates.h"
#include "platonic/groups.h"

namespace platonic {

enum class SimulationMode { kGateLevel, kPulseLevel };

/// Duration-proportional relaxation: gamma = 1 - exp(-t/T1) and coherences
/// decaying as exp(-t/Tphi). A non-positive time disables that process.
struct Decoherence {
  double t1_ns = 0;
  double tphi_ns = 0;

  bool enabled() const { return t1_ns > 0 || tphi_ns > 0; }
  Channel qubit_channel(double duration_ns) const;
};

/// Noise attached to physical gates. Each gate is applied as its ideal
/// rotation followed by its channel; the idle is a noisy 12 ns gate.
class NoiseModel {
 public:
  NoiseModel() = default;
  /// Same channel after every physical gate, including the idle.
  static NoiseModel uniform(const Channel& ch);

  SimulationMode mode = SimulationMode::kGateLevel;
  Channel gate_channel;
  std::optional<Channel> idle_channel;  // falls back to gate_channel
  /// Overrides keyed by physical gate label, e.g. "Xpi/2".
  std::map<std::string, Channel> per_gate;
  /// Extra channel applied after a specific group element, keyed by its
  /// canonical word label. Used to inject error on one benchmarked gate.
  std::map<std::string, Channel> element_extra;
  Decoherence decoherence;

  /// Full channel following `gate`: its assigned channel, then decoherence
  /// for the gate's duration.
  Channel channel_for(const PhysicalGate& gate) const;
  /// Noisy implementation of a group element as a transfer matrix.
  TransferMatrix element_transfer(const GroupElement& e) const;
  /// Same for an arbitrary word; element_extra applies when its label matches.
  TransferMatrix word_transfer(const Word& word) const;
  Channel element_channel(const GroupElement& e) const;

  /// Throws std::invalid_argument if an override names a gate or element
  /// that neither `g` nor the `extra` words use.
  void validate_for(const Group& g, std::span<const Word> extra = {}) const;
};

/// Mean over elements of the noisy element's decay parameter, the p that a
/// reference RB curve should show for this noise.
double expected_decay(const Group& g, const NoiseModel& noise);

}  // namespace platonic

#endif  // PLATONIC_NOISE_MODEL_H
