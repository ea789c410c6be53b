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

#include "platonic/noise_model.h"

#include <cmath>
#include <set>
#include <stdexcept>

namespace platonic {

Channel Decoherence::qubit_channel(double duration_ns) const {
  Channel ch;
  if (t1_ns > 0) ch = compose(ch, amplitude_damping(1.0 - std::exp(-duration_ns / t1_ns)));
  if (tphi_ns > 0) ch = compose(ch, phase_damping(1.0 - std::exp(-2.0 * duration_ns / tphi_ns)));
  return ch;
}

NoiseModel NoiseModel::uniform(const Channel& ch) {
  NoiseModel m;
  m.gate_channel = ch;
  return m;
}

Channel NoiseModel::channel_for(const PhysicalGate& gate) const {
  const Channel* base = &gate_channel;
  if (gate.axis == GateAxis::kIdle && idle_channel) base = &*idle_channel;
  if (auto it = per_gate.find(gate.label()); it != per_gate.end()) base = &it->second;
  if (!decoherence.enabled()) return *base;
  return compose(*base, decoherence.qubit_channel(gate.duration_ns()));
}

TransferMatrix NoiseModel::element_transfer(const GroupElement& e) const {
  return word_transfer(e.word);
}

TransferMatrix NoiseModel::word_transfer(const Word& word) const {
  TransferMatrix r = TransferMatrix::Identity();
  for (const auto& gate : word) {
    r = channel_for(gate).transfer_matrix() * transfer_matrix_of(gate.unitary()) * r;
  }
  if (auto it = element_extra.find(word_label(word)); it != element_extra.end()) {
    r = it->second.transfer_matrix() * r;
  }
  return r;
}

Channel NoiseModel::element_channel(const GroupElement& e) const {
  return Channel::from_transfer_matrix(element_transfer(e));
}

void NoiseModel::validate_for(const Group& g, std::span<const Word> extra) const {
  std::set<std::string> gates;
  std::set<std::string> words;
  auto add = [&](const Word& w) {
    words.insert(word_label(w));
    for (const auto& gate : w) gates.insert(gate.label());
  };
  for (const auto& e : g.elements()) add(e.word);
  for (const auto& w : extra) add(w);
  for (const auto& [label, ch] : per_gate) {
    if (!gates.count(label)) {
      throw std::invalid_argument("noise override for gate '" + label + "' which the " +
                                  std::string(group_kind_name(g.kind())) + " group never uses");
    }
  }
  for (const auto& [label, ch] : element_extra) {
    if (!words.count(label)) {
      throw std::invalid_argument("noise override for element '" + label + "' which is not a " +
                                  std::string(group_kind_name(g.kind())) + " table row");
    }
  }
}

double expected_decay(const Group& g, const NoiseModel& noise) {
  double sum = 0;
  for (const auto& e : g.elements()) {
    double overlap = (transfer_matrix_of(e.unitary).transpose() * noise.element_transfer(e)).trace();
    // p = 2F - 1 with F = (overlap + 2) / 6.
    sum += (overlap - 1.0) / 3.0;
  }
  return sum / g.order();
}

}  // namespace platonic
