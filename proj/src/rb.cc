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


#include "platonic/rb.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace platonic {

namespace {

using Super = Eigen::Matrix<cd, 9, 9>;

Super unitary_super(const Unitary3& u) {
  Super s;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) s.block<3, 3>(3 * a, 3 * b) = std::conj(u(a, b)) * u;
  }
  return s;
}

RBPoint summarize(int m, std::vector<double> fidelities) {
  RBPoint p;
  p.m = m;
  p.k = static_cast<int>(fidelities.size());
  const double k = static_cast<double>(fidelities.size());
  double sum = 0;
  for (double f : fidelities) sum += f;
  p.mean = sum / k;
  if (fidelities.size() > 1) {
    double ss = 0;
    for (double f : fidelities) ss += (f - p.mean) * (f - p.mean);
    p.std_error = std::sqrt(ss / (k - 1)) / std::sqrt(k);
  }
  p.fidelities = std::move(fidelities);
  return p;
}

}  // namespace

void RBConfig::validate() const {
  if (m_values.empty()) throw std::invalid_argument("m_values must not be empty");
  for (size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 1) throw std::invalid_argument("m_values must be >= 1");
    if (i > 0 && m_values[i] <= m_values[i - 1]) {
      throw std::invalid_argument("m_values must be strictly increasing");
    }
  }
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (shots && *shots < 1) throw std::invalid_argument("shots must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  for (size_t i = 1; i < interleaved_m_values.size(); ++i) {
    if (interleaved_m_values[i] <= interleaved_m_values[i - 1] || interleaved_m_values[0] < 1) {
      throw std::invalid_argument("interleaved_m_values must be strictly increasing and >= 1");
    }
  }
  const Group& g = group(group_kind);
  if (interleaved && (*interleaved < 0 || *interleaved >= g.order())) {
    throw std::invalid_argument("interleaved element index " + std::to_string(*interleaved) +
                                " is outside the group");
  }
  if (interleaved_word) {
    if (!interleaved) throw std::invalid_argument("interleaved_word given without an element");
    auto found = g.find_word(*interleaved_word);
    if (found != interleaved) {
      throw std::invalid_argument("interleaved word '" + word_label(*interleaved_word) +
                                  "' does not realize element " + std::to_string(*interleaved));
    }
  }
  if (!run_reference && !interleaved) {
    throw std::invalid_argument("nothing to run: no reference and no interleaved gate");
  }
  std::vector<Word> extra;
  if (interleaved_word) extra.push_back(*interleaved_word);
  noise.validate_for(g, extra);
}

std::vector<int> generate_sequence(const Group& g, int m, std::optional<int> interleaved,
                                   Rng& rng) {
  if (m < 1) throw std::invalid_argument("sequence length must be >= 1");
  std::vector<int> seq;
  seq.reserve(interleaved ? 2 * m + 1 : m + 1);
  for (int i = 0; i < m; ++i) {
    seq.push_back(static_cast<int>(rng.uniform_index(g.order())));
    if (interleaved) seq.push_back(*interleaved);
  }
  seq.push_back(recovery_element(g, seq));
  return seq;
}

SequenceSimulator SequenceSimulator::gate_level(const Group& g, const NoiseModel& noise,
                                                std::span<const Word> extra) {
  SequenceSimulator s;
  s.transfer_.reserve(g.order() + extra.size());
  for (const auto& e : g.elements()) s.transfer_.push_back(noise.element_transfer(e));
  for (const auto& w : extra) s.transfer_.push_back(noise.word_transfer(w));
  return s;
}

SequenceSimulator SequenceSimulator::pulse_level(const Group& g, const PulseGateSet& gates,
                                                 const Decoherence& decoherence,
                                                 std::span<const Word> extra) {
  SequenceSimulator s;
  s.pulse_ = true;
  std::map<PhysicalGate, Super> per_gate;
  for (const auto& [gate, u] : gates.gates()) {
    Super m = unitary_super(u);
    if (decoherence.enabled()) m = qutrit_decoherence(decoherence, gates.duration(gate)) * m;
    per_gate.emplace(gate, m);
  }
  auto word_super = [&](const Word& w) {
    Super m = Super::Identity();
    for (const auto& gate : w) {
      auto it = per_gate.find(gate);
      if (it == per_gate.end()) {
        throw std::invalid_argument("gate " + gate.label() + " was not synthesized");
      }
      m = it->second * m;
    }
    return m;
  };
  s.super_.reserve(g.order() + extra.size());
  for (const auto& e : g.elements()) s.super_.push_back(word_super(e.word));
  for (const auto& w : extra) s.super_.push_back(word_super(w));
  return s;
}

double SequenceSimulator::fidelity(std::span<const int> sequence) const {
  if (pulse_) {
    Eigen::Matrix<cd, 9, 1> rho = Eigen::Matrix<cd, 9, 1>::Zero();
    rho(0) = 1;
    for (int e : sequence) rho = super_[e] * rho;
    return std::clamp(rho(0).real(), 0.0, 1.0);
  }
  Eigen::Vector4d v(1, 0, 0, 1);
  for (int e : sequence) v = transfer_[e] * v;
  return std::clamp((v(0) + v(3)) / 2, 0.0, 1.0);
}

Eigen::Matrix<cd, 9, 9> qutrit_decoherence(const Decoherence& d, double duration_ns) {
  Super s = Super::Identity();
  if (d.t1_ns > 0) {
    double g1 = 1 - std::exp(-duration_ns / d.t1_ns);
    double g2 = 1 - std::exp(-2 * duration_ns / d.t1_ns);
    Unitary3 k0 = Unitary3::Zero();
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - g1);
    k0(2, 2) = std::sqrt(1 - g2);
    Unitary3 k1 = Unitary3::Zero();
    k1(0, 1) = std::sqrt(g1);
    Unitary3 k2 = Unitary3::Zero();
    k2(1, 2) = std::sqrt(g2);
    s = unitary_super(k0) + unitary_super(k1) + unitary_super(k2);
  }
  if (d.tphi_ns > 0) {
    Super deph = Super::Zero();
    for (int col = 0; col < 3; ++col) {
      for (int row = 0; row < 3; ++row) {
        double diff = row - col;
        deph(3 * col + row, 3 * col + row) = std::exp(-diff * diff * duration_ns / d.tphi_ns);
      }
    }
    s = deph * s;
  }
  return s;
}

double sample_shots(double fidelity, int shots, Rng& rng) {
  int hits = 0;
  for (int i = 0; i < shots; ++i) {
    if (rng.uniform01() < fidelity) ++hits;
  }
  return static_cast<double>(hits) / shots;
}

double sequence_fidelity(const Group& g, std::span<const int> sequence, const NoiseModel& noise,
                         std::optional<int> shots, Rng& rng) {
  Eigen::Vector4d v(1, 0, 0, 1);
  for (int e : sequence) v = noise.element_transfer(g.element(e)) * v;
  double f = std::clamp((v(0) + v(3)) / 2, 0.0, 1.0);
  return shots ? sample_shots(f, *shots, rng) : f;
}

RBResult run_rb(const RBConfig& config) {
  config.validate();
  const Group& g = group(config.group_kind);

  // The interleaved gate is played as its own word, at index order().
  std::vector<Word> extra;
  if (config.interleaved) {
    extra.push_back(config.interleaved_word ? *config.interleaved_word
                                            : g.element(*config.interleaved).word);
  }
  std::optional<SequenceSimulator> sim;
  if (config.noise.mode == SimulationMode::kPulseLevel) {
    PulseParams params = config.pulse_params ? *config.pulse_params
                                             : calibrate(config.group_kind, config.pulse_cfg);
    PulseGateSet gates(params, g, config.pulse_cfg);
    sim = SequenceSimulator::pulse_level(g, gates, config.noise.decoherence, extra);
  } else {
    sim = SequenceSimulator::gate_level(g, config.noise, extra);
  }

  // Task layout: (curve, m index, sequence index), curve 0 reference.
  std::vector<size_t> curves;
  if (config.run_reference) curves.push_back(0);
  if (config.interleaved) curves.push_back(1);
  auto grid = [&](size_t curve) -> const std::vector<int>& {
    return curve == 1 && !config.interleaved_m_values.empty() ? config.interleaved_m_values
                                                              : config.m_values;
  };
  const size_t k = static_cast<size_t>(config.k);
  struct Task {
    size_t curve, mi, idx;
  };
  std::vector<Task> tasks;
  std::vector<size_t> curve_offset;
  for (size_t c : curves) {
    curve_offset.push_back(tasks.size());
    for (size_t mi = 0; mi < grid(c).size(); ++mi) {
      for (size_t idx = 0; idx < k; ++idx) tasks.push_back({c, mi, idx});
    }
  }
  const size_t total = tasks.size();
  std::vector<double> slots(total);
  const int interleaved_slot = g.order();

  auto work = [&](size_t t) {
    const Task& task = tasks[t];
    int m = grid(task.curve)[task.mi];
    std::uint64_t b = (static_cast<std::uint64_t>(task.curve) << 32) | task.idx;
    Rng seq_rng(config.seed, kTagSequence, static_cast<std::uint64_t>(m), b);
    auto seq = generate_sequence(g, m, task.curve == 1 ? config.interleaved : std::nullopt, seq_rng);
    if (task.curve == 1) {
      for (size_t i = 1; i + 1 < seq.size(); i += 2) seq[i] = interleaved_slot;
    }
    double f = sim->fidelity(seq);
    if (config.shots) {
      Rng shot_rng(config.seed, kTagShots, static_cast<std::uint64_t>(m), b);
      f = sample_shots(f, *config.shots, shot_rng);
    }
    slots[t] = f;
  };

  int n_threads = std::min<int>(config.threads, static_cast<int>(total));
  if (n_threads <= 1) {
    for (size_t t = 0; t < total; ++t) work(t);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (size_t task = next++; task < total; task = next++) work(task);
      });
    }
    for (auto& th : pool) th.join();
  }

  auto curve_of = [&](size_t pos) {
    RBCurve c;
    size_t curve = curves[pos];
    for (size_t mi = 0; mi < grid(curve).size(); ++mi) {
      auto first = slots.begin() + static_cast<std::ptrdiff_t>(curve_offset[pos] + mi * k);
      c.points.push_back(summarize(grid(curve)[mi], std::vector<double>(first, first + k)));
    }
    return c;
  };
  RBResult result;
  size_t pos = 0;
  if (config.run_reference) result.reference = curve_of(pos++);
  if (config.interleaved) result.interleaved = curve_of(pos);
  return result;
}

std::vector<int> default_m_grid(double p_expected) {
  double span = 1.0 - p_expected;
  int m_max = span > 0 ? static_cast<int>(std::ceil(3.0 / span)) : 5000;
  m_max = std::clamp(m_max, 10, 5000);
  constexpr int kCount = 15;
  std::vector<int> grid;
  grid.reserve(kCount);
  for (int i = 0; i < kCount; ++i) {
    double x = std::exp(std::log(static_cast<double>(m_max)) * i / (kCount - 1));
    int m = static_cast<int>(std::lround(x));
    if (!grid.empty()) m = std::max(m, grid.back() + 1);
    grid.push_back(m);
  }
  grid.back() = std::max(grid.back(), m_max);
  return grid;
}

}  // namespace platonic
