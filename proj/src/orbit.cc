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


#include "platonic/orbit.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "platonic/rb.h"
#include "platonic/rng.h"

namespace platonic {

namespace {

constexpr int kMaxFixedM = 500;
constexpr std::uint64_t kHeldOutStream = 1;

}  // namespace

int steepest_m(double p) {
  if (!(p < 1)) return kMaxFixedM;
  double m = 1.0 / (1.0 - p);
  return static_cast<int>(std::clamp(std::round(m), 1.0, static_cast<double>(kMaxFixedM)));
}

double estimated_decay(const PulseParams& params, GroupKind kind, const PulseSimConfig& cfg) {
  const Group& g = group(kind);
  PulseGateSet gates(params, g, cfg);
  double sum = 0;
  for (const auto& e : g.elements()) sum += 2 * qubit_block_fidelity(gates.element(e.index), e.unitary) - 1;
  return sum / g.order();
}

OrbitObjective::OrbitObjective(const ObjectiveSpec& spec, std::uint64_t stream)
    : spec_(spec), stream_(stream) {
  if (spec.fixed_m < 1) throw std::invalid_argument("fixed_m must be >= 1");
  if (spec.n_sequences < 1) throw std::invalid_argument("n_sequences must be >= 1");
  if (spec.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (spec.seed_policy == SeedPolicy::kFrozen) frozen_ = sequences_for_call();
}

std::vector<std::vector<int>> OrbitObjective::sequences_for_call() {
  const Group& g = group(spec_.group_kind);
  std::uint64_t call = spec_.seed_policy == SeedPolicy::kFrozen ? 0 : evaluations_;
  std::vector<std::vector<int>> seqs;
  seqs.reserve(spec_.n_sequences);
  for (int i = 0; i < spec_.n_sequences; ++i) {
    Rng rng(spec_.seed, kTagOrbit, (stream_ << 40) | call, static_cast<std::uint64_t>(i));
    seqs.push_back(generate_sequence(g, spec_.fixed_m, std::nullopt, rng));
  }
  return seqs;
}

double OrbitObjective::evaluate(const PulseParams& params) {
  const Group& g = group(spec_.group_kind);
  std::vector<std::vector<int>> fresh;
  if (spec_.seed_policy == SeedPolicy::kResampled) fresh = sequences_for_call();
  const auto& seqs = spec_.seed_policy == SeedPolicy::kFrozen ? frozen_ : fresh;
  ++evaluations_;

  PulseGateSet gates(params, g, spec_.pulse_cfg);
  SequenceSimulator sim = SequenceSimulator::pulse_level(g, gates, spec_.decoherence);
  std::vector<double> f(seqs.size());
  const size_t n = seqs.size();
  int n_threads = std::min<int>(spec_.threads, static_cast<int>(n));
  if (n_threads <= 1) {
    for (size_t i = 0; i < n; ++i) f[i] = sim.fidelity(seqs[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < n; i = next++) f[i] = sim.fidelity(seqs[i]);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Fixed summation order keeps the value independent of the thread count.
  double sum = 0;
  for (double v : f) sum += v;
  return 1.0 - sum / static_cast<double>(n);
}

double OrbitObjective::operator()(std::span<const double> x) {
  return evaluate(spec_.layout.with_vector(x));
}

double orbit_objective(std::span<const double> x, const ObjectiveSpec& spec) {
  OrbitObjective obj(spec);
  return obj(x);
}

OrbitResult orbit_tune(const PulseParams& start, const ObjectiveSpec& spec,
                       const OrbitOptions& options) {
  ObjectiveSpec s = spec;
  s.layout = start;
  OrbitObjective objective(s);

  std::vector<double> x0 = start.to_vector();
  std::vector<double> scale(x0.size());
  for (size_t i = 0; i + 1 < x0.size(); ++i) {
    scale[i] = std::max(options.amplitude_scale * std::abs(x0[i]), 1e-9);
  }
  scale.back() = options.drag_scale;

  OrbitResult res;
  auto f = [&](std::span<const double> x) { return objective(x); };
  res.search = nelder_mead(f, x0, scale, options.budget);
  // Restart from the best point while budget remains and restarts still help.
  while (res.search.converged && res.search.evaluations < options.budget) {
    NelderMeadResult next =
        nelder_mead(f, res.search.x, scale, options.budget - res.search.evaluations);
    bool improved = next.value < res.search.value;
    res.search.evaluations += next.evaluations;
    res.search.trace.insert(res.search.trace.end(), next.trace.begin(), next.trace.end());
    res.search.converged = next.converged;
    if (!improved) break;
    res.search.x = next.x;
    res.search.value = next.value;
  }
  res.start_objective = res.search.trace.front();
  res.final_objective = res.search.value;
  res.params = start.with_vector(res.search.x);

  ObjectiveSpec held = s;
  held.n_sequences = options.heldout_sequences;
  held.seed_policy = SeedPolicy::kFrozen;
  OrbitObjective heldout(held, kHeldOutStream);
  res.heldout_start = heldout.evaluate(start);
  res.heldout_final = heldout.evaluate(res.params);
  if (res.heldout_final > res.heldout_start) {
    res.confirmed = false;
    res.params = start;
    res.final_objective = res.start_objective;
    res.heldout_final = res.heldout_start;
  }
  return res;
}

}  // namespace platonic
