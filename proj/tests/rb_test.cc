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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "platonic/fitting.h"

namespace platonic {
namespace {

TEST(Sequence, RecoveryRestoresIdentity) {
  for (GroupKind kind : {GroupKind::kTetrahedral, GroupKind::kIcosahedral}) {
    const Group& g = group(kind);
    Rng rng(1, kTagTest);
    for (int m : {1, 2, 7, 50}) {
      auto seq = generate_sequence(g, m, std::nullopt, rng);
      ASSERT_EQ(seq.size(), static_cast<size_t>(m + 1));
      EXPECT_EQ(g.compose(seq), g.identity_index());
      auto inter = generate_sequence(g, m, 3, rng);
      ASSERT_EQ(inter.size(), static_cast<size_t>(2 * m + 1));
      for (size_t i = 1; i + 1 < inter.size(); i += 2) EXPECT_EQ(inter[i], 3);
      EXPECT_EQ(g.compose(inter), g.identity_index());
    }
    EXPECT_THROW(generate_sequence(g, 0, std::nullopt, rng), std::invalid_argument);
  }
}

TEST(Sequence, DrawsAreUniform) {
  const Group& g = group(GroupKind::kIcosahedral);
  Rng rng(2, kTagTest);
  std::vector<int> counts(g.order(), 0);
  const int m = 60000;
  auto seq = generate_sequence(g, m, std::nullopt, rng);
  for (int i = 0; i < m; ++i) ++counts[seq[i]];
  double expected = static_cast<double>(m) / g.order();
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 59 degrees of freedom; the 0.999 quantile is about 99.6.
  EXPECT_LT(chi2, 99.6);
}

TEST(Sequence, SeedDeterminism) {
  const Group& g = group(GroupKind::kOctahedral);
  Rng a(7, kTagSequence, 5, 1);
  Rng b(7, kTagSequence, 5, 1);
  Rng c(7, kTagSequence, 5, 2);
  auto sa = generate_sequence(g, 40, std::nullopt, a);
  EXPECT_EQ(sa, generate_sequence(g, 40, std::nullopt, b));
  EXPECT_NE(sa, generate_sequence(g, 40, std::nullopt, c));
}

TEST(Simulator, NoiselessSequencesReturnToGround) {
  for (GroupKind kind : {GroupKind::kTetrahedral, GroupKind::kOctahedral,
                         GroupKind::kIcosahedral}) {
    const Group& g = group(kind);
    auto sim = SequenceSimulator::gate_level(g, NoiseModel{});
    Rng rng(3, kTagTest);
    for (int m : {1, 10, 100}) {
      EXPECT_NEAR(sim.fidelity(generate_sequence(g, m, std::nullopt, rng)), 1.0, 1e-10);
    }
  }
}

TEST(Simulator, DepolarizingClosedForm) {
  // Depolarizing errors commute with every rotation, so the survival of one
  // sequence is (1 + prod over gates (1 - s)) / 2.
  const double s = 0.004;
  NoiseModel noise = NoiseModel::uniform(depolarizing(s));
  const Group& g = group(GroupKind::kIcosahedral);
  auto sim = SequenceSimulator::gate_level(g, noise);
  Rng rng(4, kTagTest);
  for (int m : {1, 5, 40}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto seq = generate_sequence(g, m, std::nullopt, rng);
      size_t gates = 0;
      for (int e : seq) gates += g.element(e).word.size();
      double want = (1 + std::pow(1 - s, static_cast<double>(gates))) / 2;
      EXPECT_NEAR(sim.fidelity(seq), want, 1e-12);
      Rng unused(0);
      EXPECT_NEAR(sequence_fidelity(g, seq, noise, std::nullopt, unused), want, 1e-12);
    }
  }
  double mean_lambda = 0;
  for (const auto& e : g.elements()) mean_lambda += std::pow(1 - s, e.word.size());
  EXPECT_NEAR(expected_decay(g, noise), mean_lambda / g.order(), 1e-12);
}

TEST(Simulator, PulseAndGateRoutesAgreeForIdealPulses) {
  PulseSimConfig cfg;
  cfg.two_level = true;
  Decoherence d{20000, 30000};
  NoiseModel noise;
  noise.decoherence = d;
  for (GroupKind kind : {GroupKind::kOctahedral, GroupKind::kIcosahedral}) {
    const Group& g = group(kind);
    PulseGateSet set(area_params(g, cfg), g, cfg);
    auto pulse = SequenceSimulator::pulse_level(g, set, d);
    auto gate = SequenceSimulator::gate_level(g, noise);
    Rng rng(5, kTagTest);
    for (int m : {1, 20, 200}) {
      auto seq = generate_sequence(g, m, std::nullopt, rng);
      EXPECT_NEAR(pulse.fidelity(seq), gate.fidelity(seq), 1e-9) << m;
    }
  }
}

TEST(Decoherence, QutritChannelIsTracePreserving) {
  auto s = qutrit_decoherence({15000, 9000}, 12);
  // Column-stacked: the trace functional is rows 0, 4, 8.
  Eigen::Matrix<cd, 1, 9> tr = Eigen::Matrix<cd, 1, 9>::Zero();
  tr(0) = tr(4) = tr(8) = 1;
  EXPECT_LT((tr * s - tr).cwiseAbs().maxCoeff(), 1e-14);
  // |1><1| decays to |0><0| with probability 1 - exp(-t/T1).
  EXPECT_NEAR(s(0, 4).real(), 1 - std::exp(-12.0 / 15000), 1e-15);
  // rho_01 decays by the amplitude factor and the dephasing factor.
  EXPECT_NEAR(std::abs(s(3, 3)), std::exp(-6.0 / 15000) * std::exp(-12.0 / 9000), 1e-15);
}

TEST(Shots, BinomialStatistics) {
  Rng rng(6, kTagTest);
  EXPECT_EQ(sample_shots(1.0, 100, rng), 1.0);
  EXPECT_EQ(sample_shots(0.0, 100, rng), 0.0);
  double sum = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) sum += sample_shots(0.8, 100, rng);
  // Standard error of the mean is sqrt(0.16 / 100 / 2000) ~ 9e-4.
  EXPECT_NEAR(sum / trials, 0.8, 4e-3);
}

RBConfig small_config() {
  RBConfig c;
  c.group_kind = GroupKind::kOctahedral;
  c.m_values = {1, 5, 20, 60, 150};
  c.k = 30;
  c.noise = NoiseModel::uniform(depolarizing(0.004));
  c.seed = 11;
  return c;
}

TEST(RunRB, IdenticalAcrossThreadCounts) {
  RBConfig c = small_config();
  c.interleaved = 4;
  c.shots = 200;
  RBResult one = run_rb(c);
  c.threads = 4;
  RBResult four = run_rb(c);
  ASSERT_EQ(one.reference.points.size(), four.reference.points.size());
  for (size_t i = 0; i < one.reference.points.size(); ++i) {
    EXPECT_EQ(one.reference.points[i].fidelities, four.reference.points[i].fidelities);
    EXPECT_EQ(one.interleaved->points[i].fidelities, four.interleaved->points[i].fidelities);
  }
}

TEST(RunRB, PointStatistics) {
  RBResult r = run_rb(small_config());
  for (const auto& p : r.reference.points) {
    ASSERT_EQ(p.k, 30);
    double mean = std::accumulate(p.fidelities.begin(), p.fidelities.end(), 0.0) / p.k;
    EXPECT_NEAR(p.mean, mean, 1e-15);
    double ss = 0;
    for (double f : p.fidelities) ss += (f - mean) * (f - mean);
    EXPECT_NEAR(p.std_error, std::sqrt(ss / (p.k - 1) / p.k), 1e-15);
  }
}

TEST(RunRB, FittedDecayMatchesExpectation) {
  RBConfig c = small_config();
  c.k = 100;
  RBResult r = run_rb(c);
  DecayFit fit = fit_decay(r.reference);
  double p = expected_decay(group(c.group_kind), c.noise);
  EXPECT_NEAR(fit.p, p, 5 * fit.p_std_error + 1e-4);
}

TEST(RunRB, InterleavingANoiselessIdentityCostsNothing) {
  RBConfig c = small_config();
  c.k = 100;
  const Group& g = group(c.group_kind);
  c.interleaved = g.identity_index();
  c.noise.per_gate[PhysicalGate::idle().label()] = Channel();
  RBResult r = run_rb(c);
  DecayFit ref = fit_decay(r.reference);
  DecayFit inter = fit_decay(*r.interleaved);
  InterleavedError e = interleaved_error(inter.p, ref.p);
  EXPECT_LT(std::abs(e.r), 3e-4);
}

TEST(RunRB, RejectsBadConfigs) {
  RBConfig c = small_config();
  c.m_values = {5, 5};
  EXPECT_THROW(run_rb(c), std::invalid_argument);
  c = small_config();
  c.k = 0;
  EXPECT_THROW(run_rb(c), std::invalid_argument);
  c = small_config();
  c.interleaved = 99;
  EXPECT_THROW(run_rb(c), std::invalid_argument);
  c = small_config();
  c.noise.per_gate["Z2pi/5"] = depolarizing(0.1);
  EXPECT_THROW(run_rb(c), std::invalid_argument);
  c = small_config();
  c.interleaved = 1;
  c.interleaved_word = group(c.group_kind).element(2).word;
  EXPECT_THROW(run_rb(c), std::invalid_argument);
}

TEST(DefaultGrid, ShapeAndRange) {
  for (double p : {0.5, 0.99, 0.999, 0.99999}) {
    auto grid = default_m_grid(p);
    ASSERT_EQ(grid.size(), 15u);
    EXPECT_EQ(grid.front(), 1);
    for (size_t i = 1; i < grid.size(); ++i) EXPECT_GT(grid[i], grid[i - 1]);
    int want = std::clamp(static_cast<int>(std::ceil(3 / (1 - p))), 10, 5000);
    // Fifteen distinct lengths need m_max >= 15.
    EXPECT_EQ(grid.back(), std::max(want, 15)) << p;
  }
}

}  // namespace
}  // namespace platonic
