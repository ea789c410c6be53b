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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "platonic/rng.h"

namespace platonic {
namespace {

TEST(NelderMead, QuadraticBowl) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {2, 5, 14}) {
    std::vector<double> c(n);
    std::vector<double> x0(n);
    for (int i = 0; i < n; ++i) {
      c[i] = u(rng);
      x0[i] = u(rng);
    }
    auto f = [&](std::span<const double> x) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
      return s;
    };
    NelderMeadResult r = nelder_mead(f, x0, std::vector<double>(n, 0.5), 500 * n);
    double dist = 0;
    for (int i = 0; i < n; ++i) dist += (r.x[i] - c[i]) * (r.x[i] - c[i]);
    EXPECT_LT(std::sqrt(dist), 1e-5) << "n=" << n << " evals=" << r.evaluations;
    EXPECT_LE(r.evaluations, 500 * n);
    EXPECT_EQ(static_cast<int>(r.trace.size()), r.evaluations);
  }
}

TEST(NelderMead, QuadraticBowlWithin500Evaluations) {
  std::vector<double> c = {0.3, -0.7, 0.1};
  auto f = [&](std::span<const double> x) {
    double s = 0;
    for (size_t i = 0; i < c.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    return s;
  };
  NelderMeadResult r = nelder_mead(f, {0, 0, 0}, {0.5, 0.5, 0.5}, 500);
  double dist = 0;
  for (size_t i = 0; i < c.size(); ++i) dist += (r.x[i] - c[i]) * (r.x[i] - c[i]);
  EXPECT_LT(std::sqrt(dist), 1e-5);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, {0.1, 0.1}, 2000);
  EXPECT_LT(r.value, 1e-6);
  EXPECT_LE(r.evaluations, 2000);
}

TEST(NelderMead, BudgetOneReturnsStart) {
  int calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return x[0] * x[0];
  };
  NelderMeadResult r = nelder_mead(f, {0.7}, {0.1}, 1);
  EXPECT_EQ(r.x, std::vector<double>{0.7});
  EXPECT_EQ(r.value, 0.7 * 0.7);
  EXPECT_EQ(calls, 1);
}

TEST(SteepestM, Clamped) {
  EXPECT_EQ(steepest_m(0.99), 100);
  EXPECT_EQ(steepest_m(0.0), 1);
  EXPECT_EQ(steepest_m(1.0), 500);
  EXPECT_EQ(steepest_m(0.999999), 500);
}

ObjectiveSpec two_level_spec(GroupKind kind) {
  ObjectiveSpec s;
  s.group_kind = kind;
  s.fixed_m = 100;
  s.pulse_cfg.two_level = true;
  s.layout = area_params(group(kind), s.pulse_cfg);
  s.seed = 5;
  return s;
}

TEST(Objective, IdealPulsesCloseLoops) {
  for (GroupKind kind : {GroupKind::kTetrahedral, GroupKind::kIcosahedral}) {
    ObjectiveSpec s = two_level_spec(kind);
    EXPECT_LT(orbit_objective(s.layout.to_vector(), s), 1e-6);
  }
}

TEST(Objective, FrozenSetIsDeterministic) {
  ObjectiveSpec s = two_level_spec(GroupKind::kOctahedral);
  std::vector<double> x = s.layout.to_vector();
  x[0] *= 1.01;
  OrbitObjective obj(s);
  double a = obj(x);
  double b = obj(x);
  EXPECT_EQ(a, b);
  s.threads = 4;
  EXPECT_EQ(orbit_objective(x, s), a);
  EXPECT_EQ(obj.evaluations(), 2);

  s.threads = 1;
  s.seed_policy = SeedPolicy::kResampled;
  OrbitObjective fresh(s);
  double c = fresh(x);
  double d = fresh(x);
  EXPECT_NE(c, d);
  OrbitObjective again(s);
  EXPECT_EQ(again(x), c);
  EXPECT_THROW(obj(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Objective, CoordinateProbesRaiseObjective) {
  ObjectiveSpec s = two_level_spec(GroupKind::kOctahedral);
  std::vector<double> x = s.layout.to_vector();
  double base = orbit_objective(x, s);
  // The DRAG entry is inert without a third level; probe the amplitudes.
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    for (double f : {0.995, 1.005}) {
      std::vector<double> y = x;
      y[i] *= f;
      EXPECT_GT(orbit_objective(y, s), base) << i << " " << f;
    }
  }
}

TEST(Objective, OverRotationRaisesObjectiveInQutritModel) {
  ObjectiveSpec s;
  s.group_kind = GroupKind::kTetrahedral;
  s.fixed_m = 100;
  s.seed = 6;
  PulseParams cal = calibrate(s.group_kind, s.pulse_cfg);
  s.layout = cal;
  std::vector<double> x = cal.to_vector();
  double base = orbit_objective(x, s);
  cal.xy_amplitudes.at(AngleMagnitude::kPi) *= 1.01;
  EXPECT_GT(orbit_objective(cal.to_vector(), s), base);
}

TEST(Tune, NeverWorseThanStart) {
  ObjectiveSpec s;
  s.group_kind = GroupKind::kTetrahedral;
  s.fixed_m = 50;
  s.seed = 7;
  PulseParams cal = calibrate(s.group_kind, s.pulse_cfg);
  OrbitOptions o;
  o.budget = 80;
  OrbitResult r = orbit_tune(cal, s, o);
  EXPECT_LE(r.final_objective, r.start_objective);
  EXPECT_LE(r.heldout_final, r.heldout_start);
  EXPECT_LE(r.search.evaluations, 80);
}

TEST(Tune, TwoLevelRecoversFromOverRotation) {
  ObjectiveSpec s = two_level_spec(GroupKind::kTetrahedral);
  s.fixed_m = 200;
  PulseParams start = s.layout;
  for (auto& [m, a] : start.xy_amplitudes) a *= 1.01;
  OrbitResult r = orbit_tune(start, s);
  EXPECT_TRUE(r.confirmed);
  EXPECT_LT(r.heldout_final * 10, r.heldout_start);
  for (const auto& [m, a] : r.params.xy_amplitudes) {
    EXPECT_NEAR(a / s.layout.xy_amplitudes.at(m), 1.0, 1e-3) << magnitude_label(m);
  }
}

TEST(Tune, IcosahedralFromSmallRandomPerturbation) {
  ObjectiveSpec s;
  s.group_kind = GroupKind::kIcosahedral;
  PulseParams cal = calibrate(s.group_kind, s.pulse_cfg);
  s.fixed_m = steepest_m(estimated_decay(cal, s.group_kind, s.pulse_cfg));
  s.seed = 8;
  ASSERT_EQ(cal.parameter_count(), 14);
  Rng rng(9, kTagTest);
  std::vector<double> x = cal.to_vector();
  for (size_t i = 0; i + 1 < x.size(); ++i) x[i] *= 1 + 0.005 * (2 * rng.uniform01() - 1);
  PulseParams start = cal.with_vector(x);
  OrbitResult r = orbit_tune(start, s);

  ObjectiveSpec held = s;
  held.n_sequences = 50;
  OrbitObjective heldout(held, 1);
  double calibrated = heldout.evaluate(cal);
  EXPECT_LE(r.heldout_final, r.heldout_start);
  EXPECT_LT(r.heldout_final, 2 * calibrated);
}

}  // namespace
}  // namespace platonic
