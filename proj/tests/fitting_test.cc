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


#include "platonic/fitting.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace platonic {
namespace {

std::vector<FitPoint> synthetic(double a, double b, double p, int m_max, double sigma = 0,
                                std::mt19937_64* rng = nullptr) {
  std::normal_distribution<double> noise(0, sigma);
  std::vector<FitPoint> pts;
  for (int m = 1; m <= m_max; ++m) {
    double f = a * std::pow(p, m) + b;
    if (rng) f += noise(*rng);
    pts.push_back({static_cast<double>(m), f, 1.0});
  }
  return pts;
}

TEST(FitDecay, NoiselessRoundTrip) {
  auto pts = synthetic(0.5, 0.5, 0.998, 100);
  DecayFit fit = fit_decay(pts);
  EXPECT_NEAR(fit.A, 0.5, 1e-9);
  EXPECT_NEAR(fit.B, 0.5, 1e-9);
  EXPECT_NEAR(fit.p, 0.998, 1e-9);
  EXPECT_LT(fit.residual_norm, 1e-9);
  EXPECT_FALSE(fit.unidentifiable);
}

TEST(FitDecay, RoundTripAcrossParameterRange) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ab(0.3, 0.7);
  std::uniform_real_distribution<double> lp(std::log(1 - 0.9999), std::log(1 - 0.9));
  for (int trial = 0; trial < 50; ++trial) {
    double a = ab(rng);
    double b = ab(rng);
    double p = 1 - std::exp(lp(rng));
    int m_max = std::clamp(static_cast<int>(3 / (1 - p)), 20, 3000);
    std::vector<FitPoint> pts;
    for (double m = 1; m <= m_max; m = std::ceil(m * 1.3)) {
      pts.push_back({m, a * std::pow(p, m) + b, 1.0});
    }
    DecayFit fit = fit_decay(pts);
    EXPECT_NEAR(fit.p / p, 1.0, 1e-6) << "p=" << p << " A=" << a << " B=" << b;
  }
}

TEST(FitDecay, NoisyCoverage) {
  std::mt19937_64 rng(42);
  int covered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = synthetic(0.5, 0.5, 0.998, 100, 0.005, &rng);
    DecayFit fit = fit_decay(pts);
    ASSERT_GT(fit.p_std_error, 0);
    if (std::abs(fit.p - 0.998) <= 3 * fit.p_std_error) ++covered;
  }
  EXPECT_GE(covered, 95);
}

TEST(FitDecay, OptimumPastOneIsClampedAndFlagged) {
  // Slightly convex data: the least-squares optimum has p > 1.
  std::vector<FitPoint> pts;
  for (int m : {1, 10, 20, 40, 80}) {
    pts.push_back({static_cast<double>(m), -0.1 * std::pow(1.002, m) + 1.05, 1.0});
  }
  DecayFit fit = fit_decay(pts);
  EXPECT_TRUE(fit.p_at_boundary);
  EXPECT_LT(fit.p, 1.0);
  EXPECT_GT(fit.p, 1 - 1e-8);
  EXPECT_LT(fit.residual_norm, 1e-9);
}

TEST(FitDecay, FlatDataIsUnidentifiable) {
  std::vector<FitPoint> pts;
  for (int m : {1, 5, 10, 50}) pts.push_back({static_cast<double>(m), 0.97, 1.0});
  DecayFit fit = fit_decay(pts);
  EXPECT_TRUE(fit.unidentifiable);
  EXPECT_NEAR(fit.B, 0.97, 1e-15);
  EXPECT_EQ(fit_report(fit)["flags"][0], "unidentifiable");
}

TEST(FitDecay, InvariantUnderReordering) {
  std::mt19937_64 rng(43);
  auto pts = synthetic(0.45, 0.52, 0.99, 60, 0.003, &rng);
  for (auto& p : pts) p.weight = 1 + p.m / 30;
  DecayFit a = fit_decay(pts);
  std::shuffle(pts.begin(), pts.end(), rng);
  DecayFit b = fit_decay(pts);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.B, b.B);
  EXPECT_EQ(a.p_std_error, b.p_std_error);
}

TEST(FitDecay, RejectsTooFewLengths) {
  std::vector<FitPoint> pts = {{1, 0.9, 1}, {1, 0.91, 1}, {2, 0.85, 1}};
  EXPECT_THROW(fit_decay(pts), std::invalid_argument);
  pts.push_back({3, std::nan(""), 1});
  EXPECT_THROW(fit_decay(pts), std::invalid_argument);
}

TEST(FitPoints, WeightsFromStandardErrors) {
  RBCurve c;
  c.points = {{1, 0.99, 0.01, 10, {}}, {2, 0.98, 0.02, 10, {}}};
  auto pts = fit_points(c);
  EXPECT_NEAR(pts[0].weight, 1e4, 1e-6);
  EXPECT_NEAR(pts[1].weight, 2.5e3, 1e-6);
  c.points[1].std_error = 0;
  pts = fit_points(c);
  EXPECT_EQ(pts[0].weight, 1.0);
  EXPECT_EQ(pts[1].weight, 1.0);
}

TEST(Errors, ClosedForms) {
  EXPECT_EQ(reference_error(1.0), 0.0);
  EXPECT_NEAR(reference_error(0.9982), 9e-4, 1e-15);
  EXPECT_NEAR(reference_error(0.998), 1e-3, 1e-15);
  InterleavedError same = interleaved_error(0.97, 0.97);
  EXPECT_EQ(same.r, 0.0);
  EXPECT_EQ(same.fidelity, 1.0);
  EXPECT_NEAR(interleaved_error(0.998 * 0.97, 0.97).r, 1e-3, 1e-15);
  InterleavedError neg = interleaved_error(0.99, 0.98);
  EXPECT_TRUE(neg.negative_error);
  EXPECT_LT(neg.r, 0);
  EXPECT_THROW(interleaved_error(0.9, 0.0), std::invalid_argument);
  EXPECT_EQ(gate_fidelity(2e-4), 1 - 2e-4);
}

TEST(Bootstrap, MatchesLinearizedErrorScale) {
  std::mt19937_64 gen(44);
  std::normal_distribution<double> noise(0, 0.01);
  RBCurve c;
  for (int m : {1, 5, 10, 20, 40, 80, 160}) {
    RBPoint pt;
    pt.m = m;
    pt.k = 40;
    double mean = 0.5 * std::pow(0.99, m) + 0.5;
    double sum = 0;
    double sq = 0;
    for (int i = 0; i < pt.k; ++i) {
      double f = mean + noise(gen);
      pt.fidelities.push_back(f);
      sum += f;
      sq += f * f;
    }
    pt.mean = sum / pt.k;
    pt.std_error = std::sqrt((sq / pt.k - pt.mean * pt.mean) * pt.k / (pt.k - 1) / pt.k);
    c.points.push_back(pt);
  }
  DecayFit fit = fit_decay(c);
  Rng rng(45, kTagBootstrap);
  double boot = bootstrap_p_std_error(c, 200, rng);
  EXPECT_GT(boot, fit.p_std_error / 3);
  EXPECT_LT(boot, fit.p_std_error * 3);
}

}  // namespace
}  // namespace platonic
