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


#include "platonic/groups.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "oracles.h"

namespace platonic {
namespace {

const GroupKind kKinds[] = {GroupKind::kTetrahedral, GroupKind::kOctahedral,
                            GroupKind::kIcosahedral};

double max_abs(const Eigen::Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }

// Rotation angle from the trace, tr R = 1 + 2 cos(theta).
double trace_angle(const BlochRotation& r) {
  return std::acos(std::clamp((r.trace() - 1) / 2, -1.0, 1.0));
}

TEST(BuildGroup, OrdersAndDistinctness) {
  const int orders[] = {12, 24, 60};
  for (int k = 0; k < 3; ++k) {
    Group g = build_group(kKinds[k]);
    ASSERT_EQ(g.order(), orders[k]);
    for (int i = 0; i < g.order(); ++i) {
      for (int j = i + 1; j < g.order(); ++j) {
        EXPECT_GT(max_abs(g.element(i).bloch - g.element(j).bloch), 1e-6) << i << " " << j;
      }
    }
  }
}

TEST(BuildGroup, WordsMultiplyLastAppliedLeftmost) {
  for (GroupKind kind : kKinds) {
    const Group& g = group(kind);
    for (const auto& e : g.elements()) {
      Unitary2 u = Unitary2::Identity();
      for (const auto& gate : e.word) {
        Eigen::Vector3d axis = gate.axis == GateAxis::kX   ? Eigen::Vector3d::UnitX()
                               : gate.axis == GateAxis::kY ? Eigen::Vector3d::UnitY()
                                                           : Eigen::Vector3d::UnitZ();
        u = oracle::rotation(axis, gate.angle.radians()) * u;
      }
      EXPECT_TRUE(equal_up_to_phase(e.unitary, u, 1e-10)) << word_label(e.word);
    }
  }
}

TEST(BuildGroup, ClosureAndInverses) {
  for (GroupKind kind : kKinds) {
    const Group& g = group(kind);
    for (int i = 0; i < g.order(); ++i) {
      for (int j = 0; j < g.order(); ++j) {
        int k = g.multiply(i, j);
        ASSERT_GE(k, 0);
        BlochRotation prod = g.element(i).bloch * g.element(j).bloch;
        EXPECT_LT(max_abs(prod - g.element(k).bloch), 1e-9);
        int matches = 0;
        for (const auto& e : g.elements()) matches += max_abs(prod - e.bloch) < 1e-9;
        EXPECT_EQ(matches, 1);
      }
      EXPECT_EQ(g.multiply(i, g.inverse(i)), g.identity_index());
      EXPECT_EQ(g.multiply(g.inverse(i), i), g.identity_index());
    }
  }
}

TEST(BuildGroup, TetrahedralSetIsShared) {
  const Group& t = group(GroupKind::kTetrahedral);
  for (GroupKind kind : {GroupKind::kOctahedral, GroupKind::kIcosahedral}) {
    const Group& g = group(kind);
    for (const auto& e : t.elements()) EXPECT_TRUE(g.find(e.bloch).has_value());
    EXPECT_EQ(tetrahedral_subset(g).size(), 12u);
  }
}

TEST(BuildGroup, IcosahedralClassSizes) {
  std::map<int, int> by_angle;  // angle in units of pi/15
  for (const auto& e : group(GroupKind::kIcosahedral).elements()) {
    ++by_angle[static_cast<int>(std::lround(trace_angle(e.bloch) / (kPi / 15)))];
  }
  // identity, 2pi/5, 2pi/3, 4pi/5, pi
  std::map<int, int> want = {{0, 1}, {6, 12}, {10, 20}, {12, 12}, {15, 15}};
  EXPECT_EQ(by_angle, want);

  std::map<ElementClass, int> classes;
  for (const auto& e : group(GroupKind::kIcosahedral).elements()) ++classes[e.element_class];
  EXPECT_EQ(classes[ElementClass::kIdentity], 1);
  EXPECT_EQ(classes[ElementClass::kEdgePi], 15);
  EXPECT_EQ(classes[ElementClass::kFace2PiOver3], 20);
  EXPECT_EQ(classes[ElementClass::kVertex2PiOver5], 12);
  EXPECT_EQ(classes[ElementClass::kVertex4PiOver5], 12);
}

TEST(BuildGroup, AnglesByKind) {
  // Allowed rotation angles, in units of pi/60.
  std::map<GroupKind, std::set<int>> allowed = {
      {GroupKind::kTetrahedral, {0, 40, 60}},
      {GroupKind::kOctahedral, {0, 30, 40, 60}},
      {GroupKind::kIcosahedral, {0, 24, 40, 48, 60}},
  };
  for (GroupKind kind : kKinds) {
    for (const auto& e : group(kind).elements()) {
      double units = trace_angle(e.bloch) / (kPi / 60);
      int u = static_cast<int>(std::lround(units));
      EXPECT_NEAR(units, u, 1e-6);
      EXPECT_TRUE(allowed[kind].count(u)) << group_kind_name(kind) << " " << u;
    }
  }
}

TEST(AvgWordLength, ExactRationals) {
  EXPECT_EQ(avg_word_length(group(GroupKind::kTetrahedral)), (Rational{7, 4}));
  EXPECT_EQ(avg_word_length(group(GroupKind::kOctahedral)), (Rational{15, 8}));
  EXPECT_EQ(avg_word_length(group(GroupKind::kIcosahedral)), (Rational{64, 15}));
  EXPECT_EQ(avg_word_length(group(GroupKind::kIcosahedral)).str(), "64/15");
}

TEST(Catalan, MatchesBinomialFormulaAndHaarIntegral) {
  // C_t = (2t)! / (t! (t+1)!)
  for (int t = 1; t <= 6; ++t) {
    double c = 1;
    for (int k = 2; k <= t; ++k) c *= static_cast<double>(t + k) / k;
    EXPECT_EQ(catalan(t), std::round(c));
  }
  // Monte-Carlo Haar average of |Tr U|^{2t}.
  std::mt19937_64 rng(21);
  const int n = 200000;
  std::vector<double> sums(7, 0.0);
  for (int s = 0; s < n; ++s) {
    double x = std::norm(oracle::haar_unitary(rng).trace());
    double p = 1;
    for (int t = 1; t <= 6; ++t) {
      p *= x;
      sums[t] += p;
    }
  }
  for (int t = 1; t <= 6; ++t) {
    EXPECT_NEAR(sums[t] / n / catalan(t), 1.0, 0.03 * t) << "t=" << t;
  }
}

TEST(FramePotential, MatchesCatalanUpToDesignOrder) {
  for (GroupKind kind : kKinds) {
    const Group& g = group(kind);
    int claimed = claimed_design_order(kind);
    for (int t = 1; t <= 6; ++t) {
      double fp = frame_potential(g, t);
      EXPECT_GE(fp, catalan(t) - 1e-9);
      if (t <= claimed) {
        EXPECT_NEAR(fp, catalan(t), 1e-9) << group_kind_name(kind) << " t=" << t;
      } else {
        EXPECT_GT(fp, catalan(t) + 1e-6) << group_kind_name(kind) << " t=" << t;
      }
    }
  }
  EXPECT_NEAR(frame_potential(group(GroupKind::kTetrahedral), 1), 1.0, 1e-9);
  EXPECT_NEAR(frame_potential(group(GroupKind::kOctahedral), 3), 5.0, 1e-9);
  EXPECT_GT(frame_potential(group(GroupKind::kOctahedral), 4), 14);
  EXPECT_NEAR(frame_potential(group(GroupKind::kIcosahedral), 5), 42.0, 1e-9);
  EXPECT_GT(frame_potential(group(GroupKind::kIcosahedral), 6), 132);
  EXPECT_THROW(frame_potential(group(GroupKind::kIcosahedral), 7), std::invalid_argument);
}

// Explicit sum over the group of U^dagger ch U acting on Bloch basis vectors.
Eigen::Matrix3d twirl_oracle(const Group& g, const std::vector<Eigen::Matrix2cd>& kraus) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  Eigen::Matrix2cd half = 0.5 * Eigen::Matrix2cd::Identity();
  for (const auto& e : g.elements()) {
    for (int b = 0; b < 3; ++b) {
      Eigen::Matrix2cd rho = 0.5 * oracle::pauli(b);  // traceless part only
      Eigen::Matrix2cd in = e.unitary * rho * e.unitary.adjoint();
      Eigen::Matrix2cd out = oracle::apply_kraus(kraus, in + half) - oracle::apply_kraus(kraus, half);
      Eigen::Matrix2cd back = e.unitary.adjoint() * out * e.unitary;
      for (int a = 0; a < 3; ++a) m(a, b) += (oracle::pauli(a) * back).trace().real();
    }
  }
  return m / g.order();
}

TEST(Twirl, AmplitudeDampingOverCliffords) {
  const Group& g = group(GroupKind::kOctahedral);
  Channel ad = amplitude_damping(0.01);
  Channel tw = twirl_channel(g, ad);
  double lambda = (2 * std::sqrt(0.99) + 0.99) / 3;
  EXPECT_NEAR(lambda, 0.993325, 1e-6);
  EXPECT_LT(max_abs(tw.bloch_block() - lambda * Eigen::Matrix3d::Identity()), 1e-9);
  EXPECT_LT(max_abs(twirl_oracle(g, ad.kraus()) - tw.bloch_block()), 1e-9);
  EXPECT_LT((tw.transfer_matrix().col(0) - Eigen::Vector4d::UnitX()).norm(), 1e-9);
}

TEST(Twirl, CoherentOverRotation) {
  Channel tw = twirl_channel(group(GroupKind::kTetrahedral), coherent_error(Axis::x(), 0.02));
  double lambda = (1 + 2 * std::cos(0.02)) / 3;
  EXPECT_LT(max_abs(tw.bloch_block() - lambda * Eigen::Matrix3d::Identity()), 1e-9);
}

TEST(Twirl, IdentityAndFixedPoint) {
  std::mt19937_64 rng(22);
  for (GroupKind kind : kKinds) {
    const Group& g = group(kind);
    EXPECT_LT(max_abs(twirl_channel(g, Channel()).bloch_block() - Eigen::Matrix3d::Identity()), 1e-12);
    Channel ch = Channel::from_kraus(oracle::random_kraus(rng, 3));
    Channel once = twirl_channel(g, ch);
    Channel twice = twirl_channel(g, once);
    EXPECT_LT((once.transfer_matrix() - twice.transfer_matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(average_gate_error(once, Unitary2::Identity()),
                average_gate_error(ch, Unitary2::Identity()), 1e-12);
  }
}

TEST(Recovery, Definitions) {
  std::mt19937_64 rng(23);
  for (GroupKind kind : kKinds) {
    const Group& g = group(kind);
    EXPECT_EQ(recovery_element(g, {}), g.identity_index());
    for (int i = 0; i < g.order(); ++i) {
      std::vector<int> one = {i};
      EXPECT_EQ(recovery_element(g, one), g.inverse(i));
    }
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> seq(20);
      for (int& s : seq) s = pick(rng);
      int r = recovery_element(g, seq);
      Eigen::Matrix3d total = Eigen::Matrix3d::Identity();
      for (int s : seq) total = g.element(s).bloch * total;
      total = g.element(r).bloch * total;
      EXPECT_LT(max_abs(total - Eigen::Matrix3d::Identity()), 1e-9);
    }
  }
}

TEST(SolidOrbit, VertexSets) {
  SolidOrbit ico = solid_orbit(group(GroupKind::kIcosahedral));
  EXPECT_TRUE(ico.ok());
  EXPECT_EQ(ico.points.size(), 12u);
  ASSERT_EQ(ico.inner_products.size(), 4u);
  EXPECT_NEAR(ico.inner_products[1], -1 / std::sqrt(5.0), 1e-12);

  SolidOrbit octa = solid_orbit(group(GroupKind::kOctahedral));
  EXPECT_TRUE(octa.ok());
  ASSERT_EQ(octa.points.size(), 6u);
  for (const auto& p : octa.points) EXPECT_NEAR(p.cwiseAbs().maxCoeff(), 1.0, 1e-12);

  SolidOrbit tetra = solid_orbit(group(GroupKind::kTetrahedral));
  EXPECT_TRUE(tetra.ok());
  ASSERT_EQ(tetra.points.size(), 8u);
  for (const auto& p : tetra.points) {
    EXPECT_LT((p.cwiseAbs() - Eigen::Vector3d::Constant(1 / std::sqrt(3.0))).norm(), 1e-12);
  }
  for (GroupKind kind : kKinds) EXPECT_TRUE(solid_orbit_check(group(kind)));
}

TEST(GroupJson, Shape) {
  auto j = group_to_json(group(GroupKind::kTetrahedral));
  EXPECT_EQ(j["order"], 12);
  EXPECT_EQ(j["kind"], "tetrahedral");
  EXPECT_EQ(j["avg_word_length"], "7/4");
  ASSERT_EQ(j["elements"].size(), 12u);
  const auto& e = j["elements"][1];
  EXPECT_TRUE(e.contains("class"));
  EXPECT_EQ(e["bloch"].size(), 3u);
  for (const auto& gate : e["word"]) {
    EXPECT_TRUE(gate.contains("axis"));
    EXPECT_TRUE(gate.contains("angle"));
    EXPECT_TRUE(gate.contains("duration_ns"));
  }
}

TEST(GroupCache, SharedAcrossThreads) {
  const Group* seen[4] = {};
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i) ts.emplace_back([&, i] { seen[i] = &group(GroupKind::kIcosahedral); });
  for (auto& t : ts) t.join();
  for (int i = 1; i < 4; ++i) EXPECT_EQ(seen[i], seen[0]);
}

}  // namespace
}  // namespace platonic
