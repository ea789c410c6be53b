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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include "platonic/errors.h"

namespace platonic {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTolerance = 1e-12;

// (p^m - 1) / (p - 1) and its p-derivative, smooth through p = 1.
struct Geometric {
  double g = 0;
  double dg = 0;
};

Geometric geometric(double p, double m) {
  const double e = p - 1;
  Geometric out;
  if (std::abs(m * e) < 1e-2) {
    // Binomial series of sum_{k<m} (1 + e)^k.
    double c2 = m * (m - 1) / 2;
    double c3 = c2 * (m - 2) / 3;
    double c4 = c3 * (m - 3) / 4;
    double c5 = c4 * (m - 4) / 5;
    double c6 = c5 * (m - 5) / 6;
    out.g = m + e * (c2 + e * (c3 + e * (c4 + e * c5)));
    out.dg = c2 + e * (2 * c3 + e * (3 * c4 + e * (4 * c5 + e * 5 * c6)));
  } else {
    double pm = std::exp(m * std::log1p(e));
    out.g = std::expm1(m * std::log1p(e)) / e;
    out.dg = (m * pm / p - out.g) / e;
  }
  return out;
}

// Model D + c (p^m - 1) / (p - 1), equal to A p^m + B with A = c / (p - 1),
// B = D - A. Unlike (A, B, p) it stays finite as p crosses 1, which noisy
// shallow decays need.
struct Problem {
  Eigen::VectorXd m, f, sw;  // sw = sqrt(weight)

  Eigen::VectorXd residuals(const Eigen::Vector3d& x) const {
    Eigen::VectorXd r(m.size());
    if (!(x(2) > 0)) return Eigen::VectorXd::Constant(m.size(), INFINITY);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      r(i) = sw(i) * (f(i) - (x(0) + x(1) * geometric(x(2), m(i)).g));
    }
    return r;
  }

  // Jacobian of the model (not the residual), weighted.
  Eigen::MatrixXd jacobian(const Eigen::Vector3d& x) const {
    Eigen::MatrixXd j(m.size(), 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      Geometric gm = geometric(x(2), m(i));
      j(i, 0) = sw(i);
      j(i, 1) = sw(i) * gm.g;
      j(i, 2) = sw(i) * x(1) * gm.dg;
    }
    return j;
  }
};

}  // namespace

std::vector<FitPoint> fit_points(const RBCurve& curve) {
  bool all_positive = !curve.points.empty();
  for (const auto& pt : curve.points) all_positive = all_positive && pt.std_error > 0;
  std::vector<FitPoint> out;
  out.reserve(curve.points.size());
  for (const auto& pt : curve.points) {
    double w = all_positive ? 1.0 / (pt.std_error * pt.std_error) : 1.0;
    out.push_back({static_cast<double>(pt.m), pt.mean, w});
  }
  return out;
}

DecayFit fit_decay(std::span<const FitPoint> input) {
  std::vector<FitPoint> pts(input.begin(), input.end());
  for (const auto& p : pts) {
    if (!std::isfinite(p.m) || !std::isfinite(p.fidelity) || !std::isfinite(p.weight) ||
        p.weight <= 0) {
      throw std::invalid_argument("fit points need finite m, fidelity and positive weight");
    }
  }
  std::sort(pts.begin(), pts.end(), [](const FitPoint& a, const FitPoint& b) {
    return std::tie(a.m, a.fidelity, a.weight) < std::tie(b.m, b.fidelity, b.weight);
  });
  std::set<double> distinct;
  for (const auto& p : pts) distinct.insert(p.m);
  if (distinct.size() < 3) throw std::invalid_argument("decay fit needs at least 3 distinct m");

  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Problem prob{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  double fmin = pts[0].fidelity;
  double fmax = pts[0].fidelity;
  for (Eigen::Index i = 0; i < n; ++i) {
    prob.m(i) = pts[i].m;
    prob.f(i) = pts[i].fidelity;
    prob.sw(i) = std::sqrt(pts[i].weight);
    fmin = std::min(fmin, pts[i].fidelity);
    fmax = std::max(fmax, pts[i].fidelity);
  }

  DecayFit fit;
  if (fmax - fmin < 1e-9) {
    fit.B = prob.f.mean();
    fit.p = 1.0;
    fit.unidentifiable = true;
    return fit;
  }

  // Initialization from the first and last points around B = 1/2.
  const FitPoint& first = pts.front();
  const FitPoint& last = pts.back();
  double b0 = 0.5;
  double ratio = (last.fidelity - b0) / (first.fidelity - b0);
  double p0 = ratio > 0 ? std::pow(ratio, 1.0 / (last.m - first.m)) : 0.0;
  if (!(p0 > 1e-6 && p0 < 1 - 1e-9)) p0 = 0.99;
  double a0 = (first.fidelity - b0) / std::pow(p0, first.m);
  Eigen::Vector3d x(a0 + b0, a0 * (p0 - 1), p0);

  Eigen::VectorXd r = prob.residuals(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  Eigen::Vector3d scale = Eigen::Vector3d::Zero();
  bool converged = false;
  int it = 0;
  for (; it < kMaxIterations && !converged; ++it) {
    Eigen::MatrixXd j = prob.jacobian(x);
    scale = scale.cwiseMax(j.colwise().norm().transpose());
    Eigen::Vector3d d = scale.cwiseMax(1e-300);
    Eigen::MatrixXd aug(n + 3, 3);
    aug.topRows(n) = j;
    aug.bottomRows(3) = (std::sqrt(lambda) * d).asDiagonal();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 3);
    rhs.head(n) = r;
    Eigen::Vector3d step = aug.colPivHouseholderQr().solve(rhs);
    Eigen::Vector3d trial = x + step;
    Eigen::VectorXd rt = prob.residuals(trial);
    double ct = rt.squaredNorm();
    if (std::isfinite(ct) && ct <= cost) {
      x = trial;
      r = rt;
      cost = ct;
      lambda = std::max(lambda / 3, 1e-12);
    } else {
      lambda *= 4;
    }
    converged = step.norm() < kStepTolerance * (x.norm() + kStepTolerance) || cost == 0;
  }
  if (!converged) {
    throw ConvergenceError("decay fit did not converge in " + std::to_string(kMaxIterations) +
                           " iterations");
  }

  fit.iterations = it;
  Eigen::VectorXd raw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    raw(i) = prob.f(i) - (x(0) + x(1) * geometric(x(2), prob.m(i)).g);
  }
  fit.residual_norm = raw.norm();

  // Linearized covariance scaled by the reduced chi-square.
  Eigen::MatrixXd j = prob.jacobian(x);
  Eigen::Matrix3d normal = j.transpose() * j;
  double dof = static_cast<double>(n) - 3;
  double s2 = dof > 0 ? cost / dof : 1.0;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
  if (lu.isInvertible()) {
    double var_p = lu.inverse()(2, 2) * s2;
    fit.p_std_error = std::sqrt(std::max(var_p, 0.0));
  } else {
    fit.unidentifiable = true;
  }
  if (std::abs(x(1)) < 1e-14) fit.unidentifiable = true;
  // Noise can put the optimum at or past p = 1. The reported p is clamped
  // into (0, 1) and flagged; its standard error still describes the optimum.
  fit.p_at_boundary = x(2) < 1e-9 || x(2) > 1 - 1e-9;
  fit.p = std::clamp(x(2), 1e-9, 1 - 1e-9);
  fit.A = x(1) / (fit.p - 1);
  fit.B = x(0) - fit.A;
  return fit;
}

DecayFit fit_decay(const RBCurve& curve) {
  auto pts = fit_points(curve);
  return fit_decay(pts);
}

double reference_error(double p) { return (1 - p) / 2; }
double reference_error(const DecayFit& fit) { return reference_error(fit.p); }

InterleavedError interleaved_error(double p_gate, double p_ref) {
  if (p_ref == 0) throw std::invalid_argument("reference decay p_ref is zero");
  InterleavedError e;
  e.r = (1 - p_gate / p_ref) / 2;
  e.fidelity = gate_fidelity(e.r);
  e.negative_error = e.r < 0;
  return e;
}

double gate_fidelity(double r) { return 1 - r; }

double bootstrap_p_std_error(const RBCurve& curve, int resamples, Rng& rng) {
  if (resamples < 2) throw std::invalid_argument("bootstrap needs at least 2 resamples");
  std::vector<double> ps;
  for (int b = 0; b < resamples; ++b) {
    RBCurve c;
    for (const auto& pt : curve.points) {
      const auto& fs = pt.fidelities;
      if (fs.empty()) throw std::invalid_argument("bootstrap needs per-sequence fidelities");
      RBPoint q;
      q.m = pt.m;
      q.k = pt.k;
      double sum = 0;
      double sq = 0;
      for (size_t i = 0; i < fs.size(); ++i) {
        double f = fs[rng.uniform_index(fs.size())];
        sum += f;
        sq += f * f;
      }
      double k = static_cast<double>(fs.size());
      q.mean = sum / k;
      q.std_error = k > 1 ? std::sqrt(std::max(sq / k - q.mean * q.mean, 0.0) * k / (k - 1) / k) : 0;
      c.points.push_back(q);
    }
    try {
      ps.push_back(fit_decay(c).p);
    } catch (const ConvergenceError&) {
    }
  }
  if (ps.size() < 2) throw ConvergenceError("bootstrap fits failed");
  double mean = 0;
  for (double p : ps) mean += p;
  mean /= static_cast<double>(ps.size());
  double ss = 0;
  for (double p : ps) ss += (p - mean) * (p - mean);
  return std::sqrt(ss / static_cast<double>(ps.size() - 1));
}

nlohmann::json fit_report(const DecayFit& fit) {
  nlohmann::json flags = nlohmann::json::array();
  if (fit.unidentifiable) flags.push_back("unidentifiable");
  if (fit.p_at_boundary) flags.push_back("p_at_boundary");
  double r = reference_error(fit);
  return {{"A", fit.A},
          {"B", fit.B},
          {"p", fit.p},
          {"p_std_error", fit.p_std_error},
          {"r", r},
          {"F", gate_fidelity(r)},
          {"residual_norm", fit.residual_norm},
          {"flags", flags}};
}

}  // namespace platonic
