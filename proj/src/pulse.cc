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


#include "platonic/pulse.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "platonic/errors.h"

namespace platonic {

namespace {

using Matrix3cd = Eigen::Matrix3cd;

const Matrix3cd& drive_x() {
  static const Matrix3cd m = [] {
    Matrix3cd x = Matrix3cd::Zero();
    x(0, 1) = x(1, 0) = 1.0;
    x(1, 2) = x(2, 1) = std::sqrt(2.0);
    return x;
  }();
  return m;
}

const Matrix3cd& drive_y() {
  static const Matrix3cd m = [] {
    const cd i(0, 1);
    Matrix3cd y = Matrix3cd::Zero();
    y(1, 0) = i;
    y(0, 1) = -i;
    y(2, 1) = i * std::sqrt(2.0);
    y(1, 2) = -i * std::sqrt(2.0);
    return y;
  }();
  return m;
}

int step_count(double duration, double dt) {
  if (!(dt > 0) || !(duration > 0)) {
    throw std::invalid_argument("pulse duration and time step must be positive");
  }
  double n = std::round(duration / dt);
  if (n < 1 || std::abs(n * dt - duration) > 1e-9 * duration) {
    throw std::invalid_argument("time step " + std::to_string(dt) +
                                " ns does not divide the duration " + std::to_string(duration) +
                                " ns");
  }
  return static_cast<int>(n);
}

Matrix3cd expm_hermitian(const Matrix3cd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix3cd> es(h);
  Eigen::Vector3cd phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::exp(cd(0, -es.eigenvalues()(k) * dt));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// diag(1, e^{-i p}, e^{-2 i p}): conjugating the X-phase drive by it gives
// the drive at phase p.
Matrix3cd phase_frame(double phase) {
  Matrix3cd d = Matrix3cd::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = std::exp(cd(0, -phase));
  d(2, 2) = std::exp(cd(0, -2 * phase));
  return d;
}

Matrix3cd to_lab_convention(Matrix3cd u, double duration, const PulseSimConfig& cfg) {
  if (!cfg.rotating_frame && !cfg.two_level) {
    u.row(2) *= std::exp(cd(0, cfg.anharmonicity * duration));
  }
  return u;
}

double envelope(double amplitude, double t, double duration) {
  return amplitude * (1 - std::cos(2 * kPi * t / duration)) / 2;
}

double envelope_slope(double amplitude, double t, double duration) {
  return amplitude * kPi / duration * std::sin(2 * kPi * t / duration);
}

const double kInvGolden = 0.6180339887498949;

// Bisection for the zero of a function with f(lo) and f(hi) of opposite sign.
template <class F>
std::optional<double> bisect(F f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) return std::nullopt;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
double golden_section_min(F f, double lo, double hi, double tol) {
  double a = hi - kInvGolden * (hi - lo);
  double b = lo + kInvGolden * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  while (hi - lo > tol) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvGolden * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvGolden * (hi - lo);
      fb = f(b);
    }
  }
  return 0.5 * (lo + hi);
}

double excited_population(double amplitude, double drag, double duration,
                          const PulseSimConfig& cfg) {
  return std::norm(simulate_xy_pulse(amplitude, drag, 0.0, duration, cfg)(1, 0));
}

// Rabi maximum nearest the area-theorem pi amplitude, located where the
// central-difference slope of P_e changes sign.
double calibrate_pi_amplitude(double drag, double duration, const PulseSimConfig& cfg) {
  const double a0 = 2 * kPi / duration;
  const double h = 1e-4 * a0;
  auto slope = [&](double a) {
    return excited_population(a + h, drag, duration, cfg) -
           excited_population(a - h, drag, duration, cfg);
  };
  auto root = bisect(slope, 0.8 * a0, 1.25 * a0, 1e-13 * a0);
  if (!root) throw ConvergenceError("Rabi calibration failed to bracket the pi amplitude");
  return *root;
}

double calibrate_xy_amplitude(AngleMagnitude m, double a_pi, double drag, double duration,
                              const PulseSimConfig& cfg) {
  if (m == AngleMagnitude::kPi) return a_pi;
  double target = std::pow(std::sin(magnitude_radians(m) / 2), 2);
  auto f = [&](double a) { return excited_population(a, drag, duration, cfg) - target; };
  auto root = bisect(f, 0.0, a_pi, 1e-13 * a_pi);
  if (!root) {
    throw ConvergenceError("Rabi inversion failed for rotation angle " + magnitude_label(m));
  }
  return *root;
}

double pi_leakage(double a_pi, double drag, double duration, const PulseSimConfig& cfg) {
  return leakage(simulate_xy_pulse(a_pi, drag, 0.0, duration, cfg));
}

double minimize_leakage(double a_pi, double duration, const PulseSimConfig& cfg) {
  constexpr double kLo = -0.5;
  constexpr double kHi = 1.5;
  constexpr int kGrid = 20;
  double best = kLo;
  double best_val = pi_leakage(a_pi, kLo, duration, cfg);
  for (int i = 1; i <= kGrid; ++i) {
    double a = kLo + (kHi - kLo) * i / kGrid;
    double v = pi_leakage(a_pi, a, duration, cfg);
    if (v < best_val) {
      best_val = v;
      best = a;
    }
  }
  double cell = (kHi - kLo) / kGrid;
  return golden_section_min([&](double a) { return pi_leakage(a_pi, a, duration, cfg); },
                            best - cell, best + cell, 1e-9);
}

}  // namespace

int PulseParams::parameter_count() const {
  return static_cast<int>(xy_amplitudes.size() + z_amplitudes.size()) + 1;
}

std::vector<double> PulseParams::to_vector() const {
  std::vector<double> v;
  v.reserve(parameter_count());
  for (const auto& [m, a] : xy_amplitudes) v.push_back(a);
  for (const auto& [z, a] : z_amplitudes) v.push_back(a);
  v.push_back(drag);
  return v;
}

PulseParams PulseParams::with_vector(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != parameter_count()) {
    throw std::invalid_argument("pulse parameter vector has " + std::to_string(values.size()) +
                                " entries, expected " + std::to_string(parameter_count()));
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("pulse parameter vector is not finite");
  }
  PulseParams p = *this;
  size_t i = 0;
  for (auto& [m, a] : p.xy_amplitudes) a = values[i++];
  for (auto& [z, a] : p.z_amplitudes) a = values[i++];
  p.drag = values[i];
  return p;
}

nlohmann::json PulseParams::to_json() const {
  nlohmann::json xy = nlohmann::json::object();
  for (const auto& [m, a] : xy_amplitudes) xy[magnitude_label(m)] = a;
  nlohmann::json z = nlohmann::json::object();
  for (const auto& [angle, a] : z_amplitudes) z[angle.label()] = a;
  return {{"xy_amplitudes", xy},
          {"z_amplitudes", z},
          {"drag", drag},
          {"xy_duration_ns", xy_duration},
          {"z_duration_ns", z_duration},
          {"idle_duration_ns", idle_duration},
          {"parameter_count", parameter_count()}};
}

PulseParams PulseParams::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("pulse parameters must be a JSON object");
  static const std::set<std::string> known = {"xy_amplitudes",  "z_amplitudes",
                                              "drag",           "xy_duration_ns",
                                              "z_duration_ns",  "idle_duration_ns",
                                              "parameter_count"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown pulse parameter field '" + key + "'");
  }
  auto angle_of = [](const std::string& label) {
    return PhysicalGate::parse("X" + label).angle;
  };
  PulseParams p;
  for (const auto& [label, a] : j.at("xy_amplitudes").items()) {
    AngleId id = angle_of(label);
    if (id.sign < 0) throw std::invalid_argument("XY amplitude keys are unsigned, got '" + label + "'");
    p.xy_amplitudes[id.magnitude] = a.get<double>();
  }
  if (j.contains("z_amplitudes")) {
    for (const auto& [label, a] : j.at("z_amplitudes").items()) {
      p.z_amplitudes[angle_of(label)] = a.get<double>();
    }
  }
  p.drag = j.value("drag", 0.0);
  p.xy_duration = j.value("xy_duration_ns", kXYDurationNs);
  p.z_duration = j.value("z_duration_ns", kZDurationNs);
  p.idle_duration = j.value("idle_duration_ns", kIdleDurationNs);
  return p;
}

PulseRequirements required_pulses(const Group& g, ZCompilation z) {
  PulseRequirements req;
  for (const auto& e : g.elements()) {
    for (const auto& gate : e.word) {
      switch (gate.axis) {
        case GateAxis::kIdle:
          break;
        case GateAxis::kX:
        case GateAxis::kY:
          req.xy.insert(gate.angle.magnitude);
          break;
        case GateAxis::kZ:
          if (z == ZCompilation::kDetuning) {
            req.z.insert(gate.angle);
          } else {
            req.xy.insert(AngleMagnitude::kHalfPi);
            req.xy.insert(gate.angle.magnitude);
          }
          break;
      }
    }
  }
  return req;
}

PulseParams area_params(const Group& g, const PulseSimConfig& cfg) {
  PulseParams p;
  PulseRequirements req = required_pulses(g, cfg.z_compilation);
  for (AngleMagnitude m : req.xy) p.xy_amplitudes[m] = 2 * magnitude_radians(m) / p.xy_duration;
  for (AngleId z : req.z) p.z_amplitudes[z] = 2 * z.radians() / p.z_duration;
  return p;
}

Unitary3 simulate_xy_pulse(double amplitude, double drag, double phase, double duration,
                           const PulseSimConfig& cfg) {
  if (!std::isfinite(amplitude) || !std::isfinite(drag) || !std::isfinite(phase)) {
    throw std::invalid_argument("pulse parameters must be finite");
  }
  const int n = step_count(duration, cfg.time_step);
  const double dt = duration / n;
  const double eta = cfg.anharmonicity;
  if (!cfg.two_level && eta == 0) throw std::invalid_argument("anharmonicity must be nonzero");

  Matrix3cd x = drive_x();
  Matrix3cd y = drive_y();
  Matrix3cd number = Matrix3cd::Zero();
  number(1, 1) = 1;
  number(2, 2) = 2;
  if (cfg.two_level) {
    x(1, 2) = x(2, 1) = 0;
    y(1, 2) = y(2, 1) = 0;
  }

  auto hamiltonian = [&](double t) {
    double omega = envelope(amplitude, t, duration);
    Matrix3cd h = omega / 2 * x;
    if (!cfg.two_level) {
      double q = -drag * envelope_slope(amplitude, t, duration) / eta;
      double delta = (1 - 2 * drag) * omega * omega / (2 * eta);
      h += q / 2 * y + delta * number;
      h(2, 2) += eta;
    }
    return h;
  };
  // Fourth-order Magnus step from the two Gauss-Legendre nodes.
  const double c = std::sqrt(3.0) / 6;
  Matrix3cd u = Matrix3cd::Identity();
  for (int k = 0; k < n; ++k) {
    Matrix3cd h1 = hamiltonian((k + 0.5 - c) * dt);
    Matrix3cd h2 = hamiltonian((k + 0.5 + c) * dt);
    Matrix3cd comm = h2 * h1 - h1 * h2;
    Matrix3cd h = (h1 + h2) / 2 - cd(0, std::sqrt(3.0) / 12 * dt) * comm;
    u = expm_hermitian(h, dt) * u;
  }
  if (phase != 0) {
    Matrix3cd d = phase_frame(phase);
    u = d.adjoint() * u * d;
  }
  return to_lab_convention(u, duration, cfg);
}

Unitary3 simulate_z_pulse(double amplitude, double duration, const PulseSimConfig& cfg) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("pulse amplitude must be finite");
  const int n = step_count(duration, cfg.time_step);
  const double dt = duration / n;
  // The Hamiltonian is diagonal, so the step product reduces to phase sums.
  double theta = 0;
  for (int k = 0; k < n; ++k) theta += envelope(amplitude, (k + 0.5) * dt, duration) * dt;
  Matrix3cd u = Matrix3cd::Zero();
  u(0, 0) = 1;
  u(1, 1) = std::exp(cd(0, theta));
  u(2, 2) = cfg.two_level ? cd(1) : std::exp(cd(0, 2 * theta - cfg.anharmonicity * duration));
  return to_lab_convention(u, duration, cfg);
}

Unitary3 simulate_idle(double duration, const PulseSimConfig& cfg) {
  return simulate_z_pulse(0.0, duration, cfg);
}

Unitary3 simulate_xy_gate(const PulseParams& params, Pauli axis, AngleId angle,
                          const PulseSimConfig& cfg) {
  if (axis == Pauli::kZ) throw std::invalid_argument("simulate_xy_gate needs an X or Y axis");
  auto it = params.xy_amplitudes.find(angle.magnitude);
  if (it == params.xy_amplitudes.end()) {
    throw std::invalid_argument("no XY amplitude for rotation angle " +
                                magnitude_label(angle.magnitude));
  }
  double phase = axis == Pauli::kY ? kPi / 2 : 0.0;
  if (angle.sign < 0) phase += kPi;
  return simulate_xy_pulse(it->second, params.drag, phase, params.xy_duration, cfg);
}

Unitary3 simulate_z_gate(const PulseParams& params, AngleId angle, const PulseSimConfig& cfg) {
  auto it = params.z_amplitudes.find(angle);
  if (it == params.z_amplitudes.end()) {
    throw std::invalid_argument("no Z amplitude for rotation angle " + angle.label());
  }
  return simulate_z_pulse(it->second, params.z_duration, cfg);
}

Unitary3 simulate_gate(const PulseParams& params, const PhysicalGate& gate,
                       const PulseSimConfig& cfg) {
  switch (gate.axis) {
    case GateAxis::kIdle:
      return simulate_idle(params.idle_duration, cfg);
    case GateAxis::kX:
      return simulate_xy_gate(params, Pauli::kX, gate.angle, cfg);
    case GateAxis::kY:
      return simulate_xy_gate(params, Pauli::kY, gate.angle, cfg);
    case GateAxis::kZ:
      break;
  }
  if (cfg.z_compilation == ZCompilation::kDetuning) return simulate_z_gate(params, gate.angle, cfg);
  AngleId half{AngleMagnitude::kHalfPi, +1};
  AngleId minus_half{AngleMagnitude::kHalfPi, -1};
  return simulate_xy_gate(params, Pauli::kX, half, cfg) *
         simulate_xy_gate(params, Pauli::kY, gate.angle, cfg) *
         simulate_xy_gate(params, Pauli::kX, minus_half, cfg);
}

double leakage(const Unitary3& u) { return std::max(std::norm(u(2, 0)), std::norm(u(2, 1))); }

double qubit_block_fidelity(const Unitary3& u, const Unitary2& ideal) {
  Eigen::Matrix2cd b = u.topLeftCorner<2, 2>();
  return (std::norm((ideal.adjoint() * b).trace()) + (b.adjoint() * b).trace().real()) / 6;
}

std::vector<double> rabi_scan(std::span<const double> amplitudes, const PulseSimConfig& cfg,
                              double drag, double duration) {
  std::vector<double> out;
  out.reserve(amplitudes.size());
  for (double a : amplitudes) out.push_back(excited_population(a, drag, duration, cfg));
  return out;
}

std::vector<double> z_phase_scan(std::span<const double> amplitudes, const PulseSimConfig& cfg,
                                 double duration) {
  Eigen::Vector3cd ground(1, 0, 0);
  Eigen::Vector3cd prepared = embed_qubit(rotation_unitary(Axis::y(), kPi / 2)) * ground;
  std::vector<double> out;
  out.reserve(amplitudes.size());
  double previous = 0;
  for (double a : amplitudes) {
    Eigen::Vector3cd psi = simulate_z_pulse(a, duration, cfg) * prepared;
    // <sigma_x> + i <sigma_y> = 2 conj(psi_0) psi_1.
    cd coherence = 2.0 * std::conj(psi(0)) * psi(1);
    double phase = std::atan2(coherence.imag(), coherence.real());
    phase += 2 * kPi * std::round((previous - phase) / (2 * kPi));
    out.push_back(phase);
    previous = phase;
  }
  return out;
}

PulseParams calibrate(GroupKind kind, const PulseSimConfig& cfg) {
  const Group& g = group(kind);
  PulseParams p = area_params(g, cfg);
  const double t = p.xy_duration;

  double drag = 0;
  double a_pi = calibrate_pi_amplitude(drag, t, cfg);
  if (!cfg.two_level) {
    bool converged = false;
    for (int it = 0; it < 12 && !converged; ++it) {
      double next = minimize_leakage(a_pi, t, cfg);
      converged = std::abs(next - drag) < 1e-6;
      drag = next;
      a_pi = calibrate_pi_amplitude(drag, t, cfg);
    }
    if (!converged) throw ConvergenceError("DRAG calibration did not converge for the pi pulse");
  }
  p.drag = drag;
  for (auto& [m, a] : p.xy_amplitudes) a = calibrate_xy_amplitude(m, a_pi, drag, t, cfg);

  if (!p.z_amplitudes.empty()) {
    // Phase is linear in amplitude; fit the slope through the origin.
    std::vector<double> amps;
    const double a_full = 4 * kPi / p.z_duration;
    for (int i = 1; i <= 5; ++i) amps.push_back(a_full * i / 5);
    std::vector<double> phases = z_phase_scan(amps, cfg, p.z_duration);
    double num = 0;
    double den = 0;
    for (size_t i = 0; i < amps.size(); ++i) {
      num += amps[i] * phases[i];
      den += amps[i] * amps[i];
    }
    double slope = num / den;
    if (!(std::abs(slope) > 0)) throw ConvergenceError("Z phase calibration found no phase response");
    for (auto& [angle, a] : p.z_amplitudes) a = angle.radians() / slope;
  }
  return p;
}

PulseGateSet::PulseGateSet(const PulseParams& params, const Group& g, const PulseSimConfig& cfg) {
  // One integration per XY magnitude; other axes and signs are frame rotations.
  std::map<AngleMagnitude, Unitary3> x_pulses;
  auto x_pulse = [&](AngleMagnitude m) -> const Unitary3& {
    auto it = x_pulses.find(m);
    if (it != x_pulses.end()) return it->second;
    AngleId id{m, +1};
    return x_pulses.emplace(m, simulate_xy_gate(params, Pauli::kX, id, cfg)).first->second;
  };
  auto xy = [&](GateAxis axis, AngleId angle) -> Unitary3 {
    double phase = axis == GateAxis::kY ? kPi / 2 : 0.0;
    if (angle.sign < 0) phase += kPi;
    Matrix3cd d = phase_frame(phase);
    return d.adjoint() * x_pulse(angle.magnitude) * d;
  };
  for (const auto& e : g.elements()) {
    for (const auto& gate : e.word) {
      if (gates_.count(gate)) continue;
      Unitary3 u;
      if (gate.axis == GateAxis::kX || gate.axis == GateAxis::kY) {
        u = xy(gate.axis, gate.angle);
      } else if (gate.axis == GateAxis::kZ && cfg.z_compilation == ZCompilation::kCompositeXY) {
        u = xy(GateAxis::kX, {AngleMagnitude::kHalfPi, +1}) * xy(GateAxis::kY, gate.angle) *
            xy(GateAxis::kX, {AngleMagnitude::kHalfPi, -1});
      } else {
        u = simulate_gate(params, gate, cfg);
      }
      gates_.emplace(gate, u);
      double d = params.xy_duration;
      if (gate.axis == GateAxis::kIdle) d = params.idle_duration;
      if (gate.axis == GateAxis::kZ) {
        d = cfg.z_compilation == ZCompilation::kDetuning ? params.z_duration
                                                          : 3 * params.xy_duration;
      }
      durations_.emplace(gate, d);
    }
  }
  elements_.reserve(g.order());
  for (const auto& e : g.elements()) {
    Unitary3 u = Unitary3::Identity();
    for (const auto& gate : e.word) u = gates_.at(gate) * u;
    elements_.push_back(u);
  }
}

const Unitary3& PulseGateSet::gate(const PhysicalGate& gate) const {
  auto it = gates_.find(gate);
  if (it == gates_.end()) throw std::invalid_argument("gate " + gate.label() + " was not synthesized");
  return it->second;
}

double PulseGateSet::duration(const PhysicalGate& gate) const {
  auto it = durations_.find(gate);
  if (it == durations_.end()) throw std::invalid_argument("gate " + gate.label() + " was not synthesized");
  return it->second;
}

}  // namespace platonic
