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


#include "platonic/experiment.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "platonic/errors.h"
#include "platonic/orbit.h"
#include "platonic/pulse.h"

namespace platonic {

namespace {

using nlohmann::json;

// ---- Config access with field paths ----

class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(path_ + ": " + msg); }

  void expect_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    expect_object();
    for (const auto& [key, value] : j_->items()) {
      bool known = false;
      for (auto k : keys) known = known || k == key;
      if (!known) child_path_fail(key, "unknown field");
    }
  }

  bool has(std::string_view key) const {
    auto it = j_->find(key);
    return it != j_->end() && !it->is_null();
  }

  Node child(std::string_view key) const {
    if (!has(key)) child_path_fail(key, "required field is missing");
    return Node(j_->at(std::string(key)), sub(key));
  }

  double number(std::string_view key) const {
    Node c = child(key);
    if (!c.raw().is_number()) c.fail("expected a number");
    double v = c.raw().get<double>();
    if (!std::isfinite(v)) c.fail("expected a finite number");
    return v;
  }
  double number_or(std::string_view key, double def) const { return has(key) ? number(key) : def; }

  std::int64_t integer(std::string_view key) const {
    Node c = child(key);
    if (!c.raw().is_number_integer()) c.fail("expected an integer");
    return c.raw().get<std::int64_t>();
  }
  std::int64_t integer_or(std::string_view key, std::int64_t def) const {
    return has(key) ? integer(key) : def;
  }

  std::uint64_t unsigned_integer(std::string_view key) const {
    Node c = child(key);
    const json& v = c.raw();
    bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!ok) c.fail("expected a non-negative integer");
    return c.raw().get<std::uint64_t>();
  }

  std::string string(std::string_view key) const {
    Node c = child(key);
    if (!c.raw().is_string()) c.fail("expected a string");
    return c.raw().get<std::string>();
  }
  std::string string_or(std::string_view key, std::string def) const {
    return has(key) ? string(key) : def;
  }

  bool boolean_or(std::string_view key, bool def) const {
    if (!has(key)) return def;
    Node c = child(key);
    if (!c.raw().is_boolean()) c.fail("expected true or false");
    return c.raw().get<bool>();
  }

  std::vector<Node> elements(std::string_view key) const {
    Node c = child(key);
    if (!c.raw().is_array()) c.fail("expected an array");
    std::vector<Node> out;
    for (size_t i = 0; i < c.raw().size(); ++i) {
      out.emplace_back(c.raw()[i], c.path() + "[" + std::to_string(i) + "]");
    }
    return out;
  }

 private:
  std::string sub(std::string_view key) const { return path_ + "." + std::string(key); }
  [[noreturn]] void child_path_fail(std::string_view key, const std::string& msg) const {
    throw ConfigError(sub(key) + ": " + msg);
  }

  const json* j_;
  std::string path_;
};

template <class F>
auto parse_field(const Node& node, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    node.fail(e.what());
  }
}

GroupKind parse_kind(const Node& n) {
  return parse_field(n, [&] { return parse_group_kind(n.raw().get<std::string>()); });
}

Node group_node(const Node& root, const RunContext& ctx, json& storage) {
  if (ctx.group) {
    storage = *ctx.group;
    return Node(storage, "--group");
  }
  Node g = root.child("group");
  if (!g.raw().is_string()) g.fail("expected a string");
  return g;
}

std::vector<GroupKind> parse_group_list(const Node& root, const RunContext& ctx) {
  json storage;
  if (!ctx.group && root.has("groups")) {
    if (root.has("group")) root.fail("give either 'group' or 'groups', not both");
    std::vector<GroupKind> kinds;
    for (const auto& n : root.elements("groups")) {
      if (!n.raw().is_string()) n.fail("expected a group name");
      kinds.push_back(parse_kind(n));
    }
    if (kinds.empty()) root.child("groups").fail("must not be empty");
    return kinds;
  }
  Node g = group_node(root, ctx, storage);
  if (g.raw().get<std::string>() == "all") {
    return {GroupKind::kTetrahedral, GroupKind::kOctahedral, GroupKind::kIcosahedral};
  }
  return {parse_kind(g)};
}

double probability(const Node& n, std::string_view key) {
  double v = n.number(key);
  if (v < 0 || v > 1) n.child(key).fail("must lie in [0, 1]");
  return v;
}

Channel parse_channel(const Node& n) {
  n.expect_object();
  std::string model = n.string("model");
  Channel ch;
  if (model == "identity") {
    n.allow({"model", "then"});
  } else if (model == "depolarizing") {
    n.allow({"model", "error", "strength", "then"});
    if (n.has("error") == n.has("strength")) n.fail("depolarizing needs exactly one of 'error' or 'strength'");
    double s = n.has("error") ? n.number("error") : probability(n, "strength");
    if (n.has("error")) {
      if (s < 0 || s > 0.5) n.child("error").fail("must lie in [0, 0.5]");
      s = depolarizing_strength_for_error(s);
    }
    ch = depolarizing(s);
  } else if (model == "amplitude_damping") {
    n.allow({"model", "gamma", "then"});
    ch = amplitude_damping(probability(n, "gamma"));
  } else if (model == "phase_damping") {
    n.allow({"model", "lambda", "then"});
    ch = phase_damping(probability(n, "lambda"));
  } else if (model == "coherent") {
    n.allow({"model", "axis", "epsilon", "then"});
    std::string axis = n.string("axis");
    Axis a = Axis::x();
    if (axis == "Y") {
      a = Axis::y();
    } else if (axis == "Z") {
      a = Axis::z();
    } else if (axis != "X") {
      n.child("axis").fail("expected X, Y or Z");
    }
    ch = coherent_error(a, n.number("epsilon"));
  } else {
    n.child("model").fail("unknown channel model '" + model + "'");
  }
  if (n.has("then")) ch = compose(ch, parse_channel(n.child("then")));
  return ch;
}

NoiseModel parse_gate_noise(const Node& n) {
  n.allow({"gate", "idle", "per_gate", "t1_ns", "tphi_ns"});
  NoiseModel m;
  if (n.has("gate")) m.gate_channel = parse_channel(n.child("gate"));
  if (n.has("idle")) m.idle_channel = parse_channel(n.child("idle"));
  if (n.has("per_gate")) {
    Node pg = n.child("per_gate");
    pg.expect_object();
    for (const auto& [label, value] : pg.raw().items()) {
      Node c(value, pg.path() + "." + label);
      PhysicalGate gate = parse_field(c, [&] { return PhysicalGate::parse(label); });
      m.per_gate[gate.label()] = parse_channel(c);
    }
  }
  m.decoherence.t1_ns = n.number_or("t1_ns", 0);
  m.decoherence.tphi_ns = n.number_or("tphi_ns", 0);
  if (m.decoherence.t1_ns < 0) n.child("t1_ns").fail("must be non-negative");
  if (m.decoherence.tphi_ns < 0) n.child("tphi_ns").fail("must be non-negative");
  return m;
}

PulseSimConfig parse_pulse_cfg(const Node& n, std::initializer_list<std::string_view> extra = {}) {
  std::vector<std::string_view> keys = {"anharmonicity_ghz", "time_step_ns", "rotating_frame",
                                        "two_level", "z_compilation"};
  keys.insert(keys.end(), extra.begin(), extra.end());
  n.expect_object();
  for (const auto& [key, value] : n.raw().items()) {
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (!known) Node(value, n.path() + "." + key).fail("unknown field");
  }
  PulseSimConfig cfg;
  cfg.anharmonicity = 2 * kPi * n.number_or("anharmonicity_ghz", -0.2);
  cfg.time_step = n.number_or("time_step_ns", 0.01);
  if (!(cfg.time_step > 0)) n.child("time_step_ns").fail("must be positive");
  cfg.rotating_frame = n.boolean_or("rotating_frame", true);
  cfg.two_level = n.boolean_or("two_level", false);
  std::string z = n.string_or("z_compilation", "detuning");
  if (z == "composite") {
    cfg.z_compilation = ZCompilation::kCompositeXY;
  } else if (z != "detuning") {
    n.child("z_compilation").fail("expected 'detuning' or 'composite'");
  }
  if (!cfg.two_level && cfg.anharmonicity == 0) n.child("anharmonicity_ghz").fail("must be nonzero");
  return cfg;
}

std::vector<int> parse_m_values(const Node& n, std::string_view key) {
  std::vector<int> out;
  for (const auto& e : n.elements(key)) {
    if (!e.raw().is_number_integer()) e.fail("expected an integer");
    auto v = e.raw().get<std::int64_t>();
    if (v < 1 || v > 1000000) e.fail("must lie in [1, 1000000]");
    if (!out.empty() && v <= out.back()) e.fail("m values must be strictly increasing");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) n.child(key).fail("must not be empty");
  return out;
}

std::uint64_t effective_seed(const Node& root, const RunContext& ctx) {
  if (ctx.seed) return *ctx.seed;
  return root.has("seed") ? root.unsigned_integer("seed") : 0;
}

// Hash of the config as run: seed override applied, thread count excluded.
std::string config_hash(const json& config, const RunContext& ctx, std::string_view command) {
  json eff = config.is_object() ? config : json::object();
  if (ctx.seed) eff["seed"] = *ctx.seed;
  if (ctx.group) eff["group"] = *ctx.group;
  if (ctx.input) eff["input"] = *ctx.input;
  eff["command"] = command;
  return fnv1a_hex(eff.dump());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---- build-group / verify-designs ----

void cmd_build_group(const Node& root, const RunContext& ctx, Artifacts& out) {
  root.allow({"group"});
  auto kinds = parse_group_list(root, ctx);
  std::ostringstream report;
  bool ok = true;
  for (GroupKind kind : kinds) {
    Group g = build_group(kind);
    std::string name(group_kind_name(kind));
    json summary = group_summary(g);
    out.files[name + "_group.json"] = dump(group_to_json(g));
    out.files[name + "_summary.json"] = dump(summary);
    report << name << ": order " << g.order() << ", avg word length "
           << summary["avg_word_length"].get<std::string>() << ", classes";
    for (const auto& [cls, count] : summary["class_sizes"].items()) {
      report << " " << cls << "=" << count.get<int>();
    }
    report << ", tetrahedral subset " << summary["tetrahedral_subset_size"].get<int>()
           << ", solid orbit " << (summary["solid_orbit"]["ok"].get<bool>() ? "ok" : "FAILED")
           << "\n";
    ok = ok && summary["solid_orbit"]["ok"].get<bool>();
  }
  out.report = report.str();
  if (!ok) throw IntegrityError("solid orbit certification failed");
}

void cmd_verify_designs(const Node& root, const RunContext& ctx, Artifacts& out) {
  root.allow({"group"});
  auto kinds = parse_group_list(root, ctx);
  std::ostringstream report;
  std::vector<std::string> failed;
  for (GroupKind kind : kinds) {
    const Group& g = group(kind);
    std::string name(group_kind_name(kind));
    json r = design_report(g);
    out.files[name + "_designs.json"] = dump(r);
    report << name << ":";
    for (const auto& row : r["rows"]) {
      report << " t=" << row["t"].get<int>() << (row["pass"].get<bool>() ? " pass" : " fail");
    }
    report << " (design order " << r["design_order"].get<int>() << ", claimed "
           << r["claimed_design_order"].get<int>() << ")\n";
    if (!r["verified"].get<bool>()) failed.push_back(name);
  }
  out.report = report.str();
  if (!failed.empty()) throw IntegrityError("design order mismatch for " + failed.front());
}

// ---- run-rb ----

struct InterleavedSpec {
  std::string name;
  std::optional<Word> word;
  std::optional<int> index;
  std::optional<Channel> extra;
  std::string path;
};

struct GroupRun {
  GroupKind kind;
  NoiseModel noise;
  std::vector<std::pair<InterleavedSpec, int>> interleaved;  // spec, element index
  std::vector<Word> words;
  std::optional<PulseParams> pulse_params;
};

struct RunRBPlan {
  std::vector<GroupRun> groups;
  SimulationMode mode = SimulationMode::kGateLevel;
  int k = 50;
  std::optional<int> shots;
  std::uint64_t seed = 0;
  std::optional<std::vector<int>> m_values;
  std::optional<std::vector<int>> interleaved_m_values;
  PulseSimConfig pulse_cfg;
  int bootstrap = 0;
};

RunRBPlan parse_run_rb(const Node& root, const RunContext& ctx) {
  root.allow({"group", "groups", "mode", "k", "shots", "seed", "m_values",
              "interleaved_m_values", "noise", "interleaved", "pulse", "bootstrap"});
  RunRBPlan plan;
  auto kinds = parse_group_list(root, ctx);
  std::string mode = root.string_or("mode", "gate-level");
  if (mode == "pulse-level") {
    plan.mode = SimulationMode::kPulseLevel;
  } else if (mode != "gate-level") {
    root.child("mode").fail("expected 'gate-level' or 'pulse-level'");
  }
  plan.k = static_cast<int>(root.integer_or("k", 50));
  if (plan.k < 1 || plan.k > 100000) root.child("k").fail("must lie in [1, 100000]");
  if (root.has("shots")) {
    auto s = root.integer("shots");
    if (s < 1 || s > 100000000) root.child("shots").fail("must be a positive count");
    plan.shots = static_cast<int>(s);
  }
  plan.seed = effective_seed(root, ctx);
  if (root.has("m_values")) plan.m_values = parse_m_values(root, "m_values");
  if (root.has("interleaved_m_values")) {
    plan.interleaved_m_values = parse_m_values(root, "interleaved_m_values");
  }
  plan.bootstrap = static_cast<int>(root.integer_or("bootstrap", 0));
  if (plan.bootstrap < 0 || plan.bootstrap == 1) root.child("bootstrap").fail("must be 0 or >= 2");

  NoiseModel noise;
  if (root.has("noise")) {
    Node n = root.child("noise");
    if (plan.mode == SimulationMode::kPulseLevel) {
      n.allow({"t1_ns", "tphi_ns"});
    }
    noise = parse_gate_noise(n);
  }
  noise.mode = plan.mode;

  std::map<GroupKind, PulseParams> given_params;
  if (root.has("pulse")) {
    Node p = root.child("pulse");
    if (plan.mode != SimulationMode::kPulseLevel) p.fail("only used in pulse-level mode");
    plan.pulse_cfg = parse_pulse_cfg(p, {"params"});
    if (p.has("params")) {
      Node params = p.child("params");
      params.expect_object();
      for (const auto& [name, value] : params.raw().items()) {
        Node c(value, params.path() + "." + name);
        GroupKind kind = parse_field(c, [&] { return parse_group_kind(name); });
        given_params[kind] = parse_field(c, [&] { return PulseParams::from_json(value); });
      }
    }
  }

  std::vector<InterleavedSpec> specs;
  if (root.has("interleaved")) {
    for (const auto& n : root.elements("interleaved")) {
      n.allow({"word", "index", "extra", "name"});
      InterleavedSpec s;
      s.path = n.path();
      if (n.has("word") == n.has("index")) n.fail("give exactly one of 'word' or 'index'");
      if (n.has("word")) {
        std::string text = n.string("word");
        s.word = parse_field(n.child("word"), [&] { return parse_word(text); });
        s.name = n.string_or("name", word_label(*s.word));
      } else {
        s.index = static_cast<int>(n.integer("index"));
        s.name = n.string_or("name", "element " + std::to_string(*s.index));
      }
      if (n.has("extra")) {
        if (plan.mode == SimulationMode::kPulseLevel) n.child("extra").fail("gate-level only");
        s.extra = parse_channel(n.child("extra"));
      }
      specs.push_back(std::move(s));
    }
  }

  for (GroupKind kind : kinds) {
    const Group& g = group(kind);
    GroupRun run;
    run.kind = kind;
    run.noise = noise;
    for (const auto& s : specs) {
      int index;
      Word word;
      if (s.word) {
        auto found = g.find_word(*s.word);
        if (!found) {
          throw ConfigError(s.path + ".word: '" + word_label(*s.word) + "' is not an element of the " +
                            std::string(group_kind_name(kind)) + " group");
        }
        index = *found;
        word = *s.word;
      } else {
        if (*s.index < 0 || *s.index >= g.order()) {
          throw ConfigError(s.path + ".index: outside the " + std::string(group_kind_name(kind)) +
                            " group");
        }
        index = *s.index;
        word = g.element(index).word;
      }
      if (s.extra) {
        auto label = word_label(word);
        auto it = run.noise.element_extra.find(label);
        run.noise.element_extra[label] =
            it == run.noise.element_extra.end() ? *s.extra : compose(it->second, *s.extra);
      }
      run.interleaved.emplace_back(s, index);
      run.words.push_back(word);
    }
    try {
      run.noise.validate_for(g, run.words);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(root.path() + ".noise: " + e.what());
    }
    if (auto it = given_params.find(kind); it != given_params.end()) {
      PulseRequirements req = required_pulses(g, plan.pulse_cfg.z_compilation);
      for (auto m : req.xy) {
        if (!it->second.xy_amplitudes.count(m)) {
          throw ConfigError(root.path() + ".pulse.params." + std::string(group_kind_name(kind)) +
                            ": missing XY amplitude for " + magnitude_label(m));
        }
      }
      for (auto z : req.z) {
        if (!it->second.z_amplitudes.count(z)) {
          throw ConfigError(root.path() + ".pulse.params." + std::string(group_kind_name(kind)) +
                            ": missing Z amplitude for " + z.label());
        }
      }
      run.pulse_params = it->second;
    }
    plan.groups.push_back(std::move(run));
  }
  return plan;
}

// Decay of one noisy word against its ideal element, (Tr(R^T N) - 1) / 3.
double word_decay(const NoiseModel& noise, const Word& word, const GroupElement& ideal) {
  return ((transfer_matrix_of(ideal.unitary).transpose() * noise.word_transfer(word)).trace() - 1) / 3;
}

json fit_json(const DecayFit& fit, const RBCurve& curve, int bootstrap, Rng& rng) {
  json j = fit_report(fit);
  if (bootstrap > 0) j["p_bootstrap_std_error"] = bootstrap_p_std_error(curve, bootstrap, rng);
  json ms = json::array();
  for (const auto& pt : curve.points) ms.push_back(pt.m);
  j["m_values"] = ms;
  return j;
}

void cmd_run_rb(const Node& root, const RunContext& ctx, const std::string& hash, Artifacts& out) {
  RunRBPlan plan = parse_run_rb(root, ctx);
  std::ostringstream report;
  json groups = json::array();
  std::uint64_t gi = 0;
  for (auto& run : plan.groups) {
    const Group& g = group(run.kind);
    std::string name(group_kind_name(run.kind));
    const double avg_len = avg_word_length(g).value();

    RBConfig base;
    base.group_kind = run.kind;
    base.k = plan.k;
    base.shots = plan.shots;
    base.seed = plan.seed;
    base.threads = ctx.threads;
    base.noise = run.noise;
    base.pulse_cfg = plan.pulse_cfg;

    double p_ref_expected;
    if (plan.mode == SimulationMode::kPulseLevel) {
      if (!run.pulse_params) run.pulse_params = calibrate(run.kind, plan.pulse_cfg);
      base.pulse_params = run.pulse_params;
      p_ref_expected = estimated_decay(*run.pulse_params, run.kind, plan.pulse_cfg);
    } else {
      p_ref_expected = expected_decay(g, run.noise);
    }
    base.m_values = plan.m_values ? *plan.m_values : default_m_grid(p_ref_expected);

    RBResult ref = run_rb(base);
    DecayFit ref_fit = fit_decay(ref.reference);
    Rng boot(plan.seed, kTagBootstrap, gi, 0);
    json gj;
    gj["group"] = name;
    gj["avg_word_length"] = avg_word_length(g).str();
    json rj = fit_json(ref_fit, ref.reference, plan.bootstrap, boot);
    rj["p_expected"] = p_ref_expected;
    rj["r_per_physical_gate"] = reference_error(ref_fit) / avg_len;
    gj["reference"] = rj;
    out.files[name + "_reference.csv"] = curve_csv(ref.reference, hash);
    report << name << " reference: p = " << fmt12(ref_fit.p) << ", r_ref = " << fmt12(reference_error(ref_fit))
           << ", per physical gate " << fmt12(reference_error(ref_fit) / avg_len) << "\n";

    json ij = json::array();
    for (size_t i = 0; i < run.interleaved.size(); ++i) {
      const auto& [spec, index] = run.interleaved[i];
      const Word& word = run.words[i];
      RBConfig c = base;
      c.run_reference = false;
      c.interleaved = index;
      c.interleaved_word = word;
      std::optional<double> p_gate_expected;
      if (plan.mode == SimulationMode::kGateLevel) {
        p_gate_expected = word_decay(run.noise, word, g.element(index));
      }
      if (plan.interleaved_m_values) {
        c.interleaved_m_values = *plan.interleaved_m_values;
      } else if (!plan.m_values) {
        c.interleaved_m_values = default_m_grid(p_ref_expected * p_gate_expected.value_or(p_ref_expected));
      }
      RBResult res = run_rb(c);
      DecayFit fit = fit_decay(*res.interleaved);
      InterleavedError e = interleaved_error(fit.p, ref_fit.p);
      Rng iboot(plan.seed, kTagBootstrap, gi, i + 1);
      json entry;
      entry["name"] = spec.name;
      entry["word"] = word_label(word);
      entry["element"] = index;
      entry["physical_gates"] = word.size();
      entry["fit"] = fit_json(fit, *res.interleaved, plan.bootstrap, iboot);
      entry["r_gate"] = e.r;
      entry["F_gate"] = e.fidelity;
      entry["negative_error"] = e.negative_error;
      entry["r_per_physical_gate"] = e.r / static_cast<double>(word.size());
      if (p_gate_expected) entry["r_gate_expected"] = (1 - *p_gate_expected) / 2;
      ij.push_back(entry);
      out.files[name + "_interleaved_" + std::to_string(i) + ".csv"] = curve_csv(*res.interleaved, hash);
      report << name << " interleaved " << word_label(word) << ": r_gate = " << fmt12(e.r)
             << ", per physical gate " << fmt12(e.r / static_cast<double>(word.size()))
             << (e.negative_error ? " (negative)" : "") << "\n";
    }
    gj["interleaved"] = ij;
    groups.push_back(gj);
    ++gi;
  }
  json summary;
  summary["config_hash"] = hash;
  summary["seed"] = plan.seed;
  summary["mode"] = plan.mode == SimulationMode::kPulseLevel ? "pulse-level" : "gate-level";
  summary["groups"] = groups;
  out.files["rb_summary.json"] = dump(summary);
  out.report = report.str();
}

// ---- calibrate / orbit ----

json gate_diagnostics(const PulseParams& params, const Group& g, const PulseSimConfig& cfg,
                      double& min_fidelity, double& max_leakage) {
  PulseGateSet gates(params, g, cfg);
  json rows = json::array();
  min_fidelity = 1;
  max_leakage = 0;
  for (const auto& [gate, u] : gates.gates()) {
    double f = qubit_block_fidelity(u, gate.unitary());
    double l = leakage(u);
    min_fidelity = std::min(min_fidelity, f);
    max_leakage = std::max(max_leakage, l);
    rows.push_back({{"gate", gate.label()}, {"qubit_block_fidelity", f}, {"leakage", l}});
  }
  return rows;
}

void cmd_calibrate(const Node& root, const RunContext& ctx, const std::string& hash, Artifacts& out) {
  root.allow({"group", "pulse"});
  auto kinds = parse_group_list(root, ctx);
  PulseSimConfig cfg;
  if (root.has("pulse")) cfg = parse_pulse_cfg(root.child("pulse"));
  std::ostringstream report;
  for (GroupKind kind : kinds) {
    std::string name(group_kind_name(kind));
    PulseParams p = calibrate(kind, cfg);
    double fmin = 1;
    double lmax = 0;
    json j;
    j["config_hash"] = hash;
    j["group"] = name;
    j["params"] = p.to_json();
    j["gates"] = gate_diagnostics(p, group(kind), cfg, fmin, lmax);
    j["min_qubit_block_fidelity"] = fmin;
    j["max_leakage"] = lmax;
    out.files[name + "_pulse_params.json"] = dump(j);
    report << name << ": " << p.parameter_count() << " parameters, DRAG " << fmt12(p.drag)
           << ", min fidelity " << fmt12(fmin) << ", max leakage " << fmt12(lmax) << "\n";
  }
  out.report = report.str();
}

void cmd_orbit(const Node& root, const RunContext& ctx, const std::string& hash, Artifacts& out) {
  root.allow({"group", "seed", "pulse", "start", "budget", "n_sequences", "heldout_sequences",
              "fixed_m", "seed_policy", "noise", "amplitude_scale", "drag_scale"});
  json storage;
  GroupKind kind = parse_kind(group_node(root, ctx, storage));
  PulseSimConfig cfg;
  if (root.has("pulse")) cfg = parse_pulse_cfg(root.child("pulse"));

  ObjectiveSpec spec;
  spec.group_kind = kind;
  spec.pulse_cfg = cfg;
  spec.seed = effective_seed(root, ctx);
  spec.threads = ctx.threads;
  spec.n_sequences = static_cast<int>(root.integer_or("n_sequences", 20));
  if (spec.n_sequences < 1) root.child("n_sequences").fail("must be >= 1");
  std::string policy = root.string_or("seed_policy", "frozen");
  if (policy == "resampled") {
    spec.seed_policy = SeedPolicy::kResampled;
  } else if (policy != "frozen") {
    root.child("seed_policy").fail("expected 'frozen' or 'resampled'");
  }
  if (root.has("noise")) {
    Node n = root.child("noise");
    n.allow({"t1_ns", "tphi_ns"});
    spec.decoherence.t1_ns = n.number_or("t1_ns", 0);
    spec.decoherence.tphi_ns = n.number_or("tphi_ns", 0);
  }
  OrbitOptions opt;
  opt.budget = static_cast<int>(root.integer_or("budget", 2000));
  if (opt.budget < 1) root.child("budget").fail("must be >= 1");
  opt.heldout_sequences = static_cast<int>(root.integer_or("heldout_sequences", 50));
  if (opt.heldout_sequences < 1) root.child("heldout_sequences").fail("must be >= 1");
  opt.amplitude_scale = root.number_or("amplitude_scale", 0.01);
  opt.drag_scale = root.number_or("drag_scale", 0.05);
  if (!(opt.amplitude_scale > 0)) root.child("amplitude_scale").fail("must be positive");
  if (!(opt.drag_scale > 0)) root.child("drag_scale").fail("must be positive");
  std::optional<int> fixed_m;
  if (root.has("fixed_m")) {
    fixed_m = static_cast<int>(root.integer("fixed_m"));
    if (*fixed_m < 1) root.child("fixed_m").fail("must be >= 1");
  }

  std::optional<PulseParams> given;
  double perturb = 0;
  if (root.has("start")) {
    Node s = root.child("start");
    s.allow({"params", "perturb_amplitudes"});
    if (s.has("params")) {
      given = parse_field(s.child("params"), [&] { return PulseParams::from_json(s.raw()["params"]); });
    }
    perturb = s.number_or("perturb_amplitudes", 0);
  }

  const Group& g = group(kind);
  PulseParams start = given ? *given : calibrate(kind, cfg);
  for (auto& [m, a] : start.xy_amplitudes) a *= 1 + perturb;
  spec.fixed_m = fixed_m ? *fixed_m : steepest_m(estimated_decay(start, kind, cfg));

  OrbitResult res = orbit_tune(start, spec, opt);
  std::string name(group_kind_name(kind));
  double fmin = 1;
  double lmax = 0;
  json j;
  j["config_hash"] = hash;
  j["group"] = name;
  j["fixed_m"] = spec.fixed_m;
  j["evaluations"] = res.search.evaluations;
  j["start"] = start.to_json();
  j["tuned"] = res.params.to_json();
  j["start_objective"] = res.start_objective;
  j["final_objective"] = res.final_objective;
  j["heldout_start"] = res.heldout_start;
  j["heldout_final"] = res.heldout_final;
  j["confirmed"] = res.confirmed;
  j["tuned_gates"] = gate_diagnostics(res.params, g, cfg, fmin, lmax);
  out.files[name + "_orbit.json"] = dump(j);

  std::string trace = "# config_hash=" + hash + "\nevaluation,objective\n";
  for (size_t i = 0; i < res.search.trace.size(); ++i) {
    trace += std::to_string(i + 1) + "," + fmt12(res.search.trace[i]) + "\n";
  }
  out.files[name + "_orbit_trace.csv"] = trace;
  std::ostringstream report;
  report << name << ": fixed m " << spec.fixed_m << ", " << res.search.evaluations
         << " evaluations, objective " << fmt12(res.start_objective) << " -> "
         << fmt12(res.final_objective) << ", held-out " << fmt12(res.heldout_start) << " -> "
         << fmt12(res.heldout_final) << (res.confirmed ? "" : " (not confirmed, start kept)") << "\n";
  out.report = report.str();
}

// ---- fit ----

std::string read_file(const std::string& path, const Node& where) {
  std::ifstream in(path, std::ios::binary);
  if (!in) where.fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cmd_fit(const Node& root, const RunContext& ctx, const std::string& hash, Artifacts& out) {
  root.allow({"input", "reference"});
  json storage;
  std::string input;
  Node input_node = root;
  if (ctx.input) {
    storage = *ctx.input;
    input_node = Node(storage, "--input");
    input = *ctx.input;
  } else {
    input = root.string("input");
    input_node = root.child("input");
  }
  RBCurve curve = parse_field(input_node, [&] { return parse_curve_csv(read_file(input, input_node)); });
  std::optional<RBCurve> reference;
  if (root.has("reference")) {
    std::string ref = root.string("reference");
    Node rn = root.child("reference");
    reference = parse_field(rn, [&] { return parse_curve_csv(read_file(ref, rn)); });
  }
  DecayFit fit = fit_decay(curve);
  json j = fit_report(fit);
  j["config_hash"] = hash;
  std::ostringstream report;
  report << "p = " << fmt12(fit.p) << " +- " << fmt12(fit.p_std_error) << ", r = " << fmt12(reference_error(fit));
  if (reference) {
    DecayFit rf = fit_decay(*reference);
    InterleavedError e = interleaved_error(fit.p, rf.p);
    j["reference"] = fit_report(rf);
    j["r_gate"] = e.r;
    j["F_gate"] = e.fidelity;
    j["negative_error"] = e.negative_error;
    report << ", r_gate = " << fmt12(e.r);
  }
  report << "\n";
  std::string stem = std::filesystem::path(input).stem().string();
  out.files[stem + "_fit.json"] = dump(j);
  out.report = report.str();
}

void dispatch(std::string_view command, const json& config, const RunContext& ctx, Artifacts& out) {
  if (ctx.threads < 1) throw ConfigError("--threads: must be >= 1");
  json empty = json::object();
  const json& cfg = config.is_null() ? empty : config;
  Node root(cfg, "config");
  root.expect_object();
  std::string hash = config_hash(cfg, ctx, command);
  if (command == "build-group") return cmd_build_group(root, ctx, out);
  if (command == "verify-designs") return cmd_verify_designs(root, ctx, out);
  if (command == "run-rb") return cmd_run_rb(root, ctx, hash, out);
  if (command == "calibrate") return cmd_calibrate(root, ctx, hash, out);
  if (command == "orbit") return cmd_orbit(root, ctx, hash, out);
  if (command == "fit") return cmd_fit(root, ctx, hash, out);
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

}  // namespace

Artifacts run_command(std::string_view command, const json& config, const RunContext& ctx) {
  Artifacts out;
  dispatch(command, config, ctx, out);
  return out;
}

int run_command_status(std::string_view command, const json& config, const RunContext& ctx,
                       Artifacts& out, std::string& error) {
  try {
    dispatch(command, config, ctx, out);
    return kExitOk;
  } catch (const IntegrityError& e) {
    error = std::string("integrity failure: ") + e.what();
    return kExitIntegrity;
  } catch (const ConvergenceError& e) {
    error = std::string("did not converge: ") + e.what();
    return kExitConvergence;
  } catch (const json::exception& e) {
    error = std::string("config error: ") + e.what();
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    error = std::string("config error: ") + e.what();
    return kExitConfig;
  }
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string curve_csv(const RBCurve& curve, std::string_view hash) {
  std::string s = "# config_hash=" + std::string(hash) + "\nm,mean_fidelity,stderr,k\n";
  for (const auto& pt : curve.points) {
    s += std::to_string(pt.m) + "," + fmt12(pt.mean) + "," + fmt12(pt.std_error) + "," +
         std::to_string(pt.k) + "\n";
  }
  return s;
}

RBCurve parse_curve_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  RBCurve curve;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "m,mean_fidelity,stderr,k") {
        throw ConfigError("line " + std::to_string(lineno) + ": expected header m,mean_fidelity,stderr,k");
      }
      header = true;
      continue;
    }
    RBPoint pt;
    char extra = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%d%c", &pt.m, &pt.mean, &pt.std_error, &pt.k, &extra) != 4 ||
        pt.m < 1 || pt.k < 1 || pt.std_error < 0) {
      throw ConfigError("line " + std::to_string(lineno) + ": malformed curve row '" + line + "'");
    }
    curve.points.push_back(pt);
  }
  if (!header) throw ConfigError("curve CSV has no header");
  return curve;
}

json group_summary(const Group& g) {
  std::map<std::string, int> sizes;
  for (const auto& e : g.elements()) ++sizes[std::string(element_class_name(e.element_class))];
  auto subset = tetrahedral_subset(g);
  SolidOrbit orbit = solid_orbit(g);
  Rational avg = avg_word_length(g);
  return {{"kind", group_kind_name(g.kind())},
          {"order", g.order()},
          {"avg_word_length", avg.str()},
          {"avg_word_length_value", avg.value()},
          {"class_sizes", sizes},
          {"tetrahedral_subset", subset},
          {"tetrahedral_subset_size", subset.size()},
          {"solid_orbit",
           {{"points", orbit.points.size()},
            {"closed", orbit.closed},
            {"spectrum_matches", orbit.spectrum_matches},
            {"ok", orbit.ok()}}}};
}

json design_report(const Group& g) {
  json rows = json::array();
  int order = 0;
  bool still = true;
  for (int t = 1; t <= 6; ++t) {
    double fp = frame_potential(g, t);
    double c = catalan(t);
    bool pass = std::abs(fp - c) <= 1e-9;
    still = still && pass;
    if (still) order = t;
    rows.push_back({{"t", t}, {"frame_potential", fp}, {"catalan", c}, {"pass", pass}});
  }
  int claimed = claimed_design_order(g.kind());
  return {{"kind", group_kind_name(g.kind())},
          {"claimed_design_order", claimed},
          {"design_order", order},
          {"verified", order == claimed},
          {"rows", rows}};
}

}  // namespace platonic
