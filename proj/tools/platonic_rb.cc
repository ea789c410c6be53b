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


// Batch runner for the rotation-group benchmarking experiments.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "platonic/experiment.h"

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  int threads = 1;
  std::optional<std::string> group;
  std::optional<std::string> input;
};

int execute(const std::string& command, const Flags& flags) {
  nlohmann::json config = nlohmann::json::object();
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) {
      std::cerr << "config error: cannot read " << flags.config << "\n";
      return platonic::kExitConfig;
    }
    try {
      config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "config error: " << flags.config << ": " << e.what() << "\n";
      return platonic::kExitConfig;
    }
  }
  platonic::RunContext ctx;
  ctx.seed = flags.seed;
  ctx.threads = flags.threads;
  ctx.group = flags.group;
  ctx.input = flags.input;

  platonic::Artifacts artifacts;
  std::string error;
  int code = platonic::run_command_status(command, config, ctx, artifacts, error);

  if (!artifacts.files.empty()) {
    std::error_code ec;
    fs::create_directories(flags.out, ec);
    for (const auto& [name, content] : artifacts.files) {
      fs::path path = fs::path(flags.out) / name;
      std::ofstream f(path, std::ios::binary);
      f << content;
      if (!f) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
      }
    }
  }
  std::cout << artifacts.report;
  if (code != platonic::kExitOk) std::cerr << error << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Platonic rotation-group randomized benchmarking"};
  app.require_subcommand(1);
  Flags flags;

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec commands[] = {
      {"build-group", "Build a rotation group and export its table"},
      {"verify-designs", "Check frame potentials against the Haar values"},
      {"run-rb", "Run reference and interleaved benchmarking"},
      {"calibrate", "Calibrate pulse amplitudes and DRAG"},
      {"orbit", "Tune pulse parameters against fixed-length sequence fidelity"},
      {"fit", "Fit the decay of an existing curve CSV"},
  };
  for (const auto& spec : commands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--seed", flags.seed, "Seed, overrides the config");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    if (std::string(spec.name) != "fit") {
      sub->add_option("--group", flags.group, "tetrahedral, octahedral, icosahedral or all");
    } else {
      sub->add_option("--input", flags.input, "Curve CSV");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : platonic::kExitConfig;
  }
  for (const auto& spec : commands) {
    if (app.got_subcommand(spec.name)) return execute(spec.name, flags);
  }
  return platonic::kExitConfig;
}
