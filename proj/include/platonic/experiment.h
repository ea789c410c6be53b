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


// Config-driven experiment commands behind the platonic_rb tool. Commands
// return their artifacts in memory; the tool writes them out.

#ifndef PLATONIC_EXPERIMENT_H
#define PLATONIC_EXPERIMENT_H

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "platonic/fitting.h"
#include "platonic/rb.h"

namespace platonic {

/// Schema violation; the message starts with the offending field path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunContext {
  std::optional<std::uint64_t> seed;  // overrides the config
  int threads = 1;
  std::optional<std::string> group;   // overrides "group"
  std::optional<std::string> input;   // overrides "input" for fit
};

struct Artifacts {
  std::map<std::string, std::string> files;  // name relative to the output dir
  std::string report;                        // human-readable summary
};

enum ExitCode {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIntegrity = 3,
  kExitConvergence = 4,
};

/// Commands: build-group, verify-designs, run-rb, calibrate, orbit, fit.
/// Throws ConfigError before any computation if the config is malformed.
Artifacts run_command(std::string_view command, const nlohmann::json& config,
                      const RunContext& ctx = {});

/// Runs a command and maps failures to exit codes, writing the message to
/// `error` on failure.
int run_command_status(std::string_view command, const nlohmann::json& config,
                       const RunContext& ctx, Artifacts& out, std::string& error);

/// 64-bit FNV-1a of the text, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Curve CSV: a "# config_hash=" comment line, the header
/// "m,mean_fidelity,stderr,k", then one row per m with 12 significant digits.
std::string curve_csv(const RBCurve& curve, std::string_view config_hash);
/// Reads the format above; comment lines are skipped. Throws ConfigError.
RBCurve parse_curve_csv(std::string_view text);

nlohmann::json group_summary(const Group& g);
nlohmann::json design_report(const Group& g);

}  // namespace platonic

#endif  // PLATONIC_EXPERIMENT_H
