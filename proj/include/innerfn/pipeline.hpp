// Copyright 2026 The innerfn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "innerfn/inner_builder.hpp"

namespace innerfn {

struct RunConfig {
  int q = 1;
  std::optional<std::uint64_t> seed;
  std::size_t sample_count = 200000;
  std::size_t probe_count = 10000;
  int k = 8;
  std::size_t sign_trials = 256;
  std::size_t rotation_trials = 64;
  std::size_t budget = 50;
  std::optional<double> defect_target;  // default 0.05 N
  int d_psi_max = 12;
  double epsilon_energy = 1e-4;
  std::filesystem::path output_dir = "out";
  std::size_t candidate_count = 100000;
  std::string target = "const:1";  // "const:c" or "poly:a0,a1" (a0 + a1 |eta1|^2)
  std::optional<std::filesystem::path> oracle_spec;
  std::size_t oracle_points = 1000;
};

// Throws ConfigError naming the first offending field.
void validate(const RunConfig& config);

// Overlays the keys of a flat JSON object on `base`. Unknown keys and
// mistyped values are ConfigErrors. The result is not validated.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& config);

// Throws ConfigError("target", ...) on a malformed description.
TargetModulus parse_target(const std::string& description);

enum ExitCode : int { kExitPass = 0, kExitConfig = 1, kExitInvariant = 2, kExitStagnation = 3 };

struct CommandResult {
  int exit_code = kExitPass;
  std::string summary;
  std::vector<std::string> files;  // relative to output_dir, manifest last
};

// Each command validates the config, writes its outputs and a manifest.json
// into output_dir and reports an exit code. Library errors propagate.
CommandResult cmd_verify_integrals(const RunConfig& config);
CommandResult cmd_pack(const RunConfig& config);
CommandResult cmd_rw_search(const RunConfig& config);
CommandResult cmd_build_inner(const RunConfig& config);
CommandResult cmd_oracle_1d(const RunConfig& config);

// Runs the named command (verify-integrals, pack, rw-search, build-inner,
// oracle-1d) and maps errors onto the exit-code contract: ConfigError and
// PositivityError give 1, StagnationError 3, any other library error 2.
CommandResult run_command(const std::string& name, const RunConfig& config);

}  // namespace innerfn
