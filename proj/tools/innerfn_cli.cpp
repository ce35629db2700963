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

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "innerfn/errors.hpp"
#include "innerfn/pipeline.hpp"

namespace {

// Flags are optional so that only the ones given override the config file.
struct Flags {
  std::optional<std::string> config;
  std::optional<int> q;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_count, probe_count, sign_trials, rotation_trials, budget,
      candidate_count, oracle_points;
  std::optional<int> k, d_psi_max;
  std::optional<double> defect_target, epsilon_energy;
  std::optional<std::string> output_dir, target, oracle_spec;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "flat JSON config file; flags override its keys");
  cmd.add_option("--seed", f.seed, "64-bit run seed (required here or in the config)");
  cmd.add_option("--q", f.q, "covering exponent q >= 1");
  cmd.add_option("--sample-count", f.sample_count, "Monte Carlo samples on dM");
  cmd.add_option("--probe-count", f.probe_count, "probe points for sup checks");
  cmd.add_option("--k", f.k, "RW degree (lower bound on step degrees for build-inner)");
  cmd.add_option("--sign-trials", f.sign_trials, "random sign vectors per RW search");
  cmd.add_option("--rotation-trials", f.rotation_trials, "Haar rotations per measure adaptation");
  cmd.add_option("--budget", f.budget, "maximum generating steps");
  cmd.add_option("--defect-target", f.defect_target, "stop once D_N falls below this (default 0.05 N)");
  cmd.add_option("--d-psi-max", f.d_psi_max, "largest surrogate degree");
  cmd.add_option("--epsilon-energy", f.epsilon_energy, "energy floor per step");
  cmd.add_option("--output-dir", f.output_dir, "directory for reports");
  cmd.add_option("--candidate-count", f.candidate_count, "candidate cloud size for packings");
  cmd.add_option("--target", f.target, "target modulus: const:c or poly:a0,a1");
  cmd.add_option("--oracle-spec", f.oracle_spec, "JSON with blaschke and singular specs");
  cmd.add_option("--oracle-points", f.oracle_points, "circle points for the 1-D oracle");
}

innerfn::RunConfig merge(const Flags& f) {
  innerfn::RunConfig c;
  if (f.config) c = innerfn::load_config(*f.config);
  if (f.q) c.q = *f.q;
  if (f.seed) c.seed = *f.seed;
  if (f.sample_count) c.sample_count = *f.sample_count;
  if (f.probe_count) c.probe_count = *f.probe_count;
  if (f.k) c.k = *f.k;
  if (f.sign_trials) c.sign_trials = *f.sign_trials;
  if (f.rotation_trials) c.rotation_trials = *f.rotation_trials;
  if (f.budget) c.budget = *f.budget;
  if (f.defect_target) c.defect_target = *f.defect_target;
  if (f.d_psi_max) c.d_psi_max = *f.d_psi_max;
  if (f.epsilon_energy) c.epsilon_energy = *f.epsilon_energy;
  if (f.output_dir) c.output_dir = *f.output_dir;
  if (f.candidate_count) c.candidate_count = *f.candidate_count;
  if (f.target) c.target = *f.target;
  if (f.oracle_spec) c.oracle_spec = *f.oracle_spec;
  if (f.oracle_points) c.oracle_points = *f.oracle_points;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inner functions on ramified coverings of the ball: verification and construction"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"verify-integrals", "check boundary integral identities against Monte Carlo"},
      {"pack", "greedy r-separated packing with cover, shell and doubling checks"},
      {"rw-search", "sign search for a bounded homogeneous polynomial W_k"},
      {"build-inner", "run the series construction and write its ledgers"},
      {"oracle-1d", "check Blaschke and singular inner functions on the disc"},
  };
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return innerfn::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  innerfn::CommandResult result;
  try {
    result = innerfn::run_command(command, merge(flags));
  } catch (const innerfn::ConfigError& e) {
    result = {innerfn::kExitConfig, std::string("configuration error: ") + e.what(), {}};
  } catch (const innerfn::Error& e) {
    result = {innerfn::kExitInvariant, e.what(), {}};
  }
  (result.exit_code == 0 ? std::cout : std::cerr) << command << ": " << result.summary << '\n';
  return result.exit_code;
}
