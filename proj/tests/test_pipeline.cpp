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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "innerfn/errors.hpp"
#include "innerfn/pipeline.hpp"
#include "test_support.hpp"

using namespace innerfn;
namespace fs = std::filesystem;

namespace {

RunConfig quick(const std::string& dir) {
  RunConfig c;
  c.seed = 7;
  c.sample_count = 20000;
  c.probe_count = 2000;
  c.candidate_count = 20000;
  c.sign_trials = 32;
  c.rotation_trials = 8;
  c.budget = 1;
  c.oracle_points = 200;
  c.output_dir = innerfn::testing::scratch_dir(dir);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error_field(const RunConfig& c) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(Config, ValidationNamesTheField) {
  RunConfig c;
  c.seed = 1;
  EXPECT_EQ(config_error_field(c), "");
  c.q = 0;
  EXPECT_EQ(config_error_field(c), "q");
  c.q = 2;
  c.seed.reset();
  EXPECT_EQ(config_error_field(c), "seed");
  c.seed = 1;
  c.k = 0;
  EXPECT_EQ(config_error_field(c), "k");
  c.k = 8;
  c.defect_target = 2.5;
  EXPECT_EQ(config_error_field(c), "defect_target");
  c.defect_target = 1.0;
  c.epsilon_energy = -1;
  EXPECT_EQ(config_error_field(c), "epsilon_energy");
  c.epsilon_energy = 1e-4;
  c.sample_count = 0;
  EXPECT_EQ(config_error_field(c), "sample_count");
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  RunConfig c;
  c.seed = 99;
  c.q = 3;
  c.defect_target = 0.2;
  c.target = "poly:0.5,0.5";
  const RunConfig back = config_from_json(to_json(c));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());

  try {
    config_from_json(nlohmann::json::parse(R"({"seed": 1, "sheets": 2})"));
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "sheets");
  }
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"q": "two"})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"budget": -3})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse("[1, 2]")), ConfigError);
  // Later layers override earlier ones.
  RunConfig base;
  base.q = 5;
  EXPECT_EQ(config_from_json(nlohmann::json::parse(R"({"k": 3})"), base).q, 5);
}

TEST(Config, LoadErrors) {
  const fs::path dir = innerfn::testing::scratch_dir("pipeline_load");
  EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(load_config(dir / "bad.json"), ConfigError);
  std::ofstream(dir / "good.json") << R"({"seed": 4, "q": 2})";
  const RunConfig c = load_config(dir / "good.json");
  EXPECT_EQ(c.q, 2);
  EXPECT_EQ(*c.seed, 4u);
}

TEST(Config, TargetParsing) {
  const ComplexPoint2 a{1.0, 0.0}, b{0.0, 1.0};
  EXPECT_DOUBLE_EQ(parse_target("const:2.5").phi(a), 2.5);
  const TargetModulus p = parse_target("poly:0.5,0.25");
  EXPECT_DOUBLE_EQ(p.phi(a), 0.75);
  EXPECT_DOUBLE_EQ(p.phi(b), 0.5);
  EXPECT_THROW(parse_target("const:x"), ConfigError);
  EXPECT_THROW(parse_target("poly:1"), ConfigError);
  EXPECT_THROW(parse_target("gauss:1"), ConfigError);
}

TEST(Commands, ExitCodes) {
  RunConfig c = quick("pipeline_exit");
  c.q = 0;
  EXPECT_EQ(run_command("pack", c).exit_code, kExitConfig);
  c.q = 1;
  c.seed.reset();
  EXPECT_EQ(run_command("pack", c).exit_code, kExitConfig);
  c.seed = 1;
  EXPECT_EQ(run_command("nope", c).exit_code, kExitConfig);
  c.target = "const:0";
  EXPECT_EQ(run_command("build-inner", c).exit_code, kExitConfig);
  c.target = "const:1";
  c.epsilon_energy = 0.9;
  EXPECT_EQ(run_command("build-inner", c).exit_code, kExitStagnation);
}

TEST(Commands, OracleWritesManifest) {
  const RunConfig c = quick("pipeline_oracle");
  const CommandResult r = run_command("oracle-1d", c);
  ASSERT_EQ(r.exit_code, kExitPass) << r.summary;
  ASSERT_FALSE(r.files.empty());
  EXPECT_EQ(r.files.back(), "manifest.json");
  const auto manifest = nlohmann::json::parse(slurp(c.output_dir / "manifest.json"));
  EXPECT_EQ(manifest.at("command"), "oracle-1d");
  EXPECT_EQ(manifest.at("exit_code"), 0);
  EXPECT_FALSE(manifest.at("config").contains("output_dir"));
  for (const auto& f : manifest.at("files")) {
    EXPECT_EQ(fs::file_size(c.output_dir / f.at("name").get<std::string>()), f.at("bytes").get<std::size_t>());
  }
  const auto report = nlohmann::json::parse(slurp(c.output_dir / "oracle_1d.json"));
  EXPECT_TRUE(report.at("results").is_array());
}

TEST(Commands, OracleAcceptsASpecFile) {
  RunConfig c = quick("pipeline_oracle_spec");
  const fs::path spec = c.output_dir / "spec.json";
  std::ofstream(spec) << R"({"blaschke": {"zeros": [[0.5, 0.1], [-0.2, 0.7]], "order_at_zero": 2},
                             "singular": {"atoms": [{"angle": 1.0, "mass": 0.5}]}})";
  c.oracle_spec = spec;
  EXPECT_EQ(run_command("oracle-1d", c).exit_code, kExitPass);
  std::ofstream(spec) << R"({"blaschke": {"zeros": [[2.0, 0.0]]}})";
  EXPECT_EQ(run_command("oracle-1d", c).exit_code, kExitConfig);
}

TEST(Commands, ByteIdenticalReruns) {
  for (const std::string name : {"pack", "rw-search", "build-inner"}) {
    RunConfig a = quick("pipeline_rerun_a"), b = quick("pipeline_rerun_b");
    a.q = b.q = 2;
    const CommandResult ra = run_command(name, a), rb = run_command(name, b);
    ASSERT_EQ(ra.exit_code, rb.exit_code) << name;
    ASSERT_EQ(ra.files, rb.files) << name;
    for (const auto& f : ra.files) {
      EXPECT_EQ(slurp(a.output_dir / f), slurp(b.output_dir / f)) << name << ": " << f;
    }
  }
}
