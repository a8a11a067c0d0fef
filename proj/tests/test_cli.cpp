/*
 * Copyright 2026 The chainmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "chainmetric/finite_oracle.hpp"
#include "cli.hpp"

namespace chainmetric::cli {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("chainmetric_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, DistEqualPoints) {
  const CliResult r = run({"dist", "0.5,0.5", "0.5,0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["lower"].get<double>(), 0.0);
  EXPECT_EQ(j["upper"].get<double>(), 0.0);
}

TEST(Cli, DistBracket) {
  const CliResult r = run({"dist", "3,0", "-3,0.5", "--angular-resolution", "0.4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["lower"].get<double>(), j["upper"].get<double>());
  EXPECT_LE(j["upper"].get<double>(), j["delta"].get<double>());
  EXPECT_TRUE(j["certified"].get<bool>());
  EXPECT_GE(j["witness"].size(), 2u);
}

TEST(Cli, OracleThreePoint) {
  const CliResult r = run({"oracle", std::string(CHAINMETRIC_TEST_DATA) + "/three_point.txt"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  const auto m = read_distance_matrix(in);
  EXPECT_NEAR(m(1, 2), 2.0 / 11.0, 1e-15);
  EXPECT_NEAR(m(0, 1), 12.0 / 11.0, 1e-15);
  EXPECT_NEAR(m(0, 2), 12.0 / 11.0, 1e-15);
}

TEST(Cli, NoneqVerdict) {
  const std::string csv = temp_path("noneq.csv");
  const CliResult r = run({"noneq", "--delta", "0.6", "--horizon", "8", "--csv", csv, "--angular-resolution", "0.8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["floor"].get<double>(), 0.104482, 1e-6);
  EXPECT_EQ(j["verdict"].get<std::string>(), "non-equivalent");
  EXPECT_EQ(j["N"].get<int>(), 8);
  EXPECT_EQ(slurp(csv).substr(0, 6), "i,a_i,");
  std::filesystem::remove(csv);
}

TEST(Cli, BoundaryMaps) {
  CliResult r = run({"boundary", "--map", "h", "0.5,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "interior");
  EXPECT_EQ(j["point"][0].get<double>(), 1.0);

  r = run({"boundary", "--map", "h", "0,1"});
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "at-infinity");
  EXPECT_EQ(j["representative"][1][1].get<double>(), 1.5);

  r = run({"boundary", "--map", "k", "3,0"});
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["point"][0].get<double>(), 0.75);

  r = run({"boundary", "--map", "k", "--infinity", "0,1"});
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["point"][1].get<double>(), 1.0);

  r = run({"boundary", "--map", "h-ray", "0.15,0.2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
}

TEST(Cli, ConvergeCsv) {
  const CliResult r = run({"converge", "2,0", "0,2", "--levels", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "level,node_count,upper_bound");
}

TEST(Cli, RaysAreDeterministic) {
  const std::string a = temp_path("rays_a.csv"), b = temp_path("rays_b.csv");
  ASSERT_EQ(run({"rays", "--samples", "200", "--seed", "9", "--output", a}).code, kExitOk);
  ASSERT_EQ(run({"rays", "--samples", "200", "--seed", "9", "--output", b}).code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a).find("sample,d_euclid,ray_distance,bound"), std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, NetSmallRun) {
  const CliResult r = run({"net", "--epsilon", "0.99", "--samples", "100"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["k"].get<int>(), 12);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, ConfigFileAndOverrides) {
  const std::string cfg = temp_path("config.json");
  std::ofstream(cfg) << R"({"weight": "ray_psi", "delta": 0.5, "dimension": 2})";
  const CliResult r = run({"--config", cfg, "dist", "2,0", "0,3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["weight"], "ray_psi");
  const CliResult o = run({"--config", cfg, "--weight", "std_phi", "dist", "2,0", "0,3"});
  EXPECT_EQ(nlohmann::json::parse(o.out)["weight"], "std_phi");
  std::filesystem::remove(cfg);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run({}).code, kExitConfig);
  EXPECT_EQ(run({"dist", "1,x", "0,0"}).code, kExitConfig);
  EXPECT_EQ(run({"dist", "1,0", "0,0,0"}).code, kExitConfig);
  EXPECT_EQ(run({"boundary", "--map", "q", "0,0"}).code, kExitConfig);
  EXPECT_EQ(run({"noneq", "--delta", "1.0"}).code, kExitConfig);
  EXPECT_EQ(run({"net", "--epsilon", "3"}).code, kExitConfig);
  EXPECT_EQ(run({"--config", "/nonexistent/cfg.json", "dist", "0,0", "1,1"}).code, kExitConfig);
  EXPECT_THROW(load_config(R"({"colour": 1})"), std::invalid_argument);
  EXPECT_THROW(load_config(R"({"dimension": "two"})"), std::invalid_argument);
  EXPECT_THROW(load_config("[1]"), std::invalid_argument);
}

TEST(Cli, LoadConfigFields) {
  const RunConfig c = load_config(
      R"({"dimension": 3, "weight": "ray_psi", "delta": 0.4, "max_sphere_index": 5, "angular_resolution": 0.2,
          "radial_steps": 3, "graph_mode": "structured", "neighbours": 6, "seed": 42, "output": "x.csv"})");
  EXPECT_EQ(c.dimension, 3);
  EXPECT_EQ(c.weight_kind, WeightKind::ray_psi);
  EXPECT_EQ(c.delta, 0.4);
  EXPECT_EQ(c.sampler.max_sphere_index, 5);
  EXPECT_EQ(c.sampler.angular_resolution, 0.2);
  EXPECT_EQ(c.sampler.radial_steps, 3);
  EXPECT_EQ(c.sampler.graph_mode, GraphMode::structured);
  EXPECT_EQ(c.sampler.neighbours, 6);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.output, "x.csv");
}

}  // namespace
}  // namespace chainmetric::cli
