// Copyright 2026 The npoint Authors
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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "npoint/model.hpp"
#include "test_support.hpp"

#ifndef NPOINT_CLI_PATH
#error "NPOINT_CLI_PATH must point at the npoint executable"
#endif

namespace npoint {
namespace {

const std::string kCli = NPOINT_CLI_PATH;
const std::string kModels = NPOINT_MODELS_DIR;
const std::string kGolden = NPOINT_GOLDEN_DIR;

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Result cli(const std::string& args, const std::string& prefix = "") {
  Result r;
  FILE* pipe = popen((prefix + kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 512> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(CliTrees, VacuumFourVertices) {
  const auto r = cli("trees --vertices 4 --min-valence 0");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 2u);
  EXPECT_EQ(r.out, slurp(kGolden + "/trees_k4.txt"));
  EXPECT_NE(r.out.find("1/2\t"), std::string::npos);
  EXPECT_NE(r.out.find("1/6\t"), std::string::npos);
}

TEST(CliTrees, FourLegsCubic) {
  const auto r = cli("trees --vertices 2 --externals x1,x2,x3,x4 --min-valence 3");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 3u);
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) EXPECT_EQ(line.substr(0, 2), "1\t");
}

TEST(CliTrees, SingleVertex) {
  const auto r = cli("trees --vertices 1 --externals x");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1\tv1{x}\t-\n");
}

TEST(CliTrees, GoldenJsonAndDot) {
  const auto json_out = cli("trees --vertices 2 --externals x1,x2,x3,x4 --min-valence 3 --format json");
  ASSERT_EQ(json_out.status, 0);
  EXPECT_EQ(json_out.out, slurp(kGolden + "/trees_k2_x4.json"));
  const auto parsed = nlohmann::json::parse(json_out.out);
  ASSERT_EQ(parsed["trees"].size(), 3u);
  EXPECT_EQ(parsed["trees"][0]["weight"]["numerator"], "1");

  const auto dot = cli("trees --vertices 3 --externals a,b --format dot");
  ASSERT_EQ(dot.status, 0);
  EXPECT_EQ(dot.out, slurp(kGolden + "/trees_k3_ab.dot"));
}

TEST(CliTrees, FermionicLegsAndDeterminism) {
  const auto a = cli("trees --vertices 3 --externals p,q,s --fermions p,q");
  const auto b = cli("trees --vertices 3 --externals p,q,s --fermions p,q");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_GT(lines(a.out), 0u);
  EXPECT_EQ(cli("trees --vertices 2 --externals p,p --fermions p").out, "");
}

TEST(CliTrees, UsageErrors) {
  EXPECT_EQ(cli("trees --vertices 0").status, 2);
  EXPECT_EQ(cli("trees --vertices 2 --format svg").status, 2);
  EXPECT_EQ(cli("trees --vertices 2 --externals a --fermions b").status, 2);
  EXPECT_EQ(cli("trees").status, 2);
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(CliNpoint, Examples) {
  EXPECT_EQ(cli("npoint " + kModels + "/phi3.json --externals x,x,x,x --mode tree_level").out, "4\n");
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x --k-max 3").out, "545/49\n");
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x --k-max 1").out, "5\n");
  EXPECT_EQ(cli("npoint " + kModels + "/phi3.json --externals x,x,x,x --mode tree_level --float").out, "4\n");
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x --k-max 2 --float").out, "8.5714285714285712\n");
}

TEST(CliNpoint, Errors) {
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x").status, 2);
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x --k-max 0").status, 2);
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x --mode sideways").status, 2);
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,y --k-max 2").status, 3);
  EXPECT_EQ(cli("npoint " + kModels + "/chain.json --externals x,x --mode modified").status, 3);
  EXPECT_EQ(cli("npoint " + kModels + "/phi3.json --externals x,x,x,x --mode modified").status, 3);
  EXPECT_EQ(cli("npoint " + kModels + "/missing.json --externals x --k-max 1").status, 3);
}

TEST(CliNpoint, ModelDirectoryAndStdin) {
  const auto env = cli("npoint phi3.json --externals x,x,x,x --mode tree_level", "NPOINT_MODEL_DIR=" + kModels + " ");
  EXPECT_EQ(env.status, 0);
  EXPECT_EQ(env.out, "4\n");
  const auto piped = cli("npoint - --externals x,x,x,x --mode tree_level", "cat " + kModels + "/phi3.json | ");
  EXPECT_EQ(piped.out, "4\n");
}

TEST(CliTransform, RoundtripIsByteIdentical) {
  std::mt19937 rng(31);
  const auto dir = std::filesystem::temp_directory_path() / ("npoint-cli-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  for (int trial = 0; trial < 3; ++trial) {
    auto reg = testing::registry(1 + static_cast<std::size_t>(trial), trial == 2 ? 2 : 0);
    const std::size_t bound = 4;
    auto sigma = testing::random_functional(rng, reg, 1, bound, 0.7);
    sigma.set_max_degree(bound);
    FiniteModel m{reg, testing::random_propagator(rng, reg), std::nullopt, PropagatorRole::feynman, {}, "random", ""};
    m.functionals.push_back({"sigma", Role::sigma, sigma, false});
    const std::string canonical = model_to_json(m).dump(2) + "\n";
    const auto in = dir / ("model" + std::to_string(trial) + ".json");
    const auto mid = dir / ("rho" + std::to_string(trial) + ".json");
    std::ofstream(in) << canonical;
    const auto exp = cli("transform " + in.string() + " --direction exp --degree-bound 4");
    ASSERT_EQ(exp.status, 0);
    std::ofstream(mid) << exp.out;
    const auto rho = parse_model(std::string_view(exp.out));
    EXPECT_EQ(rho.find(Role::rho).functional.unit_value(), Rational(1));
    const auto log = cli("transform " + mid.string() + " --direction log --degree-bound 4");
    ASSERT_EQ(log.status, 0);
    EXPECT_EQ(log.out, canonical);
  }
  std::filesystem::remove_all(dir);
}

TEST(CliTransform, Errors) {
  EXPECT_EQ(cli("transform " + kModels + "/gaussian.json --direction log --degree-bound 4").status, 3);
  EXPECT_EQ(cli("transform " + kModels + "/gaussian.json --direction exp --degree-bound -1").status, 2);
  EXPECT_EQ(cli("transform " + kModels + "/gaussian.json --direction up --degree-bound 2").status, 2);
  EXPECT_EQ(cli("transform " + kModels + "/gaussian.json --direction exp").status, 2);
}

TEST(CliVerifyAppendix, Examples) {
  const auto two = cli("verify-appendix --max-k 2");
  EXPECT_EQ(two.status, 0);
  EXPECT_NE(two.out.find("k=2 trees=1 expected=1"), std::string::npos);
  EXPECT_NE(two.out.find("weight=1/2 s=2 ok"), std::string::npos);
  const auto seven = cli("verify-appendix --max-k 7");
  EXPECT_EQ(seven.status, 0);
  EXPECT_NE(seven.out.find("k=7 trees=11 expected=11"), std::string::npos);
  EXPECT_EQ(seven.out.substr(seven.out.size() - 5), "PASS\n");
  EXPECT_EQ(cli("verify-appendix --max-k 8").status, 2);
  EXPECT_EQ(cli("verify-appendix --max-k 0").status, 2);
}

}  // namespace
}  // namespace npoint
