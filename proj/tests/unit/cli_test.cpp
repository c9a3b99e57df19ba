/*
 * Copyright 2026 The oshi-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "oshi/topo/topology.hpp"
#include "support/doc_builder.hpp"

namespace oshi::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return Result{code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("oshi_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    topo_ = (dir_ / "chain.json").string();
    std::ofstream(topo_) << topo::to_json(oshi::testing::chain(1).doc()).dump();
    ::unsetenv("OSHI_SIM_SEED");
  }
  void TearDown() override {
    ::unsetenv("OSHI_SIM_SEED");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string topo_;
};

TEST_F(Cli, GenIsDeterministicAndValid) {
  const std::vector<std::string> args{"gen", "--model", "ba", "--nodes", "15", "--seed", "4"};
  const auto a = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(cli(args).out, a.out);
  EXPECT_TRUE(topo::parse_topology(a.doc()).ok());
  EXPECT_NE(cli({"gen", "--model", "ba", "--nodes", "15", "--seed", "5"}).out, a.out);

  // The environment seed wins over the flag.
  ::setenv("OSHI_SIM_SEED", "4", 1);
  EXPECT_EQ(cli({"gen", "--model", "ba", "--nodes", "15", "--seed", "99"}).out, a.out);
  ::setenv("OSHI_SIM_SEED", "four", 1);
  EXPECT_EQ(cli(args).code, 1);
}

TEST_F(Cli, OutputGoesToFileOrStdout) {
  const auto file = path("gen.json");
  const auto r = cli({"gen", "--nodes", "8", "--p", "0.5", "-o", file});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(file);
  const auto written = json::parse(in);
  EXPECT_EQ(written, cli({"gen", "--nodes", "8", "--p", "0.5", "-o", "-"}).doc());
  EXPECT_EQ(cli({"gen", "--nodes", "8", "-o", path("missing/dir/x.json")}).code, 1);
}

TEST_F(Cli, DeployReportsConvergence) {
  const auto r = cli({"deploy", "--topo", topo_});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  EXPECT_EQ(j["nodes"], 5);
  EXPECT_TRUE(j["routing_converged"].get<bool>());
  EXPECT_TRUE(j["discovery_complete"].get<bool>());
  EXPECT_EQ(j["reachability"]["ratio"], 1.0);
  EXPECT_EQ(cli({"deploy", "--topo", path("none.json")}).code, 1);
  EXPECT_EQ(cli({"deploy"}).code, 1);
}

TEST_F(Cli, VllAddListDelete) {
  const auto saved = path("with_vll.json");
  auto r = cli({"vll", "add", "--topo", topo_, "--from", "PE1:1:100", "--to", "PE2:2:100",
                "--id", "v", "--save", saved});
  ASSERT_EQ(r.code, 0) << r.err;
  r = cli({"vll", "list", "--topo", saved});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.doc().size(), 1u);
  EXPECT_EQ(r.doc()[0]["id"], "v");
  EXPECT_EQ(r.doc()[0]["state"], "Active");

  const auto cleared = path("cleared.json");
  r = cli({"vll", "del", "--topo", saved, "--id", "v", "--save", cleared});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(cli({"vll", "list", "--topo", cleared}).doc().empty());
  EXPECT_EQ(cli({"vll", "del", "--topo", topo_, "--id", "v"}).code, 1);
}

TEST_F(Cli, VllWithUnknownNodeNamesIt) {
  const auto r = cli({"vll", "add", "--topo", topo_, "--from", "PE7:1:100", "--to", "PE2:2:100"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("UnknownNode"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("PE7"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"vll", "add", "--topo", topo_, "--from", "PE1", "--to", "PE2:2"}).code, 1);
}

TEST_F(Cli, DumpFlowsAndRib) {
  auto r = cli({"dump-flows", "--topo", topo_, "--node", "PE1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.doc().empty());
  r = cli({"dump-flows", "--topo", topo_, "--node", "CE1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("not an OSHI node"), std::string::npos);
  EXPECT_EQ(cli({"dump-flows", "--topo", topo_, "--node", "X"}).code, 1);

  // A CE holds only its default route towards the PE.
  r = cli({"dump-rib", "--topo", topo_, "--node", "CE1"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(r.doc().size(), 1u);
  EXPECT_EQ(r.doc()[0]["prefix"], "0.0.0.0/0");
  // Loopbacks follow document order; PE1 has .1 and routes to the rest.
  r = cli({"dump-rib", "--topo", topo_, "--node", "PE1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::set<std::string> prefixes;
  for (const auto& e : r.doc()) prefixes.insert(e["prefix"].get<std::string>());
  for (int i = 2; i <= 5; ++i) {
    EXPECT_TRUE(prefixes.contains("172.16.0." + std::to_string(i) + "/32")) << i;
  }
}

TEST_F(Cli, TrafficDeliversTheFlow) {
  const auto r = cli({"traffic", "--topo", topo_, "--rate", "100", "--duration", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.doc();
  // Jittered gaps keep the mean rate.
  EXPECT_NEAR(j["sent"].get<double>(), 200, 10);
  EXPECT_EQ(j["delivered"], j["sent"]);
  EXPECT_GT(j["load"]["CR1"].get<double>(), 0.0);
  EXPECT_EQ(cli({"traffic", "--topo", topo_, "--rate", "0"}).code, 1);
  EXPECT_EQ(cli({"traffic", "--profile", "mpls"}).code, 1);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"gen", "--bogus"}).code, 1);
  EXPECT_EQ(cli({"measure", "--experiment", "e"}).code, 1);
  const auto help = cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("gen"), std::string::npos);
}

}  // namespace
}  // namespace oshi::cli
