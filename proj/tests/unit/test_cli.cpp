// Copyright 2026 The acypart Authors
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

#include <json.hpp>
#include <sstream>

#include "../../tools/cli.hpp"
#include "acypart/io.hpp"
#include "test_util.hpp"

namespace acypart {
namespace {

using nlohmann::json;
using testutil::TempDir;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;

  // Last line of stdout as JSON.
  json summary() const {
    std::istringstream in(out);
    std::string line, last;
    while (std::getline(in, line)) {
      if (!line.empty()) last = line;
    }
    return json::parse(last);
  }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

const char* kDiamond = "p adag 4 4\nv 1\nv 1\nv 1\nv 1\ne 0 1 1\ne 0 2 1\ne 1 3 1\ne 2 3 1\n";
const char* kChain4 = "p adag 4 3\nv 1\nv 1\nv 1\nv 1\ne 0 1 1\ne 1 2 1\ne 2 3 1\n";
const char* kChain8 =
    "p adag 8 7\nv 1\nv 1\nv 1\nv 1\nv 1\nv 1\nv 1\nv 1\n"
    "e 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\ne 5 6 1\ne 6 7 1\n";

class Cli : public ::testing::Test {
 protected:
  Cli() : dir_(::testing::UnitTest::GetInstance()->current_test_info()->name()) {}
  std::string file(const std::string& name, const std::string& content) { return dir_.file(name, content); }
  std::string path(const std::string& name) { return dir_.path(name); }

 private:
  TempDir dir_;
};

TEST_F(Cli, CheckValid) {
  const auto o = run({"check", "--graph", file("d.txt", kDiamond)});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const json j = o.summary();
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["m"], 4);
  EXPECT_EQ(j["total_weight"], 4);
  EXPECT_EQ(j["topo_order_hash"].get<std::string>().size(), 16u);
}

TEST_F(Cli, CheckCyclic) {
  const auto o = run({"check", "--graph", file("c.txt", "p adag 2 2\nv 1\nv 1\ne 0 1 1\ne 1 0 1\n")});
  EXPECT_EQ(o.code, cli::kInvalidGraph);
  const json j = o.summary();
  EXPECT_EQ(j["error"], "CycleDetected");
  EXPECT_EQ(j["cycle"].size(), 2u);
  EXPECT_FALSE(o.err.empty());
}

TEST_F(Cli, CheckMalformedHeader) {
  const auto o = run({"check", "--graph", file("m.txt", "p graph 2 0\nv 1\nv 1\n")});
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_EQ(o.summary()["line"], 1);
  EXPECT_NE(o.err.find("line 1"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"partition", "--k", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "--graph", path("missing.txt")}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  const std::string g = file("d.txt", kDiamond);
  EXPECT_EQ(run({"partition", "--graph", g, "--k", "2", "--eps", "-1"}).code, cli::kUsage);
  EXPECT_EQ(run({"partition", "--graph", g, "--k", "2", "--engine", "magic"}).code, cli::kUsage);
}

TEST_F(Cli, PartitionDiamond) {
  const std::string g = file("d.txt", kDiamond);
  for (const char* engine : {"bnb", "brute"}) {
    const auto o = run({"partition", "--graph", g, "--k", "2", "--eps", "0", "--engine", engine,
                        "--output", path("p.txt")});
    ASSERT_EQ(o.code, cli::kOk) << o.err;
    const json j = o.summary();
    EXPECT_EQ(j["cut"], 2);
    EXPECT_EQ(j["B"], 2);
    EXPECT_EQ(j["status"], "optimal");
    const Partition p = parse_partition_text(read_text_file(path("p.txt")), 4, 2);
    EXPECT_EQ(json(std::vector<int>(p.assignment.begin(), p.assignment.end())), j["partition"]);
  }
}

TEST_F(Cli, PartitionInfeasible) {
  const auto o = run({"partition", "--graph", file("h.txt", "p adag 2 1\nv 5\nv 1\ne 0 1 1\n"), "--k", "2"});
  EXPECT_EQ(o.code, cli::kInfeasible);
  EXPECT_EQ(o.summary()["status"], "infeasible");
}

TEST_F(Cli, PartitionWarmStart) {
  const std::string g = file("d.txt", kDiamond);
  const auto good = run({"partition", "--graph", g, "--k", "2", "--warm", file("w.txt", "0\n0\n1\n1\n")});
  EXPECT_EQ(good.code, cli::kOk) << good.err;
  EXPECT_EQ(good.summary()["cut"], 2);
  EXPECT_EQ(run({"partition", "--graph", g, "--k", "2", "--warm", file("bad.txt", "0\nzero\n")}).code, cli::kUsage);
  EXPECT_EQ(run({"partition", "--graph", g, "--k", "2", "--warm", file("short.txt", "0\n1\n")}).code, cli::kUsage);
  EXPECT_EQ(run({"partition", "--graph", g, "--k", "2", "--warm", file("cyc.txt", "0\n1\n1\n0\n")}).code,
            cli::kUsage);
}

TEST_F(Cli, PartitionBudget) {
  const auto o = run({"partition", "--graph", file("c.txt", kChain8), "--k", "2", "--budget-nodes", "1"});
  EXPECT_EQ(o.code, cli::kGuard);
  EXPECT_EQ(o.summary()["status"], "stopped");
}

TEST_F(Cli, EmitLpDeterministic) {
  const std::string g = file("d.txt", kDiamond);
  const auto a = run({"emit-lp", "--graph", g, "--k", "2", "--formulation", "proposed"});
  const auto b = run({"emit-lp", "--graph", g, "--k", "2", "--formulation", "proposed"});
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, testutil::read_file(std::string(ACYPART_GOLDEN_DIR) + "/diamond_proposed_k2.lp"));
  const auto c = run({"emit-lp", "--graph", g, "--k", "2", "--formulation", "proposed", "--output", path("m.lp")});
  ASSERT_EQ(c.code, cli::kOk);
  EXPECT_EQ(read_text_file(path("m.lp")), a.out);
  EXPECT_EQ(c.summary()["variables"], 14);
}

TEST_F(Cli, EmitLpHeavyPairs) {
  const auto o = run({"emit-lp", "--graph", file("c.txt", kChain4), "--k", "2", "--formulation", "albareda-extended"});
  ASSERT_EQ(o.code, cli::kOk);
  EXPECT_NE(o.out.find(" fix_0_3: z_0_3 = 0\n"), std::string::npos);
  EXPECT_NE(o.out.find(" fix_0_2: z_0_2 = 0\n"), std::string::npos);
}

TEST_F(Cli, EmitLpOptions) {
  const std::string g = file("d.txt", kDiamond);
  EXPECT_EQ(run({"emit-lp", "--graph", g, "--k", "2", "--formulation", "gurobi"}).code, cli::kUsage);
  const auto relaxed = run({"emit-lp", "--graph", g, "--k", "2", "--formulation", "proposed", "--relax-z"});
  ASSERT_EQ(relaxed.code, cli::kOk);
  EXPECT_NE(relaxed.out.find(" 0 <= z_0_1 <= 1\n"), std::string::npos);
  const auto flipped = run({"emit-lp", "--graph", g, "--k", "2", "--formulation", "nossack", "--objective", "min-cut"});
  ASSERT_EQ(flipped.code, cli::kOk);
  EXPECT_NE(flipped.out.find("Minimize"), std::string::npos);
  for (const char* f : {"undirected", "nossack", "albareda-base", "albareda-extended", "albareda-final"}) {
    EXPECT_EQ(run({"emit-lp", "--graph", g, "--k", "3", "--formulation", f}).code, cli::kOk) << f;
  }
}

TEST_F(Cli, IngestOptimalSolution) {
  const std::string g = file("d.txt", kDiamond);
  const std::string sol = file("s.sol", "x_0_0 1\nx_1_0 1\nx_2_1 1\nx_3_1 1\nz_0_2 1\nz_1_3 1\ny_0_1 1\n");
  const auto o = run({"ingest-solution", "--graph", g, "--k", "2", "--formulation", "proposed", "--solution", sol,
                      "--output", path("p.txt")});
  ASSERT_EQ(o.code, cli::kOk) << o.out << o.err;
  const json j = o.summary();
  EXPECT_EQ(j["cut"], 2);
  EXPECT_EQ(j["status"], "feasible");
  EXPECT_EQ(read_text_file(path("p.txt")), "0\n0\n1\n1\n");
  // Missing variables are reported as a warning.
  EXPECT_NE(o.err.find("warning"), std::string::npos);
}

TEST_F(Cli, IngestBalanceViolation) {
  const std::string g = file("d.txt", kDiamond);
  const std::string sol = file("s.sol", "x_0_0 1\nx_1_0 1\nx_2_0 1\nx_3_1 1\nz_1_3 1\nz_2_3 1\ny_0_1 1\n");
  const auto o = run({"ingest-solution", "--graph", g, "--k", "2", "--formulation", "proposed", "--solution", sol});
  EXPECT_EQ(o.code, cli::kInfeasible);
  const json j = o.summary();
  EXPECT_EQ(j["status"], "violations");
  EXPECT_FALSE(j["violated_constraints"].empty());
  EXPECT_FALSE(j["validation"]["violations"].empty());
}

TEST_F(Cli, IngestNonIntegral) {
  const std::string g = file("d.txt", kDiamond);
  const auto o = run({"ingest-solution", "--graph", g, "--k", "2", "--formulation", "proposed", "--solution",
                      file("s.sol", "x_0_0 0.6\n")});
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_EQ(o.summary()["error"], "NonIntegralValue");
}

TEST_F(Cli, CompareDiamondAndChain) {
  const auto d = run({"compare", "--graph", file("d.txt", kDiamond), "--k", "2", "--eps", "0"});
  ASSERT_EQ(d.code, cli::kOk) << d.err;
  const json j = d.summary();
  EXPECT_EQ(j["brute_force"], 2);
  for (const char* f : {"nossack", "albareda-base", "albareda-extended", "albareda-final", "proposed"}) {
    EXPECT_EQ(j["formulations"][f]["min_cut"], 2) << f;
  }
  EXPECT_LE(j["formulations"]["undirected"]["min_cut"].get<int>(), 2);

  const auto c = run({"compare", "--graph", file("c.txt", kChain4), "--k", "2", "--eps", "0"});
  ASSERT_EQ(c.code, cli::kOk);
  for (const auto& [name, row] : c.summary()["formulations"].items()) EXPECT_EQ(row["min_cut"], 1) << name;
}

TEST_F(Cli, CompareGuard) {
  std::string big = "p adag 9 0\n";
  for (int i = 0; i < 9; ++i) big += "v 1\n";
  EXPECT_EQ(run({"compare", "--graph", file("b.txt", big), "--k", "2"}).code, cli::kGuard);
  EXPECT_EQ(run({"compare", "--graph", file("d.txt", kDiamond), "--k", "4"}).code, cli::kGuard);
}

TEST_F(Cli, MultilevelChain) {
  const auto o = run({"multilevel", "--graph", file("c.txt", kChain8), "--k", "2", "--eps", "0", "--target-n", "3",
                      "--output", path("p.txt")});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const json j = o.summary();
  EXPECT_EQ(j["status"], "feasible");
  EXPECT_GE(j["cut"].get<int>(), 1);
  EXPECT_EQ(j["coarsest_n"], 3);
  const Partition p = parse_partition_text(read_text_file(path("p.txt")), 8, 2);
  EXPECT_EQ(p.size(), 8u);
}

TEST_F(Cli, QuantumThreeQubits) {
  const std::string c = file("c.qc", "h q0\ncx q0 q1\ncx q1 q2\n");
  const auto o = run({"quantum", "--circuit", c, "--lm", "2", "--eps", "10"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const json j = o.summary();
  EXPECT_EQ(j["k"], 2);
  for (const auto& q : j["part_qubits"]) EXPECT_LE(q.get<int>(), 2);
  const auto bigm = run({"quantum", "--circuit", c, "--lm", "2", "--eps", "10", "--strategy", "bigm", "--engine",
                         "search"});
  ASSERT_EQ(bigm.code, cli::kOk) << bigm.err;
  EXPECT_EQ(bigm.summary()["k"], 2);
  EXPECT_EQ(run({"quantum", "--circuit", c, "--lm", "2", "--strategy", "bigm", "--engine", "bnb"}).code, cli::kUsage);
}

TEST_F(Cli, QuantumCapacityTooSmall) {
  const auto o = run({"quantum", "--circuit", file("c.qc", "cx q0 q1\n"), "--lm", "1"});
  EXPECT_EQ(o.code, cli::kInfeasible);
  EXPECT_EQ(o.summary()["error"], "QubitCapacityInfeasible");
}

TEST_F(Cli, Deterministic) {
  const std::string g = file("d.txt", kDiamond);
  const std::vector<std::vector<std::string>> commands{
      {"check", "--graph", g},
      {"partition", "--graph", g, "--k", "2"},
      {"compare", "--graph", g, "--k", "2"},
      {"multilevel", "--graph", g, "--k", "2", "--target-n", "2"},
  };
  for (const auto& cmd : commands) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << cmd[0];
  }
}

}  // namespace
}  // namespace acypart
