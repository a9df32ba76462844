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

#include <algorithm>
#include <random>

#include "acypart/dag.hpp"
#include "acypart/io.hpp"
#include "acypart/partition.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace acypart {
namespace {

using testutil::chain;
using testutil::diamond;

std::vector<int> order_of(const Dag& g) {
  auto o = g.topo_order().order();
  return {o.begin(), o.end()};
}

DagError::Kind dag_error_kind(const RawGraph& raw) {
  try {
    validate_dag(raw);
  } catch (const DagError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected DagError";
  return DagError::Kind::CycleDetected;
}

// Exhaustive small graphs plus random ones with shuffled labels.
std::vector<RawGraph> corpus() {
  std::vector<RawGraph> out;
  for (int n = 1; n <= 5; ++n) {
    for (auto& g : oracle::nonisomorphic_dags(n)) out.push_back(std::move(g));
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 150; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);
    out.push_back(oracle::random_dag(rng, {n, 0.15 + 0.1 * static_cast<double>(rng() % 6), i % 2 == 1}));
  }
  return out;
}

TEST(ValidateDag, EmptyGraph) {
  EXPECT_EQ(validate_dag(RawGraph{}).size(), 0u);
  Dag g{RawGraph{}};
  EXPECT_EQ(g.num_vertices(), 0u);
  EXPECT_EQ(g.total_weight(), 0);
}

TEST(ValidateDag, ChainOrder) { EXPECT_EQ(order_of(chain(3)), (std::vector<int>{0, 1, 2})); }

TEST(ValidateDag, TwoCycleReported) {
  RawGraph raw{{1, 1}, {{0, 1, 1}, {1, 0, 1}}};
  try {
    validate_dag(raw);
    FAIL() << "cycle not detected";
  } catch (const DagError& e) {
    EXPECT_EQ(e.kind(), DagError::Kind::CycleDetected);
    ASSERT_EQ(e.cycle().size(), 2u);
    std::vector<Vertex> c = e.cycle();
    std::sort(c.begin(), c.end());
    EXPECT_EQ(c, (std::vector<Vertex>{0, 1}));
  }
}

TEST(ValidateDag, ReportedCycleIsClosedWalk) {
  RawGraph raw{{1, 1, 1, 1}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 1, 1}}};
  try {
    validate_dag(raw);
    FAIL();
  } catch (const DagError& e) {
    const auto& c = e.cycle();
    ASSERT_FALSE(c.empty());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Vertex a = c[i];
      const Vertex b = c[(i + 1) % c.size()];
      EXPECT_TRUE(std::any_of(raw.edges.begin(), raw.edges.end(),
                              [&](const Edge& e2) { return e2.from == a && e2.to == b; }));
    }
  }
}

TEST(ValidateDag, RejectsMalformedInput) {
  EXPECT_EQ(dag_error_kind({{1, 1}, {{0, 1, 1}, {0, 1, 2}}}), DagError::Kind::DuplicateEdge);
  EXPECT_EQ(dag_error_kind({{1}, {{0, 0, 1}}}), DagError::Kind::SelfLoop);
  EXPECT_EQ(dag_error_kind({{1, 1}, {{0, 2, 1}}}), DagError::Kind::VertexOutOfRange);
  EXPECT_EQ(dag_error_kind({{1, -1}, {}}), DagError::Kind::NegativeValue);
  EXPECT_EQ(dag_error_kind({{1, 1}, {{0, 1, -3}}}), DagError::Kind::NegativeValue);
}

TEST(ValidateDag, SmallestReadyIdFirst) {
  // 2 -> 0, vertex 1 isolated: 1 and 2 are ready at the start.
  Dag g(RawGraph{{1, 1, 1}, {{2, 0, 1}}});
  EXPECT_EQ(order_of(g), (std::vector<int>{1, 2, 0}));
}

TEST(ValidateDag, OrderRespectsEveryEdge) {
  for (const auto& raw : corpus()) {
    const Dag g(raw);
    ASSERT_EQ(g.topo_order().size(), g.num_vertices());
    for (const Edge& e : g.edges()) {
      EXPECT_LT(g.topo_order().position(e.from), g.topo_order().position(e.to)) << oracle::describe(raw);
    }
  }
}

TEST(Reach, Examples) {
  EXPECT_EQ(descendants(chain(3), 0), (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(ancestors(diamond(), 3), (std::vector<Vertex>{0, 1, 2}));
  const Dag iso(RawGraph{{1, 1, 1}, {{0, 1, 1}}});
  EXPECT_TRUE(descendants(iso, 2).empty());
  EXPECT_TRUE(ancestors(iso, 2).empty());
}

TEST(Reach, DescendantAncestorDuality) {
  for (const auto& raw : corpus()) {
    const Dag g(raw);
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex u = 0; u < n; ++u) {
      const auto d = descendants(g, u);
      for (Vertex v = 0; v < n; ++v) {
        const auto a = ancestors(g, v);
        const bool in_d = std::binary_search(d.begin(), d.end(), v);
        const bool in_a = std::binary_search(a.begin(), a.end(), u);
        ASSERT_EQ(in_d, in_a);
        ASSERT_EQ(in_d, oracle::reaches(raw, u, v)) << oracle::describe(raw) << " " << u << "->" << v;
      }
    }
  }
}

TEST(Reach, MatrixAndDfsAgree) {
  for (const auto& raw : corpus()) {
    const Dag g(raw);
    const Reachability with_matrix(g);
    const Reachability dfs_only(g, 0);
    EXPECT_TRUE(with_matrix.has_matrix());
    if (g.num_vertices() > 0) EXPECT_FALSE(dfs_only.has_matrix());
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) ASSERT_EQ(with_matrix.reaches(u, v), dfs_only.reaches(u, v));
    }
  }
}

TEST(PathNodes, Examples) {
  EXPECT_EQ(path_nodes(diamond(), 0, 3), (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(path_nodes(chain(3), 0, 2), (std::vector<Vertex>{1}));
  EXPECT_TRUE(path_nodes(diamond(), 1, 2).empty());
  EXPECT_TRUE(path_nodes(diamond(), 3, 0).empty());
  EXPECT_TRUE(path_nodes(diamond(), 1, 1).empty());
}

TEST(PathNodes, MatchesPathEnumeration) {
  for (const auto& raw : corpus()) {
    const Dag g(raw);
    const Reachability reach(g, 0);
    const auto n = static_cast<Vertex>(g.num_vertices());
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        const auto expected = oracle::interior(raw, u, v);
        const std::vector<Vertex> want(expected.begin(), expected.end());
        ASSERT_EQ(path_nodes(g, u, v), want) << oracle::describe(raw) << " " << u << "->" << v;
        ASSERT_EQ(path_nodes(reach, g.num_vertices(), u, v), want);
      }
    }
  }
}

TEST(Quotient, SinglePart) {
  const auto q = quotient_graph(diamond(), std::vector<PartId>{0, 0, 0, 0}, 1);
  EXPECT_EQ(q.num_parts, 1);
  EXPECT_EQ(q.part_weights, (std::vector<Weight>{4}));
  EXPECT_TRUE(q.edges.empty());
}

TEST(Quotient, DiamondSplit) {
  const auto q = quotient_graph(diamond(), std::vector<PartId>{0, 0, 1, 1}, 2);
  ASSERT_EQ(q.edges.size(), 1u);
  EXPECT_EQ(q.edges[0], (Edge{0, 1, 2}));
  EXPECT_FALSE(q.find_cycle());
}

TEST(Quotient, CrossedPairIsCyclic) {
  // a=0, b=1, c=2, d=3; blue {a,c} = 0, red {b,d} = 1.
  const Dag g(RawGraph{{1, 1, 1, 1}, {{0, 3, 1}, {1, 2, 1}}});
  const auto q = quotient_graph(g, std::vector<PartId>{0, 1, 0, 1}, 2);
  EXPECT_TRUE(q.has_edge(0, 1));
  EXPECT_TRUE(q.has_edge(1, 0));
  EXPECT_TRUE(q.find_cycle());
}

TEST(Quotient, EmptyPartsKept) {
  const auto q = quotient_graph(chain(2), std::vector<PartId>{0, 2}, 4);
  EXPECT_EQ(q.num_parts, 4);
  EXPECT_EQ(q.part_weights, (std::vector<Weight>{1, 0, 1, 0}));
}

TEST(Quotient, ArityMismatch) {
  EXPECT_THROW(quotient_graph(diamond(), std::vector<PartId>{0, 1}, 2), PartitionArityMismatch);
  EXPECT_THROW(quotient_graph(diamond(), std::vector<PartId>{0, 1, 2, 0}, 2), Error);
}

TEST(Quotient, CostSumEqualsCut) {
  std::mt19937_64 rng(11);
  for (const auto& raw : corpus()) {
    const Dag g(raw);
    for (int rep = 0; rep < 5; ++rep) {
      const PartId k = 1 + static_cast<PartId>(rng() % 3);
      std::vector<PartId> a(g.num_vertices());
      for (auto& x : a) x = static_cast<PartId>(rng() % static_cast<std::uint64_t>(k));
      const auto q = quotient_graph(g, a, k);
      Weight sum = 0;
      for (const Edge& e : q.edges) {
        EXPECT_NE(e.from, e.to);
        sum += e.cost;
      }
      EXPECT_EQ(sum, edge_cut(g, Partition(a, k)));
      EXPECT_EQ(sum, oracle::cut(raw, {a.begin(), a.end()}));
    }
  }
}

TEST(DagIo, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const Dag g(oracle::random_dag(rng, {2 + i % 7, 0.4, true}));
    const std::string text = write_dag_text(g);
    const Dag back = read_dag_text(text);
    EXPECT_EQ(back.raw().weights, g.raw().weights);
    EXPECT_EQ(back.raw().edges, g.raw().edges);
    EXPECT_EQ(write_dag_text(back), text);
  }
}

TEST(DagIo, CommentsAnywhere) {
  const Dag g = read_dag_text("% head\np adag 2 1\n% mid\nv 3\nv 4\n%x\ne 0 1 5\n% tail\n");
  EXPECT_EQ(g.total_weight(), 7);
  EXPECT_EQ(g.total_cost(), 5);
}

TEST(DagIo, ParseErrorsCarryLine) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_dag_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p dag 1 0\nv 1\n"), 1u);
  EXPECT_EQ(line_of("p adag 2 0\nv 1\nv x\n"), 3u);
  EXPECT_EQ(line_of("p adag 2 1\nv 1\nv 1\ne 0 1\n"), 4u);
  EXPECT_THROW(parse_dag_text("p adag 3 0\nv 1\n"), ParseError);
  EXPECT_THROW(parse_dag_text("p adag 1 0\nv 1\nv 1\n"), ParseError);
  EXPECT_THROW(read_dag_text("p adag 2 2\nv 1\nv 1\ne 0 1 1\ne 1 0 1\n"), DagError);
}

}  // namespace
}  // namespace acypart
