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

#include <random>

#include "acypart/preprocess.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace acypart {
namespace {

using testutil::chain;
using testutil::diamond;

std::size_t ones(const ReachMatrix& m) {
  std::size_t c = 0;
  for (const auto& row : m) c += row.count();
  return c;
}

// Union of vertices on any simple path, from explicit enumeration.
Weight path_weight(const RawGraph& g, Vertex i, Vertex j) {
  std::set<Vertex> on;
  for (const auto& path : oracle::simple_paths(g, i, j)) on.insert(path.begin(), path.end());
  Weight w = 0;
  for (Vertex v : on) w += g.weights[static_cast<std::size_t>(v)];
  return w;
}

Weight triple_weight(const RawGraph& g, Vertex i, Vertex j, Vertex l) {
  std::set<Vertex> on{i, j, l};
  for (auto [a, b] : {std::pair{i, j}, std::pair{j, l}, std::pair{i, l}}) {
    for (Vertex h : oracle::interior(g, a, b)) on.insert(h);
  }
  Weight w = 0;
  for (Vertex v : on) w += g.weights[static_cast<std::size_t>(v)];
  return w;
}

TEST(Alpha, Examples) {
  const auto a = compute_alpha(chain(3));
  EXPECT_TRUE(a[0].test(2));
  EXPECT_FALSE(a[2].test(0));
  EXPECT_EQ(ones(compute_alpha(Dag(RawGraph{{1, 1, 1}, {}}))), 0u);
  const auto d = compute_alpha(diamond());
  EXPECT_EQ(ones(d), 5u);
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}) EXPECT_TRUE(d[i].test(j));
}

TEST(PairWeight, Examples) {
  EXPECT_EQ(PreprocessTables(chain(3)).pair_weight(0, 2), 3);
  EXPECT_EQ(PreprocessTables(chain(3)).pair_weight(0, 1), 2);
  EXPECT_EQ(PreprocessTables(diamond()).pair_weight(0, 3), 4);
  EXPECT_FALSE(PreprocessTables(diamond()).pair_weight(1, 2));
  EXPECT_FALSE(PreprocessTables(diamond()).pair_weight(3, 0));
}

TEST(TripleWeight, Examples) {
  PreprocessTables t3(chain(3));
  EXPECT_FALSE(t3.has_triples());
  t3.compute_triples(chain(3));
  EXPECT_TRUE(t3.has_triples());
  EXPECT_EQ(t3.triple_weight(0, 1, 2), 3);

  PreprocessTables t5(chain(5));
  t5.compute_triples(chain(5));
  EXPECT_EQ(t5.triple_weight(0, 2, 4), 5);

  // i -> j -> l with weights 2, 3, 5 and nothing else.
  const Dag g(RawGraph{{2, 3, 5}, {{0, 1, 1}, {1, 2, 1}}});
  PreprocessTables t(g);
  t.compute_triples(g);
  EXPECT_EQ(t.triple_weight(0, 1, 2), 10);
}

TEST(TripleWeight, ForkTriplesMaterialized) {
  // 0 -> 1, 0 -> 2 with 1 and 2 unrelated.
  const Dag g(RawGraph{{1, 2, 4}, {{0, 1, 1}, {0, 2, 1}}});
  PreprocessTables t(g);
  t.compute_triples(g);
  EXPECT_EQ(t.triple_weight(0, 1, 2), 7);
}

TEST(Tables, MatchBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 120; ++it) {
    const RawGraph raw = oracle::random_dag(rng, {2 + it % 7, 0.3 + 0.05 * (it % 5), true});
    const Dag g(raw);
    PreprocessTables t(g);
    t.compute_triples(g);
    const auto n = static_cast<Vertex>(g.num_vertices());
    std::size_t pairs = 0;
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) {
        const bool r = oracle::reaches(raw, i, j);
        ASSERT_EQ(t.alpha(i, j), r);
        if (!r) {
          ASSERT_FALSE(t.pair_weight(i, j));
          continue;
        }
        ++pairs;
        ASSERT_EQ(t.pair_weight(i, j), path_weight(raw, i, j)) << oracle::describe(raw);
      }
    }
    EXPECT_EQ(t.num_pairs(), pairs);
    EXPECT_EQ(ones(t.alpha_matrix()), pairs);
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) {
        for (Vertex l = 0; l < n; ++l) {
          if (i == j || j == l || i == l) continue;
          const bool chained = oracle::reaches(raw, i, j) && oracle::reaches(raw, j, l);
          if (chained) ASSERT_EQ(t.triple_weight(i, j, l), triple_weight(raw, i, j, l)) << oracle::describe(raw);
        }
      }
    }
  }
}

TEST(Tables, AddingAnEdgeNeverDecreasesPairWeight) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 150; ++it) {
    RawGraph raw = oracle::random_dag(rng, {3 + it % 6, 0.3, true});
    const Dag g(raw);
    const PreprocessTables before(g);
    // Add a forward edge in topological order that is not yet present.
    const auto order = g.topo_order().order();
    const std::size_t n = order.size();
    const std::size_t a = rng() % (n - 1);
    const std::size_t b = a + 1 + rng() % (n - 1 - a);
    const Vertex u = order[a];
    const Vertex v = order[b];
    if (g.find_edge(u, v)) continue;
    raw.edges.push_back({u, v, 1});
    const Dag h(raw);
    const PreprocessTables after(h);
    for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
      for (Vertex j = 0; j < static_cast<Vertex>(n); ++j) {
        if (const auto w = before.pair_weight(i, j)) {
          ASSERT_TRUE(after.pair_weight(i, j));
          ASSERT_GE(*after.pair_weight(i, j), *w);
        }
      }
    }
  }
}

}  // namespace
}  // namespace acypart
