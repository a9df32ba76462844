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

// Reference implementations for tests. They share no code with the library
// beyond the plain RawGraph/Rational types: paths are enumerated explicitly,
// quotient acyclicity uses a transitive closure, and the balance bound is
// recomputed from integer arithmetic.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "acypart/dag.hpp"
#include "acypart/types.hpp"

namespace acypart::oracle {

/// Unit-weight, unit-cost DAGs on n vertices, one per isomorphism class.
/// Every member has only edges i -> j with i < j.
std::vector<RawGraph> nonisomorphic_dags(int n);

struct RandomDagSpec {
  int n = 5;
  double edge_probability = 0.4;
  // Weights and costs 1 + floor(sqrt(u)), u uniform in [0, 99], instead of 1.
  bool skewed = false;
};

/// Random DAG with vertex ids shuffled so that id order is not topological.
RawGraph random_dag(std::mt19937_64& rng, const RandomDagSpec& spec);

RawGraph chain(int n, std::int64_t cost = 1);
RawGraph diamond();

/// Every simple directed u -> v path, as vertex sequences.
std::vector<std::vector<Vertex>> simple_paths(const RawGraph& g, Vertex u, Vertex v);
bool reaches(const RawGraph& g, Vertex u, Vertex v);
/// Interior vertices of all u -> v paths.
std::set<Vertex> interior(const RawGraph& g, Vertex u, Vertex v);

Weight bound(Weight total, int k, const Rational& eps);
bool acyclic_quotient(const RawGraph& g, const std::vector<int>& part, int k);
bool balanced(const RawGraph& g, const std::vector<int>& part, int k, const Rational& eps);
Weight cut(const RawGraph& g, const std::vector<int>& part);

struct Optimum {
  bool feasible = false;
  Weight cut = 0;
};

/// Exhaustive minimum over balanced acyclic assignments; when `qubits` is
/// given, each part may touch at most `max_qubits` distinct qubits.
Optimum optimum(const RawGraph& g, int k, const Rational& eps,
                const std::vector<std::vector<std::size_t>>* qubits = nullptr, std::size_t max_qubits = 0);

/// Minimum over balanced assignments, acyclicity ignored.
Optimum undirected_optimum(const RawGraph& g, int k, const Rational& eps);

/// Calls fn(part) for each of the k^n assignments.
template <typename Fn>
void for_each_assignment(int n, int k, Fn&& fn) {
  std::vector<int> part(static_cast<std::size_t>(n), 0);
  for (;;) {
    fn(part);
    int v = n;
    while (v > 0 && part[static_cast<std::size_t>(v - 1)] == k - 1) part[static_cast<std::size_t>(--v)] = 0;
    if (v == 0) return;
    ++part[static_cast<std::size_t>(v - 1)];
  }
}

std::string describe(const RawGraph& g);

}  // namespace acypart::oracle
