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

// Exact combinatorial solvers for balanced acyclic k-way partitioning.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "acypart/dag.hpp"
#include "acypart/partition.hpp"
#include "acypart/qubit_matrix.hpp"

namespace acypart {

// Every part may touch at most max_qubits distinct qubits.
struct QubitConstraint {
  const QubitMatrix* matrix = nullptr;
  std::size_t max_qubits = 0;
};

enum class SolveStatus { Optimal, Infeasible, Stopped };
std::string_view status_name(SolveStatus status);

struct Solution {
  Partition partition;
  Weight cut = 0;
};

struct SolveBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_time;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Solution> best;
  std::uint64_t nodes_explored = 0;
  // Lower bound on the optimum at termination; equals best->cut when Optimal.
  Weight proven_bound = 0;
  // Cut of every incumbent in installation order (warm start first).
  std::vector<Weight> incumbent_history;
};

class SolverError : public Error {
 public:
  enum class Kind { TooLarge, InvalidWarmStart };

  SolverError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline constexpr double kDefaultBruteForceLog2Limit = 24.0;

bool satisfies_qubit_constraint(const Partition& p, const QubitConstraint& qc);

/// Enumerates all k^n assignments in lexicographic order (vertex 0 most
/// significant) and keeps the first one of minimum cut among those that are
/// balanced, acyclic and (optionally) within qubit capacity. Throws
/// SolverError(TooLarge) when n * log2(k) exceeds `log2_limit`.
SolveResult brute_force(const Dag& g, PartId k, const Rational& eps, std::optional<QubitConstraint> qubits = std::nullopt,
                        double log2_limit = kDefaultBruteForceLog2Limit);

/// Depth-first search over vertices in topological order; a vertex takes a
/// part id no smaller than the largest part id among its predecessors, so
/// every acyclic partition is reached in its topologically numbered form.
/// Prunes on balance, qubit capacity and cut + forced-cut >= incumbent. A warm
/// start must be feasible (else SolverError(InvalidWarmStart)) and becomes the
/// first incumbent; later incumbents are strictly better.
SolveResult branch_and_bound(const Dag& g, PartId k, const Rational& eps, const Partition* warm = nullptr,
                             const SolveBudget& budget = {}, std::optional<QubitConstraint> qubits = std::nullopt);

}  // namespace acypart
