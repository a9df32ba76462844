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

// Multilevel pipeline: acyclicity-safe edge contraction, exact initial
// partitioning of the coarsest graph, then projection with warm-started
// branch-and-bound refinement at every finer level.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acypart/dag.hpp"
#include "acypart/exact.hpp"
#include "acypart/partition.hpp"

namespace acypart {

struct CoarseningLevel {
  Dag graph;
  // Vertex of the previous level (the input graph for the first level) ->
  // vertex of this level.
  std::vector<Vertex> mapping;
  // Topological order maintained through the contractions.
  TopoOrder order;
  // Contracted edge, in the previous level's ids.
  Edge contracted;
};

struct CoarsenStats {
  std::size_t contractions = 0;
  // Candidates whose safety followed from the maintained order alone.
  std::size_t checks_skipped = 0;
  // Candidates that needed a reachability search.
  std::size_t checks_run = 0;
  std::size_t rejected_unsafe = 0;
  std::size_t rejected_weight = 0;
};

struct Coarsening {
  std::vector<CoarseningLevel> levels;
  CoarsenStats stats;

  const Dag& coarsest(const Dag& input) const { return levels.empty() ? input : levels.back().graph; }
};

/// One contraction per level until at most target_n vertices remain or no
/// edge is safe. Candidates are tried by cost descending, then (from, to).
/// An edge (u, v) is safe when v is unreachable from u without it. With
/// max_vertex_weight set, merges producing heavier vertices are skipped.
/// Throws Error for target_n < 2.
Coarsening coarsen(const Dag& g, std::size_t target_n, std::optional<Weight> max_vertex_weight = std::nullopt);

class MultilevelError : public Error {
 public:
  enum class Kind { Infeasible, InvalidProjection, SolverFailed };

  MultilevelError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

enum class InitialMode { Exact, EmitLP };

// Receives LP text, returns solution text in the ingestion format.
using ExternalSolver = std::function<std::string(const std::string& lp_text)>;

/// Exact: branch_and_bound within `budget`. EmitLP: the proposed model is
/// written as LP, handed to `solver`, and the returned solution is evaluated
/// and decoded. Throws MultilevelError(Infeasible) when no feasible
/// partition exists or none was found.
Partition initial_partition(const Dag& coarsest, PartId k, const Rational& eps, InitialMode mode,
                            const ExternalSolver& solver = {}, const SolveBudget& budget = {});

struct LevelReport {
  std::size_t num_vertices = 0;
  Weight projected_cut = 0;
  Weight refined_cut = 0;
  SolveStatus status = SolveStatus::Optimal;
};

struct RefineResult {
  Partition partition;
  Weight cut = 0;
  // Finest level last.
  std::vector<LevelReport> levels;
};

inline constexpr std::uint64_t kDefaultRefineNodes = 10000;

/// Projects a partition of the coarsest graph back to `input` and refines
/// each level with branch_and_bound warm-started from the projection.
/// Throws MultilevelError(InvalidProjection) for inconsistent mappings.
RefineResult uncoarsen_refine(const Dag& input, const Coarsening& coarsening, const Partition& coarse, PartId k,
                              const Rational& eps, const SolveBudget& per_level = {kDefaultRefineNodes, std::nullopt});

struct MultilevelOptions {
  std::size_t target_n = 8;
  SolveBudget refine_budget{kDefaultRefineNodes, std::nullopt};
  SolveBudget initial_budget;
  InitialMode mode = InitialMode::Exact;
  ExternalSolver solver;
  // Cap merged vertex weight at the balance bound.
  bool cap_vertex_weight = true;
};

struct MultilevelResult {
  Coarsening coarsening;
  Partition initial;
  RefineResult refined;
};

MultilevelResult multilevel_partition(const Dag& g, PartId k, const Rational& eps, const MultilevelOptions& options = {});

}  // namespace acypart
