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

#pragma once

#include <string>
#include <vector>

#include "acypart/dag.hpp"
#include "acypart/types.hpp"

namespace acypart {

// Vertex -> part id in [0, k). Empty parts are allowed.
struct Partition {
  std::vector<PartId> assignment;
  PartId k = 0;

  Partition() = default;
  Partition(std::vector<PartId> parts, PartId num_parts);

  std::size_t size() const { return assignment.size(); }
  PartId operator[](std::size_t v) const { return assignment[v]; }
  PartId part_of(Vertex v) const { return assignment[static_cast<std::size_t>(v)]; }

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// B = floor((1 + eps) * ceil(W / k)), computed exactly. W is the total
/// vertex weight.
Weight balance_bound(Weight total_weight, PartId k, const Rational& eps);
Weight balance_bound(const Dag& g, PartId k, const Rational& eps);

Weight edge_cut(const Dag& g, const Partition& p);
std::vector<Weight> part_weights(const Dag& g, const Partition& p);

QuotientGraph quotient_graph(const Dag& g, const Partition& p);

bool is_acyclic_partition(const Dag& g, const Partition& p);

/// True when every edge (u, v) has part(u) <= part(v). Implies acyclicity.
bool is_topologically_numbered(const Dag& g, const Partition& p);

/// Relabels the parts of an acyclic partition along the smallest-id-first
/// topological order of its quotient graph. Throws Error if cyclic.
Partition renumber_topologically(const Dag& g, const Partition& p);

/// Relabels parts by non-increasing member count, ties by old id.
Partition renumber_by_size(const Partition& p);

struct ValidationReport {
  Weight cut = 0;
  std::vector<Weight> part_weights;
  Weight bound = 0;
  bool balanced = false;
  bool acyclic = false;
  std::vector<std::string> violations;

  bool feasible() const { return balanced && acyclic && violations.empty(); }
};

/// Checks a partition against the balance bound for (k, eps) and quotient
/// acyclicity. Never throws for malformed partitions; problems are listed in
/// `violations` (at most one quotient cycle is reported).
ValidationReport validate(const Dag& g, const Partition& p, PartId k, const Rational& eps);

}  // namespace acypart
