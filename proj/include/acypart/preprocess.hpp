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

// Reachability-derived weight tables used by the Albareda-Sambola family of
// formulations:
//
//   alpha(i, j)       i ~> j
//   A(i, j)           w_i + w_j + sum of w_h over h in N_i^j, defined when i ~> j
//   A'(i, j, l)       w_i + w_j + w_l + sum of w_h over (N_i^j u N_j^l u N_i^l) \ {j}
//
// Triples are indexed by topological position: i before j before l. A' is
// materialized for chains (i ~> j ~> l) and for forks (i ~> j, i ~> l with j
// and l unrelated); the fork case feeds the replacement acyclicity family of
// the final Albareda variant.

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "acypart/dag.hpp"

namespace acypart {

// alpha[i][j] == 1 iff i ~> j.
using ReachMatrix = std::vector<boost::dynamic_bitset<>>;

ReachMatrix compute_alpha(const Dag& g);

class PreprocessTables {
 public:
  PreprocessTables() = default;

  /// Computes alpha and A. A' is left empty until compute_triples().
  explicit PreprocessTables(const Dag& g);

  /// Materializes A'. O(n^3 * n / 64); only needed by the extended and final
  /// Albareda variants.
  void compute_triples(const Dag& g);

  bool has_triples() const { return triples_ready_; }
  std::size_t num_vertices() const { return n_; }

  bool alpha(Vertex i, Vertex j) const { return alpha_[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j)); }
  // Either direction.
  bool comparable(Vertex i, Vertex j) const { return alpha(i, j) || alpha(j, i); }

  std::optional<Weight> pair_weight(Vertex i, Vertex j) const;
  std::optional<Weight> triple_weight(Vertex i, Vertex j, Vertex l) const;

  std::size_t num_pairs() const { return pairs_.size(); }
  std::size_t num_triples() const { return triples_.size(); }

  const ReachMatrix& alpha_matrix() const { return alpha_; }
  // Topological position used for the i < j < l convention.
  std::size_t position(Vertex v) const { return position_[static_cast<std::size_t>(v)]; }

 private:
  std::uint64_t pair_key(Vertex i, Vertex j) const {
    return static_cast<std::uint64_t>(i) * n_ + static_cast<std::uint64_t>(j);
  }
  std::uint64_t triple_key(Vertex i, Vertex j, Vertex l) const { return pair_key(i, j) * n_ + static_cast<std::uint64_t>(l); }

  std::size_t n_ = 0;
  ReachMatrix alpha_;
  ReachMatrix ancestors_;
  std::vector<Weight> weights_;
  std::vector<std::size_t> position_;
  std::unordered_map<std::uint64_t, Weight> pairs_;
  std::unordered_map<std::uint64_t, Weight> triples_;
  bool triples_ready_ = false;
};

}  // namespace acypart
