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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "acypart/types.hpp"

namespace acypart {

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  Weight cost = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Unvalidated vertex/edge lists, as read from a file or built by hand.
struct RawGraph {
  std::vector<Weight> weights;
  std::vector<Edge> edges;

  std::size_t num_vertices() const { return weights.size(); }
};

class DagError : public Error {
 public:
  enum class Kind { CycleDetected, DuplicateEdge, SelfLoop, VertexOutOfRange, NegativeValue };

  DagError(Kind kind, const std::string& what, std::vector<Vertex> cycle = {})
      : Error(what), kind_(kind), cycle_(std::move(cycle)) {}

  Kind kind() const noexcept { return kind_; }
  // For CycleDetected: v0, v1, ..., v_{l-1} with edges v_i -> v_{i+1} and
  // v_{l-1} -> v0.
  const std::vector<Vertex>& cycle() const noexcept { return cycle_; }

 private:
  Kind kind_;
  std::vector<Vertex> cycle_;
};

// A permutation of the vertices in which every edge points forward.
class TopoOrder {
 public:
  TopoOrder() = default;
  explicit TopoOrder(std::vector<Vertex> order);

  std::span<const Vertex> order() const { return order_; }
  std::size_t position(Vertex v) const { return position_[static_cast<std::size_t>(v)]; }
  Vertex at(std::size_t pos) const { return order_[pos]; }
  std::size_t size() const { return order_.size(); }

  bool respects(std::span<const Edge> edges) const;

 private:
  std::vector<Vertex> order_;
  std::vector<std::size_t> position_;
};

/// Returns one directed cycle of the graph on vertices 0..n-1, if any.
std::optional<std::vector<Vertex>> find_directed_cycle(std::size_t n, std::span<const Edge> edges);

/// Checks range, self-loops, parallel edges, non-negative values and
/// acyclicity. The order is Kahn's algorithm with the smallest ready vertex id
/// taken first, so it is unique for a given input.
TopoOrder validate_dag(const RawGraph& raw);

// Immutable weighted DAG. Construction runs validate_dag.
class Dag {
 public:
  Dag() = default;
  explicit Dag(RawGraph raw);

  std::size_t num_vertices() const { return weights_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  Weight weight(Vertex v) const { return weights_[static_cast<std::size_t>(v)]; }
  std::span<const Weight> weights() const { return weights_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  // Edge indices leaving / entering v.
  std::span<const std::size_t> out_edges(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const std::size_t> in_edges(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }

  std::vector<Vertex> successors(Vertex v) const;
  std::vector<Vertex> predecessors(Vertex v) const;
  std::optional<std::size_t> find_edge(Vertex u, Vertex v) const;

  Weight total_weight() const { return total_weight_; }
  Weight total_cost() const { return total_cost_; }
  const TopoOrder& topo_order() const { return order_; }

  RawGraph raw() const { return RawGraph{weights_, edges_}; }

 private:
  std::vector<Weight> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  TopoOrder order_;
  Weight total_weight_ = 0;
  Weight total_cost_ = 0;
};

/// All v with a path u ~> v, excluding u; sorted ascending.
std::vector<Vertex> descendants(const Dag& g, Vertex u);
/// All v with a path v ~> u, excluding u; sorted ascending.
std::vector<Vertex> ancestors(const Dag& g, Vertex u);

inline constexpr std::size_t kDefaultReachMatrixCap = 2048;

// Strict reachability queries. Up to `matrix_cap` vertices the closure is
// materialized as one bitset row per vertex; above it each query runs a DFS.
class Reachability {
 public:
  explicit Reachability(const Dag& g, std::size_t matrix_cap = kDefaultReachMatrixCap);

  bool reaches(Vertex u, Vertex v) const;
  bool has_matrix() const { return !rows_.empty() || n_ == 0; }
  // Requires has_matrix().
  const boost::dynamic_bitset<>& descendants_row(Vertex u) const { return rows_[static_cast<std::size_t>(u)]; }

 private:
  const Dag* g_;
  std::size_t n_;
  std::vector<boost::dynamic_bitset<>> rows_;
};

/// N_u^v: vertices on some u ~> v path, endpoints excluded; sorted.
std::vector<Vertex> path_nodes(const Dag& g, Vertex u, Vertex v);
std::vector<Vertex> path_nodes(const Reachability& reach, std::size_t n, Vertex u, Vertex v);

// Graph obtained by contracting each part; may contain cycles.
struct QuotientGraph {
  PartId num_parts = 0;
  std::vector<Weight> part_weights;
  // Sorted by (from, to); endpoints are part ids; no self-edges.
  std::vector<Edge> edges;

  std::optional<std::vector<PartId>> find_cycle() const;
  bool has_edge(PartId s, PartId t) const;
};

class PartitionArityMismatch : public Error {
 public:
  using Error::Error;
};

/// Throws PartitionArityMismatch when `assignment` does not cover exactly the
/// vertices of g, or Error when a part id lies outside [0, k).
QuotientGraph quotient_graph(const Dag& g, std::span<const PartId> assignment, PartId k);

}  // namespace acypart
