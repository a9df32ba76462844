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

#include "acypart/dag.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace acypart {

namespace {

std::string join_cycle(const std::vector<Vertex>& cycle) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cycle.size(); ++i) os << cycle[i] << " -> ";
  if (!cycle.empty()) os << cycle.front();
  return os.str();
}

std::vector<Vertex> reach_from(const Dag& g, Vertex u, bool forward) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> stack{u};
  std::vector<Vertex> out;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    auto incident = forward ? g.out_edges(x) : g.in_edges(x);
    for (std::size_t e : incident) {
      Vertex y = forward ? g.edge(e).to : g.edge(e).from;
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        out.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TopoOrder::TopoOrder(std::vector<Vertex> order) : order_(std::move(order)), position_(order_.size()) {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    auto v = static_cast<std::size_t>(order_[i]);
    if (v >= order_.size()) throw Error("TopoOrder: vertex id out of range");
    position_[v] = i;
  }
}

bool TopoOrder::respects(std::span<const Edge> edges) const {
  return std::all_of(edges.begin(), edges.end(),
                     [&](const Edge& e) { return position(e.from) < position(e.to); });
}

std::optional<std::vector<Vertex>> find_directed_cycle(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<Vertex>> out(n);
  for (const Edge& e : edges) out[static_cast<std::size_t>(e.from)].push_back(e.to);

  // Iterative three-colour DFS; the grey stack is the current path.
  std::vector<char> colour(n, 0);
  std::vector<Vertex> path;
  std::vector<std::size_t> next_child;
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    path.assign(1, static_cast<Vertex>(root));
    next_child.assign(1, 0);
    colour[root] = 1;
    while (!path.empty()) {
      auto x = static_cast<std::size_t>(path.back());
      if (next_child.back() < out[x].size()) {
        Vertex y = out[x][next_child.back()++];
        auto yi = static_cast<std::size_t>(y);
        if (colour[yi] == 1) {
          auto it = std::find(path.begin(), path.end(), y);
          return std::vector<Vertex>(it, path.end());
        }
        if (colour[yi] == 0) {
          colour[yi] = 1;
          path.push_back(y);
          next_child.push_back(0);
        }
      } else {
        colour[x] = 2;
        path.pop_back();
        next_child.pop_back();
      }
    }
  }
  return std::nullopt;
}

TopoOrder validate_dag(const RawGraph& raw) {
  const std::size_t n = raw.num_vertices();
  for (std::size_t v = 0; v < n; ++v) {
    if (raw.weights[v] < 0) {
      throw DagError(DagError::Kind::NegativeValue, "vertex " + std::to_string(v) + " has negative weight");
    }
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<Vertex>> out(n);
  for (const Edge& e : raw.edges) {
    if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= n || static_cast<std::size_t>(e.to) >= n) {
      throw DagError(DagError::Kind::VertexOutOfRange,
                     "edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ") references a missing vertex");
    }
    if (e.from == e.to) {
      throw DagError(DagError::Kind::SelfLoop, "self-loop at vertex " + std::to_string(e.from));
    }
    if (e.cost < 0) {
      throw DagError(DagError::Kind::NegativeValue,
                     "edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ") has negative cost");
    }
    if (!seen.emplace(e.from, e.to).second) {
      throw DagError(DagError::Kind::DuplicateEdge,
                     "duplicate edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ")");
    }
    ++indegree[static_cast<std::size_t>(e.to)];
    out[static_cast<std::size_t>(e.from)].push_back(e.to);
  }

  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(static_cast<Vertex>(v));
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex x = ready.top();
    ready.pop();
    order.push_back(x);
    for (Vertex y : out[static_cast<std::size_t>(x)]) {
      if (--indegree[static_cast<std::size_t>(y)] == 0) ready.push(y);
    }
  }
  if (order.size() != n) {
    auto cycle = find_directed_cycle(n, raw.edges).value_or(std::vector<Vertex>{});
    throw DagError(DagError::Kind::CycleDetected, "cycle detected: " + join_cycle(cycle), cycle);
  }
  return TopoOrder(std::move(order));
}

Dag::Dag(RawGraph raw) : weights_(std::move(raw.weights)), edges_(std::move(raw.edges)) {
  order_ = validate_dag(RawGraph{weights_, edges_});
  out_.resize(weights_.size());
  in_.resize(weights_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[static_cast<std::size_t>(edges_[e].from)].push_back(e);
    in_[static_cast<std::size_t>(edges_[e].to)].push_back(e);
    total_cost_ += edges_[e].cost;
  }
  for (Weight w : weights_) total_weight_ += w;
}

std::vector<Vertex> Dag::successors(Vertex v) const {
  std::vector<Vertex> out;
  for (std::size_t e : out_edges(v)) out.push_back(edges_[e].to);
  return out;
}

std::vector<Vertex> Dag::predecessors(Vertex v) const {
  std::vector<Vertex> out;
  for (std::size_t e : in_edges(v)) out.push_back(edges_[e].from);
  return out;
}

std::optional<std::size_t> Dag::find_edge(Vertex u, Vertex v) const {
  for (std::size_t e : out_edges(u)) {
    if (edges_[e].to == v) return e;
  }
  return std::nullopt;
}

std::vector<Vertex> descendants(const Dag& g, Vertex u) {
  if (u < 0 || static_cast<std::size_t>(u) >= g.num_vertices()) throw Error("descendants: vertex out of range");
  return reach_from(g, u, true);
}

std::vector<Vertex> ancestors(const Dag& g, Vertex u) {
  if (u < 0 || static_cast<std::size_t>(u) >= g.num_vertices()) throw Error("ancestors: vertex out of range");
  return reach_from(g, u, false);
}

Reachability::Reachability(const Dag& g, std::size_t matrix_cap) : g_(&g), n_(g.num_vertices()) {
  if (n_ == 0 || n_ > matrix_cap) return;
  rows_.assign(n_, boost::dynamic_bitset<>(n_));
  auto order = g.topo_order().order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& row = rows_[static_cast<std::size_t>(*it)];
    for (std::size_t e : g.out_edges(*it)) {
      Vertex y = g.edge(e).to;
      row.set(static_cast<std::size_t>(y));
      row |= rows_[static_cast<std::size_t>(y)];
    }
  }
}

bool Reachability::reaches(Vertex u, Vertex v) const {
  if (!rows_.empty()) return rows_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
  if (u == v) return false;
  // Only vertices positioned before v can lie on a path to it.
  const auto& order = g_->topo_order();
  const std::size_t limit = order.position(v);
  if (order.position(u) >= limit) return false;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{u};
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (std::size_t e : g_->out_edges(x)) {
      Vertex y = g_->edge(e).to;
      if (y == v) return true;
      auto yi = static_cast<std::size_t>(y);
      if (!seen[yi] && order.position(y) < limit) {
        seen[yi] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

std::vector<Vertex> path_nodes(const Reachability& reach, std::size_t n, Vertex u, Vertex v) {
  std::vector<Vertex> out;
  if (u == v || !reach.reaches(u, v)) return out;
  for (std::size_t h = 0; h < n; ++h) {
    auto hv = static_cast<Vertex>(h);
    if (hv != u && hv != v && reach.reaches(u, hv) && reach.reaches(hv, v)) out.push_back(hv);
  }
  return out;
}

std::vector<Vertex> path_nodes(const Dag& g, Vertex u, Vertex v) {
  if (u == v) return {};
  auto down = descendants(g, u);
  auto up = ancestors(g, v);
  std::vector<Vertex> out;
  std::set_intersection(down.begin(), down.end(), up.begin(), up.end(), std::back_inserter(out));
  return out;
}

std::optional<std::vector<PartId>> QuotientGraph::find_cycle() const {
  return find_directed_cycle(static_cast<std::size_t>(num_parts), edges);
}

bool QuotientGraph::has_edge(PartId s, PartId t) const {
  return std::binary_search(edges.begin(), edges.end(), Edge{s, t, 0},
                            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
}

QuotientGraph quotient_graph(const Dag& g, std::span<const PartId> assignment, PartId k) {
  if (assignment.size() != g.num_vertices()) {
    throw PartitionArityMismatch("partition covers " + std::to_string(assignment.size()) + " vertices, graph has " +
                                 std::to_string(g.num_vertices()));
  }
  QuotientGraph q;
  q.num_parts = k;
  q.part_weights.assign(static_cast<std::size_t>(std::max<PartId>(k, 0)), 0);
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] < 0 || assignment[v] >= k) {
      throw Error("vertex " + std::to_string(v) + " has part id " + std::to_string(assignment[v]) + " outside [0," +
                  std::to_string(k) + ")");
    }
    q.part_weights[static_cast<std::size_t>(assignment[v])] += g.weight(static_cast<Vertex>(v));
  }
  std::map<std::pair<PartId, PartId>, Weight> crossing;
  for (const Edge& e : g.edges()) {
    PartId s = assignment[static_cast<std::size_t>(e.from)];
    PartId t = assignment[static_cast<std::size_t>(e.to)];
    if (s != t) crossing[{s, t}] += e.cost;
  }
  q.edges.reserve(crossing.size());
  for (const auto& [key, cost] : crossing) q.edges.push_back(Edge{key.first, key.second, cost});
  return q;
}

}  // namespace acypart
