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

#include "acypart/preprocess.hpp"

namespace acypart {

namespace {

Weight weighted_sum(const boost::dynamic_bitset<>& set, const std::vector<Weight>& weights) {
  Weight sum = 0;
  for (auto h = set.find_first(); h != boost::dynamic_bitset<>::npos; h = set.find_next(h)) sum += weights[h];
  return sum;
}

}  // namespace

ReachMatrix compute_alpha(const Dag& g) {
  const std::size_t n = g.num_vertices();
  ReachMatrix rows(n, boost::dynamic_bitset<>(n));
  auto order = g.topo_order().order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& row = rows[static_cast<std::size_t>(*it)];
    for (std::size_t e : g.out_edges(*it)) {
      auto y = static_cast<std::size_t>(g.edge(e).to);
      row.set(y);
      row |= rows[y];
    }
  }
  return rows;
}

PreprocessTables::PreprocessTables(const Dag& g)
    : n_(g.num_vertices()), alpha_(compute_alpha(g)), weights_(g.weights().begin(), g.weights().end()) {
  ancestors_.assign(n_, boost::dynamic_bitset<>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (auto j = alpha_[i].find_first(); j != boost::dynamic_bitset<>::npos; j = alpha_[i].find_next(j)) {
      ancestors_[j].set(i);
    }
  }
  position_.resize(n_);
  for (std::size_t v = 0; v < n_; ++v) position_[v] = g.topo_order().position(static_cast<Vertex>(v));

  for (std::size_t i = 0; i < n_; ++i) {
    for (auto j = alpha_[i].find_first(); j != boost::dynamic_bitset<>::npos; j = alpha_[i].find_next(j)) {
      const boost::dynamic_bitset<> between = alpha_[i] & ancestors_[j];
      pairs_[pair_key(static_cast<Vertex>(i), static_cast<Vertex>(j))] =
          weights_[i] + weights_[j] + weighted_sum(between, weights_);
    }
  }
}

void PreprocessTables::compute_triples(const Dag& g) {
  (void)g;
  if (triples_ready_) return;
  std::vector<Vertex> by_position(n_);
  for (std::size_t v = 0; v < n_; ++v) by_position[position_[v]] = static_cast<Vertex>(v);

  for (std::size_t pi = 0; pi < n_; ++pi) {
    const auto i = static_cast<std::size_t>(by_position[pi]);
    for (auto j = alpha_[i].find_first(); j != boost::dynamic_bitset<>::npos; j = alpha_[i].find_next(j)) {
      const boost::dynamic_bitset<> ij = alpha_[i] & ancestors_[j];
      for (std::size_t pl = position_[j] + 1; pl < n_; ++pl) {
        const auto l = static_cast<std::size_t>(by_position[pl]);
        const bool chain = alpha_[j].test(l);
        const bool fork = alpha_[i].test(l);
        if (!chain && !fork) continue;
        boost::dynamic_bitset<> members = ij;
        if (chain) members |= alpha_[j] & ancestors_[l];
        if (fork) members |= alpha_[i] & ancestors_[l];
        members.reset(j);
        triples_[triple_key(static_cast<Vertex>(i), static_cast<Vertex>(j), static_cast<Vertex>(l))] =
            weights_[i] + weights_[j] + weights_[l] + weighted_sum(members, weights_);
      }
    }
  }
  triples_ready_ = true;
}

std::optional<Weight> PreprocessTables::pair_weight(Vertex i, Vertex j) const {
  auto it = pairs_.find(pair_key(i, j));
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

std::optional<Weight> PreprocessTables::triple_weight(Vertex i, Vertex j, Vertex l) const {
  auto it = triples_.find(triple_key(i, j, l));
  if (it == triples_.end()) return std::nullopt;
  return it->second;
}

}  // namespace acypart
