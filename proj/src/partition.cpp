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

#include "acypart/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace acypart {

Partition::Partition(std::vector<PartId> parts, PartId num_parts) : assignment(std::move(parts)), k(num_parts) {
  if (k < 1) throw Error("partition needs k >= 1");
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] < 0 || assignment[v] >= k) {
      throw Error("vertex " + std::to_string(v) + " has part id " + std::to_string(assignment[v]) +
                  " outside [0," + std::to_string(k) + ")");
    }
  }
}

Weight balance_bound(Weight total_weight, PartId k, const Rational& eps) {
  if (k < 1) throw Error("balance_bound: k must be >= 1");
  if (eps < 0) throw Error("balance_bound: eps must be >= 0");
  const Weight per_part = ceil_div(total_weight, k);
  const Rational scaled = (Rational(1) + eps) * per_part;
  return floor_div(scaled.numerator(), scaled.denominator());
}

Weight balance_bound(const Dag& g, PartId k, const Rational& eps) { return balance_bound(g.total_weight(), k, eps); }

Weight edge_cut(const Dag& g, const Partition& p) {
  Weight cut = 0;
  for (const Edge& e : g.edges()) {
    if (p.part_of(e.from) != p.part_of(e.to)) cut += e.cost;
  }
  return cut;
}

std::vector<Weight> part_weights(const Dag& g, const Partition& p) {
  std::vector<Weight> out(static_cast<std::size_t>(p.k), 0);
  for (std::size_t v = 0; v < p.size(); ++v) out[static_cast<std::size_t>(p[v])] += g.weight(static_cast<Vertex>(v));
  return out;
}

QuotientGraph quotient_graph(const Dag& g, const Partition& p) { return quotient_graph(g, p.assignment, p.k); }

bool is_acyclic_partition(const Dag& g, const Partition& p) { return !quotient_graph(g, p).find_cycle().has_value(); }

bool is_topologically_numbered(const Dag& g, const Partition& p) {
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return p.part_of(e.from) <= p.part_of(e.to); });
}

Partition renumber_topologically(const Dag& g, const Partition& p) {
  const QuotientGraph q = quotient_graph(g, p);
  const auto k = static_cast<std::size_t>(p.k);
  std::vector<std::size_t> indegree(k, 0);
  std::vector<std::vector<PartId>> out(k);
  for (const Edge& e : q.edges) {
    ++indegree[static_cast<std::size_t>(e.to)];
    out[static_cast<std::size_t>(e.from)].push_back(e.to);
  }
  std::vector<char> used(k, 0);
  for (PartId s : p.assignment) used[static_cast<std::size_t>(s)] = 1;

  // Non-empty parts first in topological order, then the empty ones.
  std::priority_queue<PartId, std::vector<PartId>, std::greater<>> ready;
  for (std::size_t s = 0; s < k; ++s) {
    if (used[s] && indegree[s] == 0) ready.push(static_cast<PartId>(s));
  }
  std::vector<PartId> relabel(k, -1);
  PartId next = 0;
  while (!ready.empty()) {
    PartId s = ready.top();
    ready.pop();
    relabel[static_cast<std::size_t>(s)] = next++;
    for (PartId t : out[static_cast<std::size_t>(s)]) {
      if (--indegree[static_cast<std::size_t>(t)] == 0) ready.push(t);
    }
  }
  const auto nonempty = static_cast<PartId>(std::count(used.begin(), used.end(), 1));
  if (next != nonempty) throw Error("renumber_topologically: quotient graph is cyclic");
  for (std::size_t s = 0; s < k; ++s) {
    if (!used[s]) relabel[s] = next++;
  }
  Partition result = p;
  for (auto& s : result.assignment) s = relabel[static_cast<std::size_t>(s)];
  return result;
}

Partition renumber_by_size(const Partition& p) {
  const auto k = static_cast<std::size_t>(p.k);
  std::vector<std::size_t> count(k, 0);
  for (PartId s : p.assignment) ++count[static_cast<std::size_t>(s)];
  std::vector<PartId> ids(k);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](PartId a, PartId b) {
    return count[static_cast<std::size_t>(a)] > count[static_cast<std::size_t>(b)];
  });
  std::vector<PartId> relabel(k);
  for (std::size_t i = 0; i < k; ++i) relabel[static_cast<std::size_t>(ids[i])] = static_cast<PartId>(i);
  Partition result = p;
  for (auto& s : result.assignment) s = relabel[static_cast<std::size_t>(s)];
  return result;
}

ValidationReport validate(const Dag& g, const Partition& p, PartId k, const Rational& eps) {
  ValidationReport report;
  if (k < 1) {
    report.violations.push_back("k must be >= 1");
    return report;
  }
  report.bound = balance_bound(g, k, eps);
  if (p.size() != g.num_vertices()) {
    report.violations.push_back("partition covers " + std::to_string(p.size()) + " vertices, graph has " +
                                std::to_string(g.num_vertices()));
    return report;
  }
  bool ids_ok = true;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (p[v] < 0 || p[v] >= k) {
      report.violations.push_back("vertex " + std::to_string(v) + " has part id " + std::to_string(p[v]) +
                                  " outside [0," + std::to_string(k) + ")");
      ids_ok = false;
    }
  }
  if (!ids_ok) return report;

  const QuotientGraph q = quotient_graph(g, p.assignment, k);
  report.part_weights = q.part_weights;
  for (const Edge& e : q.edges) report.cut += e.cost;

  report.balanced = true;
  for (std::size_t s = 0; s < q.part_weights.size(); ++s) {
    if (q.part_weights[s] > report.bound) {
      report.balanced = false;
      report.violations.push_back("part " + std::to_string(s) + " has weight " + std::to_string(q.part_weights[s]) +
                                  " > bound " + std::to_string(report.bound));
    }
  }

  if (auto cycle = q.find_cycle()) {
    report.acyclic = false;
    std::ostringstream os;
    os << "quotient cycle:";
    for (PartId s : *cycle) os << ' ' << s << " ->";
    os << ' ' << cycle->front();
    report.violations.push_back(os.str());
  } else {
    report.acyclic = true;
  }
  return report;
}

}  // namespace acypart
