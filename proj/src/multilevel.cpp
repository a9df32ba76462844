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

#include "acypart/multilevel.hpp"

#include <algorithm>
#include <map>

#include "acypart/formulations.hpp"
#include "acypart/model.hpp"

namespace acypart {

namespace {

// Whether (u, v) can be contracted, and the order of the merged graph in
// old ids (v dropped, u standing for the merged vertex).
std::optional<std::vector<Vertex>> try_contract(const Dag& g, const TopoOrder& order, Vertex u, Vertex v,
                                                CoarsenStats& stats) {
  const std::size_t pu = order.position(u);
  const std::size_t pv = order.position(v);
  const auto seq = order.order();

  bool late_pred = false;
  for (Vertex p : g.predecessors(v)) late_pred |= p != u && order.position(p) > pu;
  bool early_succ = false;
  for (Vertex s : g.successors(u)) early_succ |= s != v && order.position(s) < pv;

  std::vector<Vertex> out;
  out.reserve(seq.size() - 1);
  if (!late_pred || !early_succ) {
    // No alternative u ~> v path can exist; the merged vertex keeps u's slot
    // (no late predecessor of v) or v's slot (no early successor of u).
    ++stats.checks_skipped;
    const Vertex drop = late_pred ? u : v;
    for (Vertex x : seq) {
      if (x == drop) continue;
      out.push_back(x == v ? u : x);
    }
    return out;
  }

  ++stats.checks_run;
  // Forward search from u inside the window (pu, pv), skipping the edge itself.
  std::vector<char> fwd(seq.size(), 0);
  std::vector<Vertex> stack;
  for (Vertex s : g.successors(u)) {
    if (s != v && order.position(s) < pv && !fwd[static_cast<std::size_t>(s)]) {
      fwd[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex s : g.successors(x)) {
      if (s == v) return std::nullopt;
      if (order.position(s) < pv && !fwd[static_cast<std::size_t>(s)]) {
        fwd[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
      }
    }
  }
  // Window vertices that reach v must precede the merged vertex.
  std::vector<char> back(seq.size(), 0);
  for (Vertex p : g.predecessors(v)) {
    if (p != u && order.position(p) > pu && !back[static_cast<std::size_t>(p)]) {
      back[static_cast<std::size_t>(p)] = 1;
      stack.push_back(p);
    }
  }
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex p : g.predecessors(x)) {
      if (order.position(p) > pu && !back[static_cast<std::size_t>(p)]) {
        back[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
  }
  for (std::size_t i = 0; i < pu; ++i) out.push_back(seq[i]);
  for (std::size_t i = pu + 1; i < pv; ++i) {
    if (back[static_cast<std::size_t>(seq[i])]) out.push_back(seq[i]);
  }
  out.push_back(u);
  for (std::size_t i = pu + 1; i < pv; ++i) {
    if (!back[static_cast<std::size_t>(seq[i])]) out.push_back(seq[i]);
  }
  for (std::size_t i = pv + 1; i < seq.size(); ++i) out.push_back(seq[i]);
  return out;
}

CoarseningLevel contract(const Dag& g, Vertex u, Vertex v, const std::vector<Vertex>& merged_order) {
  const std::size_t n = g.num_vertices();
  CoarseningLevel level;
  level.mapping.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto xv = static_cast<Vertex>(x);
    level.mapping[x] = xv < v ? xv : xv - 1;
  }
  level.mapping[static_cast<std::size_t>(v)] = level.mapping[static_cast<std::size_t>(u)];

  RawGraph raw;
  raw.weights.assign(n - 1, 0);
  for (std::size_t x = 0; x < n; ++x) {
    raw.weights[static_cast<std::size_t>(level.mapping[x])] += g.weight(static_cast<Vertex>(x));
  }
  std::map<std::pair<Vertex, Vertex>, Weight> merged;
  for (const Edge& e : g.edges()) {
    const Vertex a = level.mapping[static_cast<std::size_t>(e.from)];
    const Vertex b = level.mapping[static_cast<std::size_t>(e.to)];
    if (a != b) merged[{a, b}] += e.cost;
  }
  for (const auto& [ab, cost] : merged) raw.edges.push_back({ab.first, ab.second, cost});

  std::vector<Vertex> coarse_order;
  coarse_order.reserve(merged_order.size());
  for (Vertex x : merged_order) coarse_order.push_back(level.mapping[static_cast<std::size_t>(x)]);
  level.graph = Dag(std::move(raw));
  level.order = TopoOrder(std::move(coarse_order));
  level.contracted = g.edge(*g.find_edge(u, v));
  return level;
}

}  // namespace

Coarsening coarsen(const Dag& g, std::size_t target_n, std::optional<Weight> max_vertex_weight) {
  if (target_n < 2) throw Error("coarsening target must be at least 2 vertices");
  Coarsening result;
  const Dag* current = &g;
  TopoOrder order = g.topo_order();
  while (current->num_vertices() > target_n) {
    std::vector<std::size_t> candidates(current->num_edges());
    for (std::size_t e = 0; e < candidates.size(); ++e) candidates[e] = e;
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      const Edge& ea = current->edge(a);
      const Edge& eb = current->edge(b);
      if (ea.cost != eb.cost) return ea.cost > eb.cost;
      return std::pair(ea.from, ea.to) < std::pair(eb.from, eb.to);
    });
    bool contracted = false;
    for (std::size_t e : candidates) {
      const Edge& ed = current->edge(e);
      if (max_vertex_weight && current->weight(ed.from) + current->weight(ed.to) > *max_vertex_weight) {
        ++result.stats.rejected_weight;
        continue;
      }
      auto merged_order = try_contract(*current, order, ed.from, ed.to, result.stats);
      if (!merged_order) {
        ++result.stats.rejected_unsafe;
        continue;
      }
      result.levels.push_back(contract(*current, ed.from, ed.to, *merged_order));
      ++result.stats.contractions;
      current = &result.levels.back().graph;
      order = result.levels.back().order;
      contracted = true;
      break;
    }
    if (!contracted) break;
  }
  return result;
}

Partition initial_partition(const Dag& coarsest, PartId k, const Rational& eps, InitialMode mode,
                            const ExternalSolver& solver, const SolveBudget& budget) {
  if (mode == InitialMode::Exact) {
    const SolveResult r = branch_and_bound(coarsest, k, eps, nullptr, budget);
    if (!r.best) {
      throw MultilevelError(MultilevelError::Kind::Infeasible,
                            r.status == SolveStatus::Infeasible ? "coarsest graph has no feasible partition"
                                                                : "initial partitioning found no feasible partition");
    }
    return r.best->partition;
  }
  if (!solver) throw MultilevelError(MultilevelError::Kind::SolverFailed, "no external solver supplied");
  BuildOptions opts;
  opts.k = k;
  opts.eps = eps;
  const FormulationModel fm = build_proposed(coarsest, opts);
  const std::string text = solver(write_lp(fm.model));
  const SolutionReadResult read = read_solution(fm.model, text);
  const Evaluation ev = evaluate(fm.model, read.assignment);
  if (!ev.feasible) {
    throw MultilevelError(MultilevelError::Kind::Infeasible,
                          "external solution violates " + (ev.violated.empty() ? std::string("the model") : ev.violated.front()));
  }
  Partition p = decode_partition(fm, read.assignment).partition;
  if (!validate(coarsest, p, k, eps).feasible()) {
    throw MultilevelError(MultilevelError::Kind::Infeasible, "decoded external solution is not a feasible partition");
  }
  return p;
}

RefineResult uncoarsen_refine(const Dag& input, const Coarsening& coarsening, const Partition& coarse, PartId k,
                              const Rational& eps, const SolveBudget& per_level) {
  const auto& levels = coarsening.levels;
  const Dag& top = coarsening.coarsest(input);
  if (coarse.size() != top.num_vertices() || coarse.k != k) {
    throw MultilevelError(MultilevelError::Kind::InvalidProjection, "coarse partition does not match the coarsest graph");
  }
  RefineResult result;
  Partition current = coarse;
  for (std::size_t i = levels.size(); i-- > 0;) {
    const Dag& fine = i == 0 ? input : levels[i - 1].graph;
    const auto& map = levels[i].mapping;
    if (map.size() != fine.num_vertices()) {
      throw MultilevelError(MultilevelError::Kind::InvalidProjection, "mapping size differs from the finer graph");
    }
    std::vector<PartId> projected(map.size());
    for (std::size_t x = 0; x < map.size(); ++x) {
      const auto c = static_cast<std::size_t>(map[x]);
      if (map[x] < 0 || c >= current.size()) {
        throw MultilevelError(MultilevelError::Kind::InvalidProjection, "mapping points outside the coarser graph");
      }
      projected[x] = current[c];
    }
    Partition warm(std::move(projected), k);
    LevelReport report;
    report.num_vertices = fine.num_vertices();
    report.projected_cut = edge_cut(fine, warm);
    if (!validate(fine, warm, k, eps).feasible()) {
      throw MultilevelError(MultilevelError::Kind::InvalidProjection, "projected partition is infeasible");
    }
    const SolveResult r = branch_and_bound(fine, k, eps, &warm, per_level);
    report.status = r.status;
    current = r.best->partition;
    report.refined_cut = r.best->cut;
    result.levels.push_back(report);
  }
  result.cut = edge_cut(input, current);
  result.partition = std::move(current);
  return result;
}

MultilevelResult multilevel_partition(const Dag& g, PartId k, const Rational& eps, const MultilevelOptions& options) {
  MultilevelResult result;
  std::optional<Weight> cap;
  if (options.cap_vertex_weight) cap = balance_bound(g, k, eps);
  result.coarsening = coarsen(g, std::max<std::size_t>(options.target_n, 2), cap);
  const Dag& top = result.coarsening.coarsest(g);
  result.initial = initial_partition(top, k, eps, options.mode, options.solver, options.initial_budget);
  result.refined = uncoarsen_refine(g, result.coarsening, result.initial, k, eps, options.refine_budget);
  return result;
}

}  // namespace acypart
