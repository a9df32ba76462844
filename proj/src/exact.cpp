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

#include "acypart/exact.hpp"

#include <cmath>

namespace acypart {

namespace {

void check_k(PartId k) {
  if (k < 1) throw Error("k must be at least 1");
}

// Kahn on the quotient of a complete assignment, k small.
bool quotient_acyclic(const Dag& g, const std::vector<PartId>& part, PartId k, std::vector<int>& indeg,
                      std::vector<char>& adj) {
  const auto ku = static_cast<std::size_t>(k);
  std::fill(adj.begin(), adj.end(), 0);
  std::fill(indeg.begin(), indeg.end(), 0);
  for (const Edge& e : g.edges()) {
    const auto s = static_cast<std::size_t>(part[static_cast<std::size_t>(e.from)]);
    const auto t = static_cast<std::size_t>(part[static_cast<std::size_t>(e.to)]);
    if (s != t && !adj[s * ku + t]) {
      adj[s * ku + t] = 1;
      ++indeg[t];
    }
  }
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < ku; ++s) {
    if (indeg[s] == 0) stack.push_back(s);
  }
  std::size_t seen = 0;
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    ++seen;
    for (std::size_t t = 0; t < ku; ++t) {
      if (adj[s * ku + t] && --indeg[t] == 0) stack.push_back(t);
    }
  }
  return seen == ku;
}

}  // namespace

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Stopped: return "stopped";
  }
  return "unknown";
}

bool satisfies_qubit_constraint(const Partition& p, const QubitConstraint& qc) {
  if (qc.matrix == nullptr) return true;
  std::vector<std::vector<char>> used(static_cast<std::size_t>(p.k), std::vector<char>(qc.matrix->num_qubits(), 0));
  std::vector<std::size_t> count(static_cast<std::size_t>(p.k), 0);
  for (std::size_t v = 0; v < p.size(); ++v) {
    const auto s = static_cast<std::size_t>(p[v]);
    for (std::size_t q : qc.matrix->qubits_of(static_cast<Vertex>(v))) {
      if (!used[s][q]) {
        used[s][q] = 1;
        if (++count[s] > qc.max_qubits) return false;
      }
    }
  }
  return true;
}

SolveResult brute_force(const Dag& g, PartId k, const Rational& eps, std::optional<QubitConstraint> qubits,
                        double log2_limit) {
  check_k(k);
  const std::size_t n = g.num_vertices();
  if (static_cast<double>(n) * std::log2(static_cast<double>(k)) > log2_limit) {
    throw SolverError(SolverError::Kind::TooLarge, "brute force over " + std::to_string(k) + "^" + std::to_string(n) +
                                                       " assignments exceeds the enumeration guard");
  }
  const Weight bound = balance_bound(g, k, eps);
  const auto ku = static_cast<std::size_t>(k);
  std::vector<PartId> part(n, 0);
  std::vector<Weight> load(ku);
  std::vector<int> indeg(ku);
  std::vector<char> adj(ku * ku);
  SolveResult result;
  for (;;) {
    ++result.nodes_explored;
    std::fill(load.begin(), load.end(), 0);
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      load[static_cast<std::size_t>(part[v])] += g.weight(static_cast<Vertex>(v));
      ok = load[static_cast<std::size_t>(part[v])] <= bound;
    }
    if (ok) {
      Weight cut = 0;
      for (const Edge& e : g.edges()) {
        if (part[static_cast<std::size_t>(e.from)] != part[static_cast<std::size_t>(e.to)]) cut += e.cost;
      }
      if (!result.best || cut < result.best->cut) {
        const Partition candidate(part, k);
        if (quotient_acyclic(g, part, k, indeg, adj) && (!qubits || satisfies_qubit_constraint(candidate, *qubits))) {
          result.best = Solution{candidate, cut};
          result.incumbent_history.push_back(cut);
        }
      }
    }
    // Next assignment; the last vertex varies fastest.
    std::size_t v = n;
    while (v > 0 && part[v - 1] == k - 1) part[--v] = 0;
    if (v == 0) break;
    ++part[v - 1];
  }
  result.status = result.best ? SolveStatus::Optimal : SolveStatus::Infeasible;
  result.proven_bound = result.best ? result.best->cut : 0;
  return result;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Dag& g, PartId k, Weight bound, const SolveBudget& budget, std::optional<QubitConstraint> qubits)
      : g_(g),
        k_(k),
        bound_(bound),
        budget_(budget),
        qubits_(qubits && qubits->matrix ? qubits : std::nullopt),
        n_(g.num_vertices()),
        part_(n_, -1),
        load_(static_cast<std::size_t>(k), 0),
        in_sum_(n_, 0),
        max_pred_(n_, 0),
        at_max_(n_, 0),
        assigned_preds_(n_, 0) {
    if (qubits_) {
      qubit_uses_.assign(static_cast<std::size_t>(k), std::vector<std::uint32_t>(qubits_->matrix->num_qubits(), 0));
      unique_.assign(static_cast<std::size_t>(k), 0);
    }
    start_ = std::chrono::steady_clock::now();
  }

  void install(const Solution& s) {
    best_ = s;
    history_.push_back(s.cut);
  }

  SolveResult run() {
    search(0);
    SolveResult r;
    r.best = best_;
    r.nodes_explored = nodes_;
    r.incumbent_history = history_;
    if (stopped_) {
      r.status = SolveStatus::Stopped;
      r.proven_bound = 0;
    } else {
      r.status = best_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
      r.proven_bound = best_ ? best_->cut : 0;
    }
    return r;
  }

 private:
  struct Saved {
    std::size_t vertex;
    PartId max_pred;
    Weight at_max;
  };

  bool out_of_budget() {
    if (budget_.max_nodes && nodes_ > *budget_.max_nodes) return true;
    if (budget_.max_time && (nodes_ & 1023) == 0) {
      return std::chrono::steady_clock::now() - start_ > *budget_.max_time;
    }
    return false;
  }

  Weight forced(std::size_t v) const { return in_sum_[v] - at_max_[v]; }

  bool fits_qubits(Vertex v, std::size_t s) const {
    if (!qubits_) return true;
    std::size_t fresh = 0;
    for (std::size_t q : qubits_->matrix->qubits_of(v)) fresh += qubit_uses_[s][q] == 0 ? 1 : 0;
    return unique_[s] + fresh <= qubits_->max_qubits;
  }

  void search(std::size_t depth) {
    if (stopped_) return;
    ++nodes_;
    if (out_of_budget()) {
      stopped_ = true;
      return;
    }
    if (best_ && cut_ + forced_total_ >= best_->cut) return;
    if (depth == n_) {
      install(Solution{Partition(part_, k_), cut_});
      return;
    }
    const Vertex v = g_.topo_order().at(depth);
    const auto vu = static_cast<std::size_t>(v);
    const Weight w = g_.weight(v);
    for (PartId s = max_pred_[vu]; s < k_ && !stopped_; ++s) {
      const auto su = static_cast<std::size_t>(s);
      if (load_[su] + w > bound_ || !fits_qubits(v, su)) continue;
      // Cut edges from predecessors; those in part max_pred stay uncut only when s == max_pred.
      const Weight added = in_sum_[vu] - (s == max_pred_[vu] ? at_max_[vu] : 0);
      if (best_ && cut_ + added + forced_total_ - forced(vu) >= best_->cut) continue;
      assign(v, s, added);
      search(depth + 1);
      unassign(v, s, added);
    }
  }

  void assign(Vertex v, PartId s, Weight added) {
    const auto vu = static_cast<std::size_t>(v);
    const auto su = static_cast<std::size_t>(s);
    part_[vu] = s;
    load_[su] += g_.weight(v);
    cut_ += added;
    forced_total_ -= forced(vu);
    if (qubits_) {
      for (std::size_t q : qubits_->matrix->qubits_of(v)) {
        if (qubit_uses_[su][q]++ == 0) ++unique_[su];
      }
    }
    for (std::size_t e : g_.out_edges(v)) {
      const Edge& ed = g_.edge(e);
      const auto t = static_cast<std::size_t>(ed.to);
      saved_.push_back({t, max_pred_[t], at_max_[t]});
      forced_total_ -= forced(t);
      in_sum_[t] += ed.cost;
      if (assigned_preds_[t]++ == 0 || s > max_pred_[t]) {
        max_pred_[t] = s;
        at_max_[t] = ed.cost;
      } else if (s == max_pred_[t]) {
        at_max_[t] += ed.cost;
      }
      forced_total_ += forced(t);
    }
  }

  void unassign(Vertex v, PartId s, Weight added) {
    const auto vu = static_cast<std::size_t>(v);
    const auto su = static_cast<std::size_t>(s);
    const auto out = g_.out_edges(v);
    for (std::size_t idx = out.size(); idx-- > 0;) {
      const Edge& ed = g_.edge(out[idx]);
      const Saved sv = saved_.back();
      saved_.pop_back();
      forced_total_ -= forced(sv.vertex);
      in_sum_[sv.vertex] -= ed.cost;
      --assigned_preds_[sv.vertex];
      max_pred_[sv.vertex] = sv.max_pred;
      at_max_[sv.vertex] = sv.at_max;
      forced_total_ += forced(sv.vertex);
    }
    if (qubits_) {
      for (std::size_t q : qubits_->matrix->qubits_of(v)) {
        if (--qubit_uses_[su][q] == 0) --unique_[su];
      }
    }
    forced_total_ += forced(vu);
    cut_ -= added;
    load_[su] -= g_.weight(v);
    part_[vu] = -1;
  }

  const Dag& g_;
  PartId k_;
  Weight bound_;
  SolveBudget budget_;
  std::optional<QubitConstraint> qubits_;
  std::size_t n_;
  std::vector<PartId> part_;
  std::vector<Weight> load_;
  // Per vertex: total cost from assigned predecessors, the largest
  // predecessor part, and the cost coming from predecessors in that part.
  std::vector<Weight> in_sum_;
  std::vector<PartId> max_pred_;
  std::vector<Weight> at_max_;
  std::vector<std::uint32_t> assigned_preds_;
  std::vector<Saved> saved_;
  std::vector<std::vector<std::uint32_t>> qubit_uses_;
  std::vector<std::size_t> unique_;
  Weight cut_ = 0;
  Weight forced_total_ = 0;
  std::optional<Solution> best_;
  std::vector<Weight> history_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveResult branch_and_bound(const Dag& g, PartId k, const Rational& eps, const Partition* warm,
                             const SolveBudget& budget, std::optional<QubitConstraint> qubits) {
  check_k(k);
  const Weight bound = balance_bound(g, k, eps);
  BranchAndBound bb(g, k, bound, budget, qubits);
  if (warm != nullptr) {
    if (warm->size() != g.num_vertices() || warm->k != k) {
      throw SolverError(SolverError::Kind::InvalidWarmStart, "warm start does not match the graph or k");
    }
    const ValidationReport report = validate(g, *warm, k, eps);
    if (!report.feasible()) {
      std::string why = report.violations.empty() ? "infeasible" : report.violations.front();
      throw SolverError(SolverError::Kind::InvalidWarmStart, "warm start is not feasible: " + why);
    }
    if (qubits && !satisfies_qubit_constraint(*warm, *qubits)) {
      throw SolverError(SolverError::Kind::InvalidWarmStart, "warm start exceeds the qubit capacity");
    }
    bb.install(Solution{*warm, report.cut});
  }
  return bb.run();
}

}  // namespace acypart
