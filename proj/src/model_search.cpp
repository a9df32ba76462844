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

#include "acypart/model_search.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace acypart {

namespace {

constexpr double kMaxMagnitude = 1e12;

std::int64_t to_integer(double value, const std::string& what) {
  if (!std::isfinite(value) || value != std::floor(value) || std::fabs(value) > kMaxMagnitude) {
    throw ModelError(ModelError::Kind::Unsupported, what + " must be a finite integer for enumeration");
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace

Assignment SearchResult::assignment(const LinearModel& model) const {
  Assignment a;
  for (std::size_t i = 0; i < values.size(); ++i) a.set(model.variable(i).name, values[i]);
  return a;
}

EnumerativeSolver::EnumerativeSolver(const LinearModel& model) {
  const std::size_t n = model.num_variables();
  lb_.resize(n);
  ub_.resize(n);
  cost_.assign(n, 0);
  rows_of_var_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Variable& v = model.variable(i);
    if (!v.domain.is_integral()) {
      throw ModelError(ModelError::Kind::Unsupported, "variable " + v.name + " is continuous");
    }
    if (!std::isfinite(v.domain.lb) || !std::isfinite(v.domain.ub)) {
      throw ModelError(ModelError::Kind::Unsupported, "variable " + v.name + " is unbounded");
    }
    lb_[i] = static_cast<std::int64_t>(std::ceil(v.domain.lb));
    ub_[i] = static_cast<std::int64_t>(std::floor(v.domain.ub));
  }
  maximize_ = model.objective().sense == ObjectiveSense::Maximize;
  const std::int64_t sign = maximize_ ? -1 : 1;
  for (const Term& t : model.objective().terms) cost_[t.var] = sign * to_integer(t.coef, "objective coefficient");
  constant_ = sign * to_integer(model.objective().constant, "objective constant");

  for (const Constraint& c : model.constraints()) {
    Row row;
    for (const Term& t : c.terms) row.terms.emplace_back(t.var, to_integer(t.coef, "coefficient in " + c.name));
    const std::int64_t rhs = to_integer(c.rhs, "right-hand side of " + c.name);
    row.has_lo = c.sense != Sense::LessEqual;
    row.has_hi = c.sense != Sense::GreaterEqual;
    row.lo = rhs;
    row.hi = rhs;
    for (const auto& [var, coef] : row.terms) rows_of_var_[var].push_back(rows_.size());
    rows_.push_back(std::move(row));
  }
}

class SearchState {
 public:
  SearchState(const EnumerativeSolver& solver, std::uint64_t max_nodes)
      : s_(solver), lb_(solver.lb_), ub_(solver.ub_), queued_(solver.rows_.size(), 0), max_nodes_(max_nodes) {
    objective_bound_ = s_.constant_;
    for (std::size_t i = 0; i < lb_.size(); ++i) objective_bound_ += contribution(i);
  }

  bool fix_all(std::span<const Fixing> fixed) {
    for (const Fixing& f : fixed) {
      if (f.var >= lb_.size() || !tighten(f.var, f.value, f.value)) return false;
    }
    for (std::size_t r = 0; r < s_.rows_.size(); ++r) enqueue(r);
    return propagate();
  }

  void search(std::size_t first_free) {
    if (stopped_) return;
    ++nodes_;
    if (max_nodes_ != 0 && nodes_ > max_nodes_) {
      stopped_ = true;
      return;
    }
    if (best_ && objective_bound_ >= *best_) return;
    std::size_t var = first_free;
    while (var < lb_.size() && lb_[var] == ub_[var]) ++var;
    if (var == lb_.size()) {
      best_ = objective_bound_;
      best_values_ = lb_;
      return;
    }
    const std::int64_t lo = lb_[var];
    const std::int64_t hi = ub_[var];
    const bool descending = s_.cost_[var] < 0;
    for (std::int64_t step = 0; step <= hi - lo && !stopped_; ++step) {
      const std::int64_t value = descending ? hi - step : lo + step;
      const std::size_t mark = trail_.size();
      if (tighten(var, value, value) && propagate()) search(var + 1);
      undo(mark);
      clear_queue();
      if (best_ && objective_bound_ >= *best_) break;
    }
  }

  bool stopped() const { return stopped_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::optional<std::int64_t>& best() const { return best_; }
  const std::vector<std::int64_t>& best_values() const { return best_values_; }

 private:
  struct TrailEntry {
    std::size_t var;
    std::int64_t lb;
    std::int64_t ub;
  };

  std::int64_t contribution(std::size_t var) const {
    const std::int64_t c = s_.cost_[var];
    return c > 0 ? c * lb_[var] : c * ub_[var];
  }

  bool tighten(std::size_t var, std::int64_t new_lb, std::int64_t new_ub) {
    new_lb = std::max(new_lb, lb_[var]);
    new_ub = std::min(new_ub, ub_[var]);
    if (new_lb == lb_[var] && new_ub == ub_[var]) return true;
    trail_.push_back({var, lb_[var], ub_[var]});
    objective_bound_ -= contribution(var);
    lb_[var] = new_lb;
    ub_[var] = new_ub;
    objective_bound_ += contribution(var);
    if (new_lb > new_ub) return false;
    for (std::size_t r : s_.rows_of_var_[var]) enqueue(r);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const TrailEntry& e = trail_.back();
      objective_bound_ -= contribution(e.var);
      lb_[e.var] = e.lb;
      ub_[e.var] = e.ub;
      objective_bound_ += contribution(e.var);
      trail_.pop_back();
    }
  }

  void enqueue(std::size_t r) {
    if (!queued_[r]) {
      queued_[r] = 1;
      queue_.push_back(r);
    }
  }

  void clear_queue() {
    for (std::size_t r : queue_) queued_[r] = 0;
    queue_.clear();
  }

  bool propagate() {
    while (!queue_.empty()) {
      const std::size_t r = queue_.front();
      queue_.pop_front();
      queued_[r] = 0;
      if (!propagate_row(s_.rows_[r])) {
        clear_queue();
        return false;
      }
    }
    return true;
  }

  bool propagate_row(const EnumerativeSolver::Row& row) {
    std::int64_t min_act = 0;
    std::int64_t max_act = 0;
    for (const auto& [var, a] : row.terms) {
      min_act += a > 0 ? a * lb_[var] : a * ub_[var];
      max_act += a > 0 ? a * ub_[var] : a * lb_[var];
    }
    if (row.has_hi && min_act > row.hi) return false;
    if (row.has_lo && max_act < row.lo) return false;
    for (const auto& [var, a] : row.terms) {
      if (lb_[var] == ub_[var]) continue;
      std::int64_t new_lb = lb_[var];
      std::int64_t new_ub = ub_[var];
      if (row.has_hi) {
        const std::int64_t slack = row.hi - (min_act - (a > 0 ? a * lb_[var] : a * ub_[var]));
        if (a > 0) {
          new_ub = std::min(new_ub, floor_div(slack, a));
        } else {
          new_lb = std::max(new_lb, ceil_div(slack, a));
        }
      }
      if (row.has_lo) {
        const std::int64_t rest = row.lo - (max_act - (a > 0 ? a * ub_[var] : a * lb_[var]));
        if (a > 0) {
          new_lb = std::max(new_lb, ceil_div(rest, a));
        } else {
          new_ub = std::min(new_ub, floor_div(rest, a));
        }
      }
      if (new_lb != lb_[var] || new_ub != ub_[var]) {
        if (!tighten(var, new_lb, new_ub)) return false;
        // Activities are stale now; the row was re-queued by tighten().
        return true;
      }
    }
    return true;
  }

  const EnumerativeSolver& s_;
  std::vector<std::int64_t> lb_;
  std::vector<std::int64_t> ub_;
  std::vector<TrailEntry> trail_;
  std::deque<std::size_t> queue_;
  std::vector<char> queued_;
  std::int64_t objective_bound_ = 0;
  std::optional<std::int64_t> best_;
  std::vector<std::int64_t> best_values_;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_nodes_ = 0;
  bool stopped_ = false;
};

SearchResult EnumerativeSolver::solve(std::span<const Fixing> fixed, std::uint64_t max_nodes) const {
  SearchState state(*this, max_nodes);
  SearchResult result;
  if (state.fix_all(fixed)) state.search(0);
  result.nodes = state.nodes();
  if (state.best()) {
    const std::int64_t value = maximize_ ? -*state.best() : *state.best();
    result.objective = Rational(value);
    result.values = state.best_values();
  }
  if (state.stopped()) {
    result.status = SearchStatus::NodeLimit;
  } else {
    result.status = state.best() ? SearchStatus::Optimal : SearchStatus::Infeasible;
  }
  return result;
}

}  // namespace acypart
