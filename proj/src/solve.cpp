#include "relay/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relay {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Satisfiable: return "satisfiable";
    case SolveStatus::Unsatisfiable: return "unsatisfiable";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Error: return "error";
  }
  return "error";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ByColumn {
  std::vector<std::vector<std::pair<int, int>>> entries;  // col -> (cidx, coef)
  explicit ByColumn(const Model01LP& m) : entries(m.num_vars) {
    for (size_t c = 0; c < m.constraints.size(); ++c)
      for (const auto& [coef, col] : m.constraints[c].terms)
        entries[col].emplace_back(static_cast<int>(c), coef);
  }
};

bool constraint_ok(const LinearConstraint& c, long long sum) {
  switch (c.sense) {
    case Sense::LE: return sum <= c.rhs;
    case Sense::GE: return sum >= c.rhs;
    case Sense::EQ: return sum == c.rhs;
  }
  return false;
}

}  // namespace

SolverResult brute_force(const Model01LP& m, int max_vars, bool descending) {
  const auto t0 = Clock::now();
  const int n = static_cast<int>(m.num_vars);
  if (n > max_vars)
    throw std::invalid_argument("brute_force: " + std::to_string(n) +
                                " variables exceed the cap of " +
                                std::to_string(max_vars));

  const ByColumn bycol(m);
  const size_t nc = m.constraints.size();
  std::vector<long long> sums(nc, 0);
  std::vector<uint8_t> sat(nc);
  size_t violated = 0;
  std::vector<uint8_t> cur(n, descending ? 1 : 0);
  for (size_t c = 0; c < nc; ++c) {
    if (descending)
      for (const auto& [coef, col] : m.constraints[c].terms) sums[c] += coef;
    sat[c] = constraint_ok(m.constraints[c], sums[c]);
    if (!sat[c]) ++violated;
  }

  auto flip = [&](int col) {
    cur[col] ^= 1;
    const int dir = cur[col] ? 1 : -1;
    for (const auto& [cidx, coef] : bycol.entries[col]) {
      sums[cidx] += dir * coef;
      const uint8_t now = constraint_ok(m.constraints[cidx], sums[cidx]);
      if (now != sat[cidx]) {
        sat[cidx] = now;
        violated += now ? -1 : 1;
      }
    }
  };

  SolverResult res;
  res.solver_name = "brute_force";
  const bool optimizing = m.objective.has_value();
  bool found = false;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<uint8_t> best;

  // Lexicographic enumeration: ascending counts up from all-zeros, the
  // reverse twin counts down from all-ones accepting ties, so both return
  // the lexicographically smallest optimum.
  auto visit = [&]() {
    if (violated != 0) return false;
    if (!optimizing) {
      if (!found || descending) {
        found = true;
        best = cur;
      }
      return !descending;  // ascending can stop at the first feasible point
    }
    const double v = objective_value(m, cur);
    if (!found || v < best_val || (descending && v == best_val)) {
      found = true;
      best_val = v;
      best = cur;
    }
    return false;
  };

  const unsigned long long total = n >= 63 ? 0 : (1ull << n);
  unsigned long long step = 0;
  bool stop = visit();
  while (!stop && ++step < total) {
    int k = n - 1;
    if (descending) {
      while (cur[k] == 0) flip(k--);
    } else {
      while (cur[k] == 1) flip(k--);
    }
    flip(k);
    stop = visit();
  }

  res.wall_time = seconds_since(t0);
  if (!found) {
    res.status = SolveStatus::Unsatisfiable;
    return res;
  }
  res.status = optimizing ? SolveStatus::Optimal : SolveStatus::Satisfiable;
  if (optimizing) res.objective = objective_value(m, best);
  res.assignment = std::move(best);
  return res;
}

namespace {

struct BnB {
  const Model01LP& m;
  const ByColumn bycol;
  std::vector<double> obj_coef;  // dense, all >= 0 by model construction
  std::vector<int8_t> value;     // -1 unfixed
  std::vector<long long> sum_fixed, pos_remain, neg_remain;
  double obj_fixed = 0;
  bool optimizing;
  bool found = false;
  bool done = false;  // feasibility variant: stop at the first solution
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<uint8_t> best;
  Clock::time_point deadline;
  bool has_deadline;
  bool timed_out = false;
  unsigned long long nodes = 0;

  BnB(const Model01LP& model, double time_limit)
      : m(model),
        bycol(model),
        obj_coef(model.num_vars, 0),
        value(model.num_vars, -1),
        sum_fixed(model.constraints.size(), 0),
        pos_remain(model.constraints.size(), 0),
        neg_remain(model.constraints.size(), 0),
        optimizing(model.objective.has_value()),
        has_deadline(time_limit >= 0) {
    if (optimizing)
      for (const auto& [coef, col] : *model.objective) obj_coef[col] += coef;
    for (size_t c = 0; c < m.constraints.size(); ++c)
      for (const auto& [coef, col] : m.constraints[c].terms)
        (coef > 0 ? pos_remain : neg_remain)[c] += coef;
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(
                                      has_deadline ? time_limit : 0));
  }

  void fix(int col, int8_t v) {
    value[col] = v;
    for (const auto& [cidx, coef] : bycol.entries[col]) {
      if (v) sum_fixed[cidx] += coef;
      (coef > 0 ? pos_remain : neg_remain)[cidx] -= coef;
    }
    if (v) obj_fixed += obj_coef[col];
  }

  void unfix(int col) {
    const int8_t v = value[col];
    value[col] = -1;
    for (const auto& [cidx, coef] : bycol.entries[col]) {
      if (v) sum_fixed[cidx] -= coef;
      (coef > 0 ? pos_remain : neg_remain)[cidx] += coef;
    }
    if (v) obj_fixed -= obj_coef[col];
  }

  void record_leaf() {
    std::vector<uint8_t> full(m.num_vars, 0);
    for (long long c = 0; c < m.num_vars; ++c)
      if (value[c] == 1) full[c] = 1;
    if (!optimizing) {
      found = done = true;
      best = std::move(full);
      return;
    }
    const double v = objective_value(m, full);
    if (!found || v < best_val) {
      found = true;
      best_val = v;
      best = std::move(full);
    }
  }

  void search() {
    if (done || timed_out) return;
    if ((nodes++ & 511) == 0 && has_deadline && Clock::now() >= deadline) {
      timed_out = true;
      return;
    }
    if (optimizing && found && obj_fixed >= best_val) return;

    // One pass: prune on interval infeasibility, and pick the lowest
    // unfixed column over constraints not yet decided satisfied.
    int branch_col = -1;
    for (size_t c = 0; c < m.constraints.size(); ++c) {
      const auto& con = m.constraints[c];
      const long long lo = sum_fixed[c] + neg_remain[c];
      const long long hi = sum_fixed[c] + pos_remain[c];
      bool decided = false;
      switch (con.sense) {
        case Sense::LE:
          if (lo > con.rhs) return;
          decided = hi <= con.rhs;
          break;
        case Sense::GE:
          if (hi < con.rhs) return;
          decided = lo >= con.rhs;
          break;
        case Sense::EQ:
          if (con.rhs < lo || con.rhs > hi) return;
          decided = lo == hi;
          break;
      }
      if (decided) continue;
      for (const auto& [coef, col] : con.terms)
        if (value[col] < 0 && (branch_col < 0 || col < branch_col)) branch_col = col;
    }
    if (branch_col < 0) {
      // Every constraint holds for any completion; the all-zero completion
      // is the cheapest one.
      record_leaf();
      return;
    }
    fix(branch_col, 1);
    search();
    unfix(branch_col);
    if (done || timed_out) return;
    fix(branch_col, 0);
    search();
    unfix(branch_col);
  }
};

}  // namespace

SolverResult branch_and_bound(const Model01LP& m, double time_limit) {
  const auto t0 = Clock::now();
  BnB bnb(m, time_limit);
  bnb.search();

  SolverResult res;
  res.solver_name = "branch_and_bound";
  res.wall_time = seconds_since(t0);
  if (bnb.timed_out) {
    res.status = SolveStatus::Timeout;
    if (bnb.found) {
      if (bnb.optimizing) res.objective = objective_value(m, bnb.best);
      res.assignment = std::move(bnb.best);
    }
    return res;
  }
  if (!bnb.found) {
    res.status = SolveStatus::Unsatisfiable;
    return res;
  }
  res.status = bnb.optimizing ? SolveStatus::Optimal : SolveStatus::Satisfiable;
  if (bnb.optimizing) res.objective = objective_value(m, bnb.best);
  res.assignment = std::move(bnb.best);
  return res;
}

}  // namespace relay
