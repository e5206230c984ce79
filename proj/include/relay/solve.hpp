#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relay/model.hpp"

namespace relay {

enum class SolveStatus { Optimal, Satisfiable, Unsatisfiable, Timeout, Error };

std::string to_string(SolveStatus s);

struct SolverResult {
  SolveStatus status = SolveStatus::Error;
  std::optional<double> objective;
  std::optional<std::vector<uint8_t>> assignment;  // per column, 0/1
  double wall_time = 0;                            // seconds
  std::string solver_name;
  std::string detail;  // raw output / diagnostic on error
};

/// Exhaustive oracle. Enumerates all 2^n assignments in lexicographic order
/// (ascending), or in reverse when descending = true, keeping the first
/// strictly-better feasible point, so ties resolve to the lexicographically
/// smallest assignment. Throws std::invalid_argument past max_vars.
SolverResult brute_force(const Model01LP& m, int max_vars = 26,
                         bool descending = false);

/// Depth-first branch and bound. Branches on the lowest-column unfixed
/// variable of an undecided constraint, value 1 first; prunes on interval
/// infeasibility and on the fixed-cost incumbent bound (all objective
/// coefficients are >= 0 by construction). A negative time_limit means no
/// limit; on timeout the best incumbent so far comes back as status Timeout.
SolverResult branch_and_bound(const Model01LP& m, double time_limit = -1);

enum class SolverKind { MilpLp, Pb, Omt };

std::optional<SolverKind> parse_solver_kind(std::string_view name);

using VarMap = std::map<std::string, int>;  // semantic name -> column

/// Parse one solver family's stdout.
///   pb:      `s OPTIMUM FOUND|SATISFIABLE|UNSATISFIABLE`, `o <val>`,
///            `v x1 -x2 ...` literals; objective unscaled from fixed point.
///   omt:     `sat`/`unsat`, `(objectives ...)`, `define-fun` model lines.
///   milp-lp: normalized adapter protocol `STATUS ...`, `OBJ ...`,
///            `VAR <name> <0|1>` lines.
/// num_vars sizes the assignment; unmentioned columns default to 0.
SolverResult parse_solver_output(SolverKind kind, const std::string& stdout_text,
                                 const VarMap& varmap, long long num_vars);

/// Run `cmd_template` with {instance} substituted, kill the whole process
/// group at the wall-clock limit, capture stdout+stderr, and dispatch to
/// parse_solver_output. Timeout and spawn/parse failures come back as
/// statuses, never exceptions.
SolverResult run_external(const std::string& cmd_template,
                          const std::string& instance_path, double time_limit,
                          SolverKind kind, const VarMap& varmap,
                          long long num_vars);

}  // namespace relay
