#pragma once

#include <string>
#include <vector>

#include "relay/scenario.hpp"
#include "relay/solve.hpp"

namespace relay {

/// One engine of a sweep: the internal solver, or an external command with
/// its output dialect.
struct EngineSpec {
  bool internal = true;
  SolverKind kind = SolverKind::Pb;  // external only
  std::string command;               // external only, contains {instance}
  std::string label;                 // as given on the command line
};

std::optional<EngineSpec> parse_engine_spec(const std::string& text);

struct BenchCell {
  std::string scenario_name;
  double rho = 1;
  int fault_tolerance = 0;
  long long num_constraints = 0;
  std::string engine;
  SolveStatus status = SolveStatus::Error;
  std::optional<double> objective;
  double wall_time = 0;
};

struct BenchConfig {
  std::vector<std::pair<std::string, Scenario>> scenarios;  // (name, data)
  std::vector<double> rho_set;                              // run descending
  std::vector<int> fault_set;                               // run ascending
  std::vector<EngineSpec> engines;
  double time_limit = 60;
  int jobs = 1;
  std::string work_dir;  // instance files for external engines land here
};

/// Cross product run. Cells may execute in parallel; rows always come back
/// in canonical order (scenario, rho descending, F ascending, engine).
/// Per-cell failures become status Error rows, the sweep continues.
std::vector<BenchCell> run_bench(const BenchConfig& cfg);

/// `scenario,rho,F,num_constraints,engine,status,objective,wall_time`.
std::string bench_csv(const std::vector<BenchCell>& rows);

}  // namespace relay
