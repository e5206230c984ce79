#include "relay/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <thread>

#include "fsutil.hpp"
#include "relay/encode.hpp"
#include "relay/visgraph.hpp"
#include "textio.hpp"

namespace relay {

std::optional<EngineSpec> parse_engine_spec(const std::string& text) {
  EngineSpec spec;
  spec.label = text;
  if (text == "internal") return spec;
  const size_t colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto kind = parse_solver_kind(text.substr(0, colon));
  if (!kind) return std::nullopt;
  spec.internal = false;
  spec.kind = *kind;
  spec.command = text.substr(colon + 1);
  if (spec.command.find("{instance}") == std::string::npos) return std::nullopt;
  return spec;
}

namespace {

const char* instance_ext(SolverKind k) {
  switch (k) {
    case SolverKind::MilpLp: return ".lp";
    case SolverKind::Pb: return ".opb";
    case SolverKind::Omt: return ".smt2";
  }
  return ".lp";
}

std::string sanitized(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  return out;
}

void run_cell(const BenchConfig& cfg, const Scenario& base, BenchCell& cell,
              const EngineSpec& engine, int graph_threads) {
  Scenario s = base;
  s.params.rho = cell.rho;
  s.params.fault_tolerance = cell.fault_tolerance;

  const auto cs = discretise(s);
  const auto g = build_visibility_graph(cs, s, graph_threads);
  const auto m = build_model(g);
  cell.num_constraints = static_cast<long long>(m.constraints.size());

  SolverResult res;
  if (engine.internal) {
    res = branch_and_bound(m, cfg.time_limit);
  } else {
    const std::string stem =
        cfg.work_dir + "/" + sanitized(cell.scenario_name) + "_r" +
        fmt_int(static_cast<long long>(std::lround(cell.rho * 100))) + "_f" +
        fmt_int(cell.fault_tolerance);
    const std::string instance = stem + instance_ext(engine.kind);
    switch (engine.kind) {
      case SolverKind::MilpLp: write_file(instance, encode_lp(m)); break;
      case SolverKind::Pb: write_file(instance, encode_opb(m)); break;
      case SolverKind::Omt: write_file(instance, encode_smt2(m)); break;
    }
    write_file(stem + ".varmap.csv", varmap_csv(m));
    VarMap varmap;
    const auto names = model_var_names(m);
    for (long long c = 0; c < m.num_vars; ++c) varmap[names[c]] = static_cast<int>(c);
    res = run_external(engine.command, instance, cfg.time_limit, engine.kind,
                       varmap, m.num_vars);
  }
  cell.status = res.status;
  cell.objective = res.objective;
  cell.wall_time = res.wall_time;
}

}  // namespace

std::vector<BenchCell> run_bench(const BenchConfig& cfg) {
  std::vector<double> rhos = cfg.rho_set;
  std::sort(rhos.begin(), rhos.end(), std::greater<>());
  std::vector<int> faults = cfg.fault_set;
  std::sort(faults.begin(), faults.end());

  struct Job {
    const Scenario* scenario;
    const EngineSpec* engine;
  };
  std::vector<BenchCell> cells;
  std::vector<Job> jobs;
  for (const auto& [name, scenario] : cfg.scenarios)
    for (double rho : rhos)
      for (int f : faults)
        for (const auto& engine : cfg.engines) {
          BenchCell cell;
          cell.scenario_name = name;
          cell.rho = rho;
          cell.fault_tolerance = f;
          cell.engine = engine.label;
          cells.push_back(std::move(cell));
          jobs.push_back({&scenario, &engine});
        }

  const int workers =
      std::max(1, std::min(cfg.jobs, static_cast<int>(cells.size())));
  const int graph_threads = workers > 1 ? 1 : 0;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      try {
        run_cell(cfg, *jobs[k].scenario, cells[k], *jobs[k].engine, graph_threads);
      } catch (const std::exception& e) {
        cells[k].status = SolveStatus::Error;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return cells;
}

std::string bench_csv(const std::vector<BenchCell>& rows) {
  std::string out = "scenario,rho,F,num_constraints,engine,status,objective,wall_time\n";
  char buf[32];
  for (const auto& r : rows) {
    out += r.scenario_name + "," + fmt_real(r.rho) + "," + fmt_int(r.fault_tolerance) +
           "," + fmt_int(r.num_constraints) + "," + r.engine + "," +
           to_string(r.status) + ",";
    if (r.objective) out += fmt_real(*r.objective);
    std::snprintf(buf, sizeof buf, ",%.3f", r.wall_time);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace relay
