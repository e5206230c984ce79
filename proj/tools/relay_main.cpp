#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relay/bench.hpp"
#include "relay/encode.hpp"
#include "relay/model.hpp"
#include "relay/scenario.hpp"
#include "relay/solve.hpp"
#include "relay/synth.hpp"
#include "relay/validate.hpp"
#include "relay/visgraph.hpp"

#include "../src/fsutil.hpp"
#include "../src/textio.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Overrides {
  std::optional<double> rho;
  std::optional<int> fault_tolerance;
  std::optional<int> hops;
};

relay::Scenario load_scenario(const std::string& path, const Overrides& ov) {
  relay::Scenario s = relay::parse_scenario(relay::read_file(path));
  if (ov.rho) s.params.rho = *ov.rho;
  if (ov.fault_tolerance) s.params.fault_tolerance = *ov.fault_tolerance;
  if (ov.hops) s.params.max_hops = *ov.hops;
  const auto violations = relay::validate_scenario(s);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << path << ": " << v << "\n";
    throw std::runtime_error("invalid scenario: " + path);
  }
  return s;
}

struct Pipeline {
  relay::CandidateSet candidates;
  relay::VisibilityGraph graph;
  relay::Model01LP model;
};

Pipeline run_pipeline(const relay::Scenario& s) {
  Pipeline p;
  p.candidates = relay::discretise(s);
  p.graph = relay::build_visibility_graph(p.candidates, s);
  p.model = relay::build_model(p.graph);
  return p;
}

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--rho", ov.rho, "Discretisation factor override");
  cmd->add_option("--fault-tolerance", ov.fault_tolerance, "F override");
  cmd->add_option("--hops", ov.hops, "H override");
}

int exit_code_for(relay::SolveStatus st) {
  switch (st) {
    case relay::SolveStatus::Optimal: return 0;
    case relay::SolveStatus::Satisfiable: return 10;
    case relay::SolveStatus::Unsatisfiable: return 20;
    case relay::SolveStatus::Timeout: return 124;
    case relay::SolveStatus::Error: return 1;
  }
  return 1;
}

std::string assignment_text(const relay::Model01LP& m,
                            const relay::SolverResult& res) {
  std::string out;
  if (res.objective) out += "# objective " + relay::fmt_real(*res.objective) + "\n";
  const auto names = relay::model_var_names(m);
  for (long long c = 0; c < m.num_vars; ++c)
    out += names[c] + " " + ((*res.assignment)[c] ? "1" : "0") + "\n";
  return out;
}

relay::Assignment read_assignment(const std::string& path,
                                  const relay::Model01LP& m) {
  relay::Assignment a;
  a.values.assign(m.num_vars, 0);
  std::map<std::string, int> columns;
  const auto names = relay::model_var_names(m);
  for (long long c = 0; c < m.num_vars; ++c) columns[names[c]] = static_cast<int>(c);

  const std::string text = relay::read_file(path);
  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string line = text.substr(
        pos, eol == std::string::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    std::istringstream in(line);
    std::string name, value;
    if (!(in >> name)) continue;
    if (name == "#") {
      std::string what;
      if (in >> what >> value && what == "objective")
        if (auto v = relay::parse_real(value)) a.objective = *v;
      continue;
    }
    if (!(in >> value) || (value != "0" && value != "1"))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected '<name> <0|1>'");
    auto it = columns.find(name);
    if (it == columns.end())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": unknown variable '" + name + "'");
    a.values[it->second] = value == "1" ? 1 : 0;
  }
  return a;
}

void print_result(const relay::SolverResult& res) {
  std::cout << "status " << relay::to_string(res.status) << "\n";
  if (res.objective) std::cout << "objective " << relay::fmt_real(*res.objective) << "\n";
  std::cout << "wall_time " << relay::fmt_real(res.wall_time) << "\n";
  if (!res.solver_name.empty()) std::cout << "solver " << res.solver_name << "\n";
  if (res.status == relay::SolveStatus::Error && !res.detail.empty())
    std::cerr << res.detail << "\n";
}

ordered_json stats_json(const std::string& name, const relay::Scenario& s,
                        const Pipeline& p) {
  const auto st = relay::model_stats(p.model);
  ordered_json j;
  j["scenario"] = name;
  j["rho"] = s.params.rho;
  j["F"] = s.params.fault_tolerance;
  j["H"] = s.params.max_hops;
  j["poles"] = p.candidates.poles.size();
  j["relays"] = p.candidates.num_relays();
  j["antennas"] = p.candidates.antennas.size();
  j["links"] = p.graph.links.size();
  j["num_vars"] = st.num_vars;
  j["num_constraints"] = st.num_constraints;
  ordered_json vars;
  for (const auto& [k, n] : st.vars_by_kind) vars[k] = n;
  j["vars"] = vars;
  ordered_json families;
  for (const auto& [k, n] : st.constraints_by_family) families[k] = n;
  j["constraints"] = families;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant relay placement: scenario -> visibility graph -> "
               "0-1 LP -> solve/encode/validate"};
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Generate a pseudo-random scenario");
  uint64_t seed = 1;
  std::string size_name = "tiny";
  std::string synth_out;
  synth->add_option("--seed", seed, "RNG seed");
  synth->add_option("--size", size_name, "tiny|small|medium")
      ->check(CLI::IsMember({"tiny", "small", "medium"}));
  synth->add_option("-o,--output", synth_out, "Output file (default stdout)");

  // ---- build ----------------------------------------------------------
  auto* build = app.add_subcommand("build", "Discretise, build the graph and model");
  std::string scenario_path;
  Overrides build_ov;
  std::string graph_out, poles_out, stats_out;
  build->add_option("--scenario", scenario_path, "Scenario file")->required();
  add_override_flags(build, build_ov);
  build->add_option("--graph", graph_out, "Write the link CSV here");
  build->add_option("--poles", poles_out, "Write the candidate pole CSV here");
  build->add_option("--stats", stats_out, "Write model stats JSON-lines here");

  // ---- encode ---------------------------------------------------------
  auto* encode = app.add_subcommand("encode", "Write solver input files");
  std::string encode_scenario, encode_stem;
  Overrides encode_ov;
  std::vector<std::string> formats{"lp", "opb", "smt2"};
  encode->add_option("--scenario", encode_scenario, "Scenario file")->required();
  add_override_flags(encode, encode_ov);
  encode->add_option("--format", formats, "Subset of lp,opb,smt2")
      ->delimiter(',')
      ->check(CLI::IsMember({"lp", "opb", "smt2"}));
  encode->add_option("--stem", encode_stem, "Output path stem")->required();

  // ---- solve ----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve a scenario or an instance file");
  std::string solve_scenario, solve_instance, engine = "internal";
  std::string kind_name = "pb", save_assignment, solve_stem;
  Overrides solve_ov;
  double time_limit = -1;
  solve->add_option("--scenario", solve_scenario, "Scenario file");
  solve->add_option("--instance", solve_instance, "Instance file (.lp or .opb)");
  add_override_flags(solve, solve_ov);
  solve->add_option("--engine", engine, "internal, or a command with {instance}");
  solve->add_option("--kind", kind_name, "External output dialect: pb|omt|milp-lp")
      ->check(CLI::IsMember({"pb", "omt", "milp-lp"}));
  solve->add_option("--time-limit", time_limit, "Seconds, negative = none");
  solve->add_option("--save-assignment", save_assignment, "Write 'name value' lines");
  solve->add_option("--stem", solve_stem,
                    "Stem for instance files encoded for an external engine");

  // ---- validate -------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Check an assignment");
  std::string val_scenario, val_assignment;
  Overrides val_ov;
  bool skip_fault = false;
  validate->add_option("--scenario", val_scenario, "Scenario file")->required();
  validate->add_option("--assignment", val_assignment, "Assignment file")->required();
  add_override_flags(validate, val_ov);
  validate->add_flag("--no-fault-injection", skip_fault,
                     "Skip the exhaustive fault injection");

  // ---- bench ----------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Sweep rho x F x engine");
  std::vector<std::string> bench_scenarios, engine_specs{"internal"};
  std::vector<double> rho_set(std::begin(relay::kRhoSweep), std::end(relay::kRhoSweep));
  std::vector<int> fault_set{0, 1};
  double bench_limit = 60;
  int jobs = 1;
  std::string bench_out, work_dir = ".";
  bench->add_option("--scenario", bench_scenarios, "Scenario file (repeatable)")
      ->required();
  bench->add_option("--rho-set", rho_set, "rho values")->delimiter(',');
  bench->add_option("--fault-set", fault_set, "F values")->delimiter(',');
  bench->add_option("--engine", engine_specs,
                    "internal, or <kind>:<command with {instance}> (repeatable)");
  bench->add_option("--time-limit", bench_limit, "Seconds per cell");
  bench->add_option("--jobs", jobs, "Parallel cells");
  bench->add_option("-o,--output", bench_out, "CSV output (default stdout)");
  bench->add_option("--work-dir", work_dir, "Where external instance files go");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const auto size = relay::parse_size_class(size_name);
      const std::string text =
          relay::serialize_scenario(relay::synth_scenario(seed, *size));
      if (synth_out.empty())
        std::cout << text;
      else
        relay::write_file(synth_out, text);
      return 0;
    }

    if (*build) {
      const auto s = load_scenario(scenario_path, build_ov);
      const auto p = run_pipeline(s);
      if (!poles_out.empty()) relay::write_file(poles_out, relay::poles_csv(p.candidates));
      if (!graph_out.empty()) relay::write_file(graph_out, relay::graph_csv(p.graph));
      const std::string stats =
          stats_json(fs::path(scenario_path).stem().string(), s, p).dump() + "\n";
      if (stats_out.empty())
        std::cout << stats;
      else
        relay::write_file(stats_out, stats);
      return 0;
    }

    if (*encode) {
      const auto s = load_scenario(encode_scenario, encode_ov);
      const auto p = run_pipeline(s);
      for (const auto& f : formats) {
        if (f == "lp") relay::write_file(encode_stem + ".lp", relay::encode_lp(p.model));
        if (f == "opb")
          relay::write_file(encode_stem + ".opb", relay::encode_opb(p.model));
        if (f == "smt2")
          relay::write_file(encode_stem + ".smt2", relay::encode_smt2(p.model));
      }
      relay::write_file(encode_stem + ".varmap.csv", relay::varmap_csv(p.model));
      return 0;
    }

    if (*solve) {
      if (solve_scenario.empty() == solve_instance.empty()) {
        std::cerr << "exactly one of --scenario / --instance is required\n";
        return 1;
      }
      relay::Model01LP model;
      std::string instance_path = solve_instance;
      if (!solve_instance.empty()) {
        const std::string ext = fs::path(solve_instance).extension().string();
        if (ext != ".lp" && ext != ".opb") {
          std::cerr << "--instance must end in .lp or .opb\n";
          return 1;
        }
        model = relay::parse_model(relay::read_file(solve_instance),
                                   ext == ".lp" ? relay::InstanceFormat::LP
                                                : relay::InstanceFormat::OPB);
      } else {
        const auto s = load_scenario(solve_scenario, solve_ov);
        model = run_pipeline(s).model;
      }

      relay::SolverResult res;
      if (engine == "internal") {
        res = relay::branch_and_bound(model, time_limit);
      } else {
        const auto kind = relay::parse_solver_kind(kind_name);
        if (instance_path.empty()) {
          std::string stem = solve_stem;
          if (stem.empty()) stem = fs::path(solve_scenario).stem().string();
          switch (*kind) {
            case relay::SolverKind::MilpLp:
              instance_path = stem + ".lp";
              relay::write_file(instance_path, relay::encode_lp(model));
              break;
            case relay::SolverKind::Pb:
              instance_path = stem + ".opb";
              relay::write_file(instance_path, relay::encode_opb(model));
              break;
            case relay::SolverKind::Omt:
              instance_path = stem + ".smt2";
              relay::write_file(instance_path, relay::encode_smt2(model));
              break;
          }
          relay::write_file(stem + ".varmap.csv", relay::varmap_csv(model));
        }
        relay::VarMap varmap;
        const auto names = relay::model_var_names(model);
        for (long long c = 0; c < model.num_vars; ++c)
          varmap[names[c]] = static_cast<int>(c);
        res = relay::run_external(engine, instance_path, time_limit, *kind, varmap,
                                  model.num_vars);
      }

      if (res.assignment && res.objective && model.objective) {
        const double recomputed = relay::objective_value(model, *res.assignment);
        if (std::fabs(recomputed - *res.objective) > 1e-6)
          std::cerr << "warning: solver objective " << relay::fmt_real(*res.objective)
                    << " differs from the recomputed value "
                    << relay::fmt_real(recomputed) << "\n";
      }
      print_result(res);
      if (!save_assignment.empty() && res.assignment)
        relay::write_file(save_assignment, assignment_text(model, res));
      return exit_code_for(res.status);
    }

    if (*validate) {
      const auto s = load_scenario(val_scenario, val_ov);
      const auto p = run_pipeline(s);
      const auto a = read_assignment(val_assignment, p.model);
      const auto report = relay::check_solution(p.graph, p.model, a);
      std::cout << relay::report_text(report);
      bool ok = report.ok;
      if (ok && !skip_fault) {
        const bool fi = relay::fault_injection(p.graph, s.params, a);
        std::cout << "fault_injection " << (fi ? "pass" : "FAIL") << "\n";
        ok = ok && fi;
      }
      return ok ? 0 : 1;
    }

    if (*bench) {
      relay::BenchConfig cfg;
      for (const auto& path : bench_scenarios)
        cfg.scenarios.emplace_back(fs::path(path).stem().string(),
                                   load_scenario(path, {}));
      cfg.rho_set = rho_set;
      cfg.fault_set = fault_set;
      for (const auto& spec : engine_specs) {
        auto parsed = relay::parse_engine_spec(spec);
        if (!parsed) {
          std::cerr << "bad engine spec '" << spec
                    << "' (want internal or <kind>:<cmd with {instance}>)\n";
          return 1;
        }
        cfg.engines.push_back(*parsed);
      }
      cfg.time_limit = bench_limit;
      cfg.jobs = jobs;
      cfg.work_dir = work_dir;
      const std::string csv = relay::bench_csv(relay::run_bench(cfg));
      if (bench_out.empty())
        std::cout << csv;
      else
        relay::write_file(bench_out, csv);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
