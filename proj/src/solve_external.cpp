#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <regex>
#include <sstream>

#include "relay/model.hpp"
#include "relay/solve.hpp"
#include "textio.hpp"

namespace relay {

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  if (name == "milp-lp") return SolverKind::MilpLp;
  if (name == "pb") return SolverKind::Pb;
  if (name == "omt") return SolverKind::Omt;
  return std::nullopt;
}

namespace {

SolverResult error_result(const std::string& detail) {
  SolverResult r;
  r.status = SolveStatus::Error;
  r.detail = detail;
  return r;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

SolverResult parse_pb(const std::string& text, long long num_vars) {
  std::optional<SolveStatus> status;
  std::optional<long long> obj_scaled;
  std::vector<std::string> literals;
  for (const auto& line : split_lines(text)) {
    if (line.rfind("s ", 0) == 0) {
      const std::string s = line.substr(2);
      if (s.rfind("OPTIMUM FOUND", 0) == 0) status = SolveStatus::Optimal;
      else if (s.rfind("SATISFIABLE", 0) == 0) status = SolveStatus::Satisfiable;
      else if (s.rfind("UNSATISFIABLE", 0) == 0) status = SolveStatus::Unsatisfiable;
      else if (s.rfind("UNKNOWN", 0) == 0) status = SolveStatus::Timeout;
      else return error_result("unrecognized status line: " + line);
    } else if (line.rfind("o ", 0) == 0) {
      auto fields = split_fields(line);
      if (fields.size() >= 2)
        if (auto v = parse_int(fields[1])) obj_scaled = *v;
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      auto fields = split_fields(line);
      literals.insert(literals.end(), fields.begin() + 1, fields.end());
    }
  }
  if (!status) return error_result("no PB status ('s ...') line found");

  SolverResult r;
  r.status = *status;
  if (obj_scaled) r.objective = static_cast<double>(*obj_scaled) / kCostScale;
  if (!literals.empty()) {
    std::vector<uint8_t> assign(num_vars, 0);
    for (const auto& lit : literals) {
      std::string_view t = lit;
      bool value = true;
      if (!t.empty() && t[0] == '-') {
        value = false;
        t.remove_prefix(1);
      }
      if (t.size() < 2 || t[0] != 'x')
        return error_result("bad literal '" + lit + "' in v line");
      auto idx = parse_int(t.substr(1));
      if (!idx || *idx < 1 || *idx > num_vars)
        return error_result("literal '" + lit + "' out of range");
      assign[*idx - 1] = value ? 1 : 0;
    }
    r.assignment = std::move(assign);
  }
  // An optimum claim without the value or the witness degrades to a
  // satisfiable answer rather than faking fields.
  if (r.status == SolveStatus::Optimal && (!r.objective || !r.assignment))
    r.status = SolveStatus::Satisfiable;
  if (r.status == SolveStatus::Unsatisfiable) {
    r.objective.reset();
    r.assignment.reset();
  }
  return r;
}

SolverResult parse_omt(const std::string& text, const VarMap& varmap,
                       long long num_vars) {
  std::optional<SolveStatus> status;
  for (const auto& line : split_lines(text)) {
    auto fields = split_fields(line);
    if (fields.size() != 1) continue;
    if (fields[0] == "sat") status = SolveStatus::Satisfiable;
    else if (fields[0] == "unsat") status = SolveStatus::Unsatisfiable;
    else if (fields[0] == "unknown") status = SolveStatus::Timeout;
    if (status) break;
  }
  if (!status) return error_result("no sat/unsat/unknown answer found");

  SolverResult r;
  r.status = *status;
  if (r.status != SolveStatus::Satisfiable) return r;

  if (size_t at = text.find("(objectives"); at != std::string::npos) {
    // last numeric token inside the balanced block
    int depth = 0;
    size_t end = at;
    for (size_t i = at; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')' && --depth == 0) {
        end = i;
        break;
      }
    }
    const std::string block = text.substr(at, end - at);
    static const std::regex num(R"(-?\d+(\.\d+)?)");
    for (auto it = std::sregex_iterator(block.begin(), block.end(), num);
         it != std::sregex_iterator(); ++it)
      r.objective = std::stod(it->str());
  }

  static const std::regex defun(
      R"(\(define-fun\s+([^\s()]+)\s*\(\s*\)\s+Int\s+(\d+)\s*\))");
  bool any = false;
  std::vector<uint8_t> assign(num_vars, 0);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), defun);
       it != std::sregex_iterator(); ++it) {
    const std::string name = (*it)[1].str();
    auto col = varmap.find(name);
    if (col == varmap.end()) continue;  // solver-internal symbol
    if (col->second < 0 || col->second >= num_vars)
      return error_result("varmap column out of range for " + name);
    assign[col->second] = (*it)[2].str() != "0";
    any = true;
  }
  if (any) r.assignment = std::move(assign);
  if (r.objective && r.assignment) r.status = SolveStatus::Optimal;
  return r;
}

SolverResult parse_milp(const std::string& text, const VarMap& varmap,
                        long long num_vars) {
  std::optional<SolveStatus> status;
  std::optional<double> obj;
  std::vector<uint8_t> assign(num_vars, 0);
  bool any_var = false;
  for (const auto& line : split_lines(text)) {
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0] == "STATUS" && fields.size() == 2) {
      if (fields[1] == "optimal") status = SolveStatus::Optimal;
      else if (fields[1] == "satisfiable") status = SolveStatus::Satisfiable;
      else if (fields[1] == "unsatisfiable") status = SolveStatus::Unsatisfiable;
      else if (fields[1] == "timeout") status = SolveStatus::Timeout;
      else return error_result("unrecognized STATUS '" + fields[1] + "'");
    } else if (fields[0] == "OBJ" && fields.size() == 2) {
      auto v = parse_real(fields[1]);
      if (!v) return error_result("bad OBJ value '" + fields[1] + "'");
      obj = *v;
    } else if (fields[0] == "VAR" && fields.size() == 3) {
      auto col = varmap.find(fields[1]);
      if (col == varmap.end())
        return error_result("VAR name '" + fields[1] + "' not in the varmap");
      if (col->second < 0 || col->second >= num_vars)
        return error_result("varmap column out of range for " + fields[1]);
      assign[col->second] = fields[2] != "0";
      any_var = true;
    }
  }
  if (!status) return error_result("no STATUS line found");

  SolverResult r;
  r.status = *status;
  r.objective = obj;
  if (any_var) r.assignment = std::move(assign);
  if (r.status == SolveStatus::Optimal && (!r.objective || !r.assignment))
    r.status = SolveStatus::Satisfiable;
  if (r.status == SolveStatus::Unsatisfiable) {
    r.objective.reset();
    r.assignment.reset();
  }
  return r;
}

}  // namespace

SolverResult parse_solver_output(SolverKind kind, const std::string& stdout_text,
                                 const VarMap& varmap, long long num_vars) {
  switch (kind) {
    case SolverKind::Pb: return parse_pb(stdout_text, num_vars);
    case SolverKind::Omt: return parse_omt(stdout_text, varmap, num_vars);
    case SolverKind::MilpLp: return parse_milp(stdout_text, varmap, num_vars);
  }
  return error_result("unsupported solver kind");
}

SolverResult run_external(const std::string& cmd_template,
                          const std::string& instance_path, double time_limit,
                          SolverKind kind, const VarMap& varmap,
                          long long num_vars) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  std::string cmd = cmd_template;
  bool substituted = false;
  for (size_t at; (at = cmd.find("{instance}")) != std::string::npos;) {
    cmd.replace(at, 10, instance_path);
    substituted = true;
  }
  if (!substituted)
    return error_result("command template has no {instance} placeholder");

  int fds[2];
  if (pipe(fds) != 0) return error_result("pipe() failed");
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    return error_result("fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so the whole tree can be killed
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);  // mirror the child's call; whoever wins, the group exists
  close(fds[1]);

  std::string output;
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    int wait_ms = 200;
    if (time_limit >= 0) {
      const double left = time_limit - elapsed();
      if (left <= 0) {
        timed_out = true;
        break;
      }
      wait_ms = std::min(wait_ms, static_cast<int>(left * 1000) + 1);
    }
    struct pollfd pfd{fds[0], POLLIN, 0};
    const int pr = poll(&pfd, 1, wait_ms);
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;
    const ssize_t got = read(fds[0], buf, sizeof buf);
    if (got < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (got == 0) break;  // child closed stdout
    output.append(buf, static_cast<size_t>(got));
  }
  close(fds[0]);

  int wstatus = 0;
  if (timed_out) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
    while (waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
    }
    SolverResult r;
    r.status = SolveStatus::Timeout;
    r.wall_time = elapsed();
    r.solver_name = cmd_template.substr(0, cmd_template.find(' '));
    r.detail = output;
    return r;
  }
  while (waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
  }

  SolverResult r;
  if (WIFEXITED(wstatus) && WEXITSTATUS(wstatus) == 127 && output.empty()) {
    r = error_result("command failed to start: " + cmd);
  } else {
    r = parse_solver_output(kind, output, varmap, num_vars);
    if (r.status == SolveStatus::Error && r.detail.find("output:") == std::string::npos)
      r.detail += "\noutput:\n" + output;
  }
  r.wall_time = elapsed();
  r.solver_name = cmd_template.substr(0, cmd_template.find(' '));
  return r;
}

}  // namespace relay
