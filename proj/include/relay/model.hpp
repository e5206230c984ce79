#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relay/visgraph.hpp"

namespace relay {

enum class VarKind { X, Y, Z, P, U };

/// One binary decision variable. Index fields not used by the kind stay -1.
///   X(s,i,j,e): leg j of route i from sensor pole s uses link e
///   Y(s,a):     antenna a serves sensor pole s
///   Z(a):       antenna a is installed
///   P(v):       pole v carries at least one antenna
///   U(e):       link e is used by at least one route (auxiliary)
struct VarRef {
  VarKind kind = VarKind::P;
  int s = -1;  // sensor pole id
  int i = -1;  // route index, 1..F+1
  int j = -1;  // leg index, 1..H
  int e = -1;  // link id
  int a = -1;  // antenna id
  int v = -1;  // pole id
  int column = -1;
  bool operator==(const VarRef&) const = default;
};

std::string var_name(const VarRef& v);
/// Inverse of var_name for the emitted naming scheme; kind-specific indices
/// only, column left -1. Returns nothing for foreign names.
std::optional<VarRef> parse_var_name(const std::string& name);

enum class Sense { LE, GE, EQ };

struct LinearConstraint {
  std::vector<std::pair<int, int>> terms;  // (coefficient, column), coef != 0
  Sense sense = Sense::LE;
  long long rhs = 0;
  std::string family;  // constraint family tag, names the rule it encodes
  bool operator==(const LinearConstraint&) const = default;
};

/// Column bijection for the X/Y/Z/P/U blocks; shared vocabulary between the
/// model builder and the independent validator.
struct ColumnLayout {
  int num_sensors = 0;
  int fault_tolerance = 0;  // F
  int max_hops = 0;         // H
  int num_links = 0;        // |E|
  int num_antennas = 0;     // |A|
  int num_poles = 0;        // |V|
  std::vector<int> sensor_ids;  // ascending pole ids

  long long x_off = 0, y_off = 0, z_off = 0, p_off = 0, u_off = 0;
  long long num_vars = 0;

  static ColumnLayout from_graph(const VisibilityGraph& g);

  int routes() const { return fault_tolerance + 1; }
  int sensor_index(int pole_id) const;  // -1 if not a sensor

  int x(int s_idx, int i, int j, int e) const {
    return static_cast<int>(
        x_off + ((static_cast<long long>(s_idx) * routes() + (i - 1)) * max_hops +
                 (j - 1)) * num_links + e);
  }
  int y(int s_idx, int a) const {
    return static_cast<int>(y_off + static_cast<long long>(s_idx) * num_antennas + a);
  }
  int z(int a) const { return static_cast<int>(z_off + a); }
  int p(int v) const { return static_cast<int>(p_off + v); }
  int u(int e) const { return static_cast<int>(u_off + e); }
};

/// Solver-agnostic 0-1 LP: binary columns, integer-coefficient linear
/// constraints, optional real minimization objective.
struct Model01LP {
  long long num_vars = 0;
  std::vector<VarRef> var_table;  // column order
  std::vector<LinearConstraint> constraints;
  std::optional<std::vector<std::pair<double, int>>> objective;  // (coef, column)

  bool operator==(const Model01LP&) const = default;
};

/// 0/1 valuation of every model column, plus the claimed objective value
/// when one is known.
struct Assignment {
  std::vector<uint8_t> values;
  std::optional<double> objective;
};

struct ModelOptions {
  /// Family flow_conserve restates what the route constraints already force
  /// at every optimum; keep it by default, drop it to shrink instances.
  bool flow_conservation = true;
};

/// Build the full 0-1 LP for a visibility graph: route, termination, reuse,
/// activation-chain, antenna-limit and channel-limit families plus the
/// deployment-cost objective. Family emission order is fixed so encodings
/// are byte-stable.
Model01LP build_model(const VisibilityGraph& g, const ModelOptions& opt = {});

/// Drop the objective; with a budget, add one `budget` constraint
/// sum(cost terms) <= budget, fixed-point scaled by 10^4 (half-even).
Model01LP to_feasibility(const Model01LP& m, std::optional<double> budget = {});

struct ModelStats {
  long long num_vars = 0;
  long long num_constraints = 0;
  std::map<std::string, long long> vars_by_kind;
  std::vector<std::pair<std::string, long long>> constraints_by_family;  // emission order
};

ModelStats model_stats(const Model01LP& m);

/// Fixed-point scale used whenever real costs must become integers.
inline constexpr double kCostScale = 1e4;

bool satisfies(const LinearConstraint& c, const std::vector<uint8_t>& values);
bool satisfies_all(const Model01LP& m, const std::vector<uint8_t>& values);
/// Objective at `values`; 0 when the model is a feasibility variant.
double objective_value(const Model01LP& m, const std::vector<uint8_t>& values);

}  // namespace relay
