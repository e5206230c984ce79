#include "relay/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textio.hpp"

namespace relay {

std::string var_name(const VarRef& v) {
  switch (v.kind) {
    case VarKind::X:
      return "x_s" + std::to_string(v.s) + "_i" + std::to_string(v.i) + "_j" +
             std::to_string(v.j) + "_e" + std::to_string(v.e);
    case VarKind::Y:
      return "y_s" + std::to_string(v.s) + "_a" + std::to_string(v.a);
    case VarKind::Z:
      return "z_a" + std::to_string(v.a);
    case VarKind::P:
      return "p_v" + std::to_string(v.v);
    case VarKind::U:
      return "u_e" + std::to_string(v.e);
  }
  return {};
}

std::optional<VarRef> parse_var_name(const std::string& name) {
  auto field = [](std::string_view part, char tag) -> std::optional<int> {
    if (part.size() < 2 || part[0] != tag) return std::nullopt;
    auto v = parse_int(part.substr(1));
    if (!v || *v < 0) return std::nullopt;
    return static_cast<int>(*v);
  };
  std::vector<std::string_view> parts;
  {
    std::string_view sv = name;
    size_t i = 0;
    while (i <= sv.size()) {
      size_t j = sv.find('_', i);
      if (j == std::string_view::npos) j = sv.size();
      parts.push_back(sv.substr(i, j - i));
      i = j + 1;
    }
  }
  VarRef r;
  if (parts.size() == 5 && parts[0] == "x") {
    auto s = field(parts[1], 's'), i = field(parts[2], 'i'), j = field(parts[3], 'j'),
         e = field(parts[4], 'e');
    if (!s || !i || !j || !e) return std::nullopt;
    r.kind = VarKind::X, r.s = *s, r.i = *i, r.j = *j, r.e = *e;
    return r;
  }
  if (parts.size() == 3 && parts[0] == "y") {
    auto s = field(parts[1], 's'), a = field(parts[2], 'a');
    if (!s || !a) return std::nullopt;
    r.kind = VarKind::Y, r.s = *s, r.a = *a;
    return r;
  }
  if (parts.size() == 2 && parts[0] == "z") {
    auto a = field(parts[1], 'a');
    if (!a) return std::nullopt;
    r.kind = VarKind::Z, r.a = *a;
    return r;
  }
  if (parts.size() == 2 && parts[0] == "p") {
    auto v = field(parts[1], 'v');
    if (!v) return std::nullopt;
    r.kind = VarKind::P, r.v = *v;
    return r;
  }
  if (parts.size() == 2 && parts[0] == "u") {
    auto e = field(parts[1], 'e');
    if (!e) return std::nullopt;
    r.kind = VarKind::U, r.e = *e;
    return r;
  }
  return std::nullopt;
}

ColumnLayout ColumnLayout::from_graph(const VisibilityGraph& g) {
  ColumnLayout L;
  L.sensor_ids = g.sensor_poles();
  L.num_sensors = static_cast<int>(L.sensor_ids.size());
  L.fault_tolerance = g.params.fault_tolerance;
  L.max_hops = g.params.max_hops;
  L.num_links = static_cast<int>(g.links.size());
  L.num_antennas = static_cast<int>(g.antennas.size());
  L.num_poles = static_cast<int>(g.poles.size());
  L.x_off = 0;
  const long long nx = static_cast<long long>(L.num_sensors) * L.routes() *
                       L.max_hops * L.num_links;
  L.y_off = L.x_off + nx;
  L.z_off = L.y_off + static_cast<long long>(L.num_sensors) * L.num_antennas;
  L.p_off = L.z_off + L.num_antennas;
  L.u_off = L.p_off + L.num_poles;
  L.num_vars = L.u_off + L.num_links;
  return L;
}

int ColumnLayout::sensor_index(int pole_id) const {
  auto it = std::lower_bound(sensor_ids.begin(), sensor_ids.end(), pole_id);
  if (it == sensor_ids.end() || *it != pole_id) return -1;
  return static_cast<int>(it - sensor_ids.begin());
}

namespace {

std::vector<VarRef> make_var_table(const ColumnLayout& L) {
  std::vector<VarRef> t;
  t.reserve(L.num_vars);
  VarRef r;
  for (int si = 0; si < L.num_sensors; ++si)
    for (int i = 1; i <= L.routes(); ++i)
      for (int j = 1; j <= L.max_hops; ++j)
        for (int e = 0; e < L.num_links; ++e) {
          r = {};
          r.kind = VarKind::X, r.s = L.sensor_ids[si], r.i = i, r.j = j, r.e = e;
          r.column = L.x(si, i, j, e);
          t.push_back(r);
        }
  for (int si = 0; si < L.num_sensors; ++si)
    for (int a = 0; a < L.num_antennas; ++a) {
      r = {};
      r.kind = VarKind::Y, r.s = L.sensor_ids[si], r.a = a, r.column = L.y(si, a);
      t.push_back(r);
    }
  for (int a = 0; a < L.num_antennas; ++a) {
    r = {};
    r.kind = VarKind::Z, r.a = a, r.column = L.z(a);
    t.push_back(r);
  }
  for (int v = 0; v < L.num_poles; ++v) {
    r = {};
    r.kind = VarKind::P, r.v = v, r.column = L.p(v);
    t.push_back(r);
  }
  for (int e = 0; e < L.num_links; ++e) {
    r = {};
    r.kind = VarKind::U, r.e = e, r.column = L.u(e);
    t.push_back(r);
  }
  return t;
}

}  // namespace

Model01LP build_model(const VisibilityGraph& g, const ModelOptions& opt) {
  const ColumnLayout L = ColumnLayout::from_graph(g);
  Model01LP m;
  m.num_vars = L.num_vars;
  m.var_table = make_var_table(L);

  const int S = L.num_sensors, R = L.routes(), H = L.max_hops, E = L.num_links;
  const auto relays = g.relay_poles();
  std::vector<uint8_t> is_gateway(L.num_poles, 0);
  for (int v : g.gateway_poles()) is_gateway[v] = 1;

  std::vector<std::vector<int>> out_links(L.num_poles), in_links(L.num_poles);
  std::vector<int> gw_in_links;  // sigma(e) is a gateway
  for (const auto& l : g.links) {
    out_links[l.from_pole].push_back(l.id);
    in_links[l.to_pole].push_back(l.id);
    if (is_gateway[l.to_pole]) gw_in_links.push_back(l.id);
  }

  auto add = [&m](std::vector<std::pair<int, int>> terms, Sense sense, long long rhs,
                  const char* family) {
    m.constraints.push_back({std::move(terms), sense, rhs, family});
  };

  // (a) each sensor launches F+1 route first legs
  for (int si = 0; si < S; ++si) {
    std::vector<std::pair<int, int>> t;
    for (int i = 1; i <= R; ++i)
      for (int e : out_links[L.sensor_ids[si]]) t.emplace_back(1, L.x(si, i, 1, e));
    add(std::move(t), Sense::EQ, R, "flow_exit");
  }

  // (b) F+1 legs of each sensor's routes land on gateways
  for (int si = 0; si < S; ++si) {
    std::vector<std::pair<int, int>> t;
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j <= H; ++j)
        for (int e : gw_in_links) t.emplace_back(1, L.x(si, i, j, e));
    add(std::move(t), Sense::EQ, R, "flow_enter");
  }

  // (c) in-flow equals out-flow at every relay, per sensor
  if (opt.flow_conservation) {
    for (int si = 0; si < S; ++si)
      for (int n : relays) {
        std::vector<std::pair<int, int>> t;
        for (int i = 1; i <= R; ++i)
          for (int j = 1; j <= H; ++j) {
            for (int e : in_links[n]) t.emplace_back(1, L.x(si, i, j, e));
            for (int e : out_links[n]) t.emplace_back(-1, L.x(si, i, j, e));
          }
        add(std::move(t), Sense::EQ, 0, "flow_conserve");
      }
  }

  // (d) a used leg that has not reached a gateway forces a successor leg
  // transmitting from its receiving pole
  for (int si = 0; si < S; ++si)
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j < H; ++j)
        for (const auto& l : g.links) {
          if (is_gateway[l.to_pole]) continue;
          std::vector<std::pair<int, int>> t;
          t.emplace_back(-1, L.x(si, i, j, l.id));
          for (int e : out_links[l.to_pole]) t.emplace_back(1, L.x(si, i, j + 1, e));
          add(std::move(t), Sense::GE, 0, "arc_order");
        }

  // (e) once a route reaches a gateway at leg j, every later leg is off
  const long long M = static_cast<long long>(H) * E;
  for (int si = 0; si < S; ++si)
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j < H; ++j) {
        std::vector<std::pair<int, int>> t;
        for (int k = j + 1; k <= H; ++k)
          for (int e = 0; e < E; ++e) t.emplace_back(1, L.x(si, i, k, e));
        for (int e : gw_in_links) t.emplace_back(static_cast<int>(M), L.x(si, i, j, e));
        add(std::move(t), Sense::LE, M, "path_term");
      }

  // (f) one link per leg; a link appears at most once in a sensor's routes
  for (int si = 0; si < S; ++si)
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j <= H; ++j) {
        std::vector<std::pair<int, int>> t;
        for (int e = 0; e < E; ++e) t.emplace_back(1, L.x(si, i, j, e));
        add(std::move(t), Sense::LE, 1, "step_link");
      }
  for (int si = 0; si < S; ++si)
    for (int e = 0; e < E; ++e) {
      std::vector<std::pair<int, int>> t;
      for (int i = 1; i <= R; ++i)
        for (int j = 1; j <= H; ++j) t.emplace_back(1, L.x(si, i, j, e));
      add(std::move(t), Sense::LE, 1, "reuse_link");
    }

  // (g) routes of one sensor are relay-disjoint
  for (int si = 0; si < S; ++si)
    for (int n : relays) {
      std::vector<std::pair<int, int>> t;
      for (int i = 1; i <= R; ++i)
        for (int j = 1; j <= H; ++j)
          for (int e : in_links[n]) t.emplace_back(1, L.x(si, i, j, e));
      add(std::move(t), Sense::LE, 1, "reuse_pole");
    }

  // (h) global link caps: total use, and one route per leg index
  for (int e = 0; e < E; ++e) {
    std::vector<std::pair<int, int>> t;
    for (int si = 0; si < S; ++si)
      for (int i = 1; i <= R; ++i)
        for (int j = 1; j <= H; ++j) t.emplace_back(1, L.x(si, i, j, e));
    add(std::move(t), Sense::LE, static_cast<long long>(S) * R, "link_cap");
  }
  for (int e = 0; e < E; ++e)
    for (int j = 1; j <= H; ++j) {
      std::vector<std::pair<int, int>> t;
      for (int si = 0; si < S; ++si)
        for (int i = 1; i <= R; ++i) t.emplace_back(1, L.x(si, i, j, e));
      add(std::move(t), Sense::LE, 1, "link_step");
    }

  // (i) activation chain X -> Y -> Z -> P
  for (int si = 0; si < S; ++si)
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j <= H; ++j)
        for (const auto& l : g.links)
          add({{1, L.y(si, l.from_antenna)}, {-1, L.x(si, i, j, l.id)}}, Sense::GE, 0,
              "y_tx");
  for (int si = 0; si < S; ++si)
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j <= H; ++j)
        for (const auto& l : g.links)
          add({{1, L.y(si, l.to_antenna)}, {-1, L.x(si, i, j, l.id)}}, Sense::GE, 0,
              "y_rx");
  for (int si = 0; si < S; ++si)
    for (int a = 0; a < L.num_antennas; ++a)
      add({{1, L.z(a)}, {-1, L.y(si, a)}}, Sense::GE, 0, "z_from_y");
  for (int a = 0; a < L.num_antennas; ++a)
    add({{1, L.p(g.antennas[a].pole)}, {-1, L.z(a)}}, Sense::GE, 0, "p_from_z");

  // (j) per-pole antenna budget by pole kind
  for (const auto& pole : g.poles) {
    const int limit = pole.kind == PoleKind::Gateway ? g.params.max_antennas_gateway
                      : pole.kind == PoleKind::Sensor ? g.params.max_antennas_sensor
                                                      : g.params.max_antennas_relay;
    std::vector<std::pair<int, int>> t;
    for (int o = 0; o < g.orientations; ++o)
      t.emplace_back(1, L.z(pole.id * g.orientations + o));
    add(std::move(t), Sense::LE, limit, "antenna_limit");
  }

  // (k) channel limits through the U(e) indicator
  for (int e = 0; e < E; ++e)
    for (int si = 0; si < S; ++si)
      for (int i = 1; i <= R; ++i)
        for (int j = 1; j <= H; ++j)
          add({{1, L.u(e)}, {-1, L.x(si, i, j, e)}}, Sense::GE, 0, "use_lb");
  for (int e = 0; e < E; ++e) {
    std::vector<std::pair<int, int>> t;
    for (int si = 0; si < S; ++si)
      for (int i = 1; i <= R; ++i)
        for (int j = 1; j <= H; ++j) t.emplace_back(1, L.x(si, i, j, e));
    t.emplace_back(-1, L.u(e));
    add(std::move(t), Sense::GE, 0, "use_ub");
  }
  for (int n : relays) {
    std::vector<std::pair<int, int>> t;
    for (int e : in_links[n]) t.emplace_back(1, L.u(e));
    add(std::move(t), Sense::LE, g.params.max_links_per_pole, "ml_rx");
  }
  for (int n : relays) {
    std::vector<std::pair<int, int>> t;
    for (int e : out_links[n]) t.emplace_back(1, L.u(e));
    add(std::move(t), Sense::LE, g.params.max_links_per_pole, "ml_tx");
  }

  // cost: poles + antennas + link penalty, in column order
  std::vector<std::pair<double, int>> obj;
  if (g.params.link_penalty != 0)
    for (long long c = L.x_off; c < L.y_off; ++c)
      obj.emplace_back(g.params.link_penalty, static_cast<int>(c));
  if (g.params.antenna_cost != 0)
    for (int a = 0; a < L.num_antennas; ++a)
      obj.emplace_back(g.params.antenna_cost, L.z(a));
  for (const auto& pole : g.poles)
    if (pole.cost != 0) obj.emplace_back(pole.cost, L.p(pole.id));
  m.objective = std::move(obj);
  return m;
}

Model01LP to_feasibility(const Model01LP& m, std::optional<double> budget) {
  if (!m.objective)
    throw std::invalid_argument("to_feasibility: model has no objective");
  if (budget && *budget < 0)
    throw std::invalid_argument("to_feasibility: negative budget");
  Model01LP out = m;
  if (budget) {
    LinearConstraint c;
    c.family = "budget";
    c.sense = Sense::LE;
    c.rhs = static_cast<long long>(std::nearbyint(*budget * kCostScale));
    for (const auto& [coef, col] : *m.objective) {
      const long long k = static_cast<long long>(std::nearbyint(coef * kCostScale));
      if (k != 0) c.terms.emplace_back(static_cast<int>(k), col);
    }
    out.constraints.push_back(std::move(c));
  }
  out.objective.reset();
  return out;
}

ModelStats model_stats(const Model01LP& m) {
  ModelStats st;
  st.num_vars = m.num_vars;
  st.num_constraints = static_cast<long long>(m.constraints.size());
  for (const auto& v : m.var_table) {
    static const char* names[] = {"X", "Y", "Z", "P", "U"};
    ++st.vars_by_kind[names[static_cast<int>(v.kind)]];
  }
  for (const auto& c : m.constraints) {
    auto it = std::find_if(st.constraints_by_family.begin(),
                           st.constraints_by_family.end(),
                           [&c](const auto& p) { return p.first == c.family; });
    if (it == st.constraints_by_family.end())
      st.constraints_by_family.emplace_back(c.family, 1);
    else
      ++it->second;
  }
  return st;
}

bool satisfies(const LinearConstraint& c, const std::vector<uint8_t>& values) {
  long long sum = 0;
  for (const auto& [coef, col] : c.terms)
    if (values[col]) sum += coef;
  switch (c.sense) {
    case Sense::LE: return sum <= c.rhs;
    case Sense::GE: return sum >= c.rhs;
    case Sense::EQ: return sum == c.rhs;
  }
  return false;
}

bool satisfies_all(const Model01LP& m, const std::vector<uint8_t>& values) {
  for (const auto& c : m.constraints)
    if (!satisfies(c, values)) return false;
  return true;
}

double objective_value(const Model01LP& m, const std::vector<uint8_t>& values) {
  if (!m.objective) return 0;
  double sum = 0;
  for (const auto& [coef, col] : *m.objective)
    if (values[col]) sum += coef;
  return sum;
}

}  // namespace relay
