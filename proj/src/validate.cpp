#include "relay/validate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "textio.hpp"

namespace relay {
namespace {

std::string idx2(const char* a, int va, const char* b, int vb) {
  return std::string(a) + "=" + std::to_string(va) + "," + b + "=" +
         std::to_string(vb);
}

std::string idx3(const char* a, int va, const char* b, int vb, const char* c,
                 int vc) {
  return idx2(a, va, b, vb) + "," + c + "=" + std::to_string(vc);
}

}  // namespace

ValidationReport check_solution(const VisibilityGraph& g, const Model01LP& m,
                                const Assignment& a) {
  const ColumnLayout L = ColumnLayout::from_graph(g);
  if (L.num_vars != m.num_vars)
    throw std::invalid_argument("check_solution: model does not match the graph");
  if (static_cast<long long>(a.values.size()) != m.num_vars)
    throw std::invalid_argument("check_solution: assignment must cover every column");
  const auto& val = a.values;

  ValidationReport rep;
  auto bad = [&rep](const char* family, std::string indices, std::string msg) {
    rep.violations.push_back({family, std::move(indices), std::move(msg)});
  };

  const int S = L.num_sensors, R = L.routes(), H = L.max_hops, E = L.num_links;
  std::vector<uint8_t> is_gateway(L.num_poles, 0);
  for (int v : g.gateway_poles()) is_gateway[v] = 1;

  // Route structure, re-derived from the graph: each (s,i) is a contiguous
  // walk that starts at the sensor and stops exactly when it enters a
  // gateway, within H legs.
  for (int si = 0; si < S; ++si) {
    const int s = L.sensor_ids[si];
    for (int i = 1; i <= R; ++i) {
      std::vector<std::vector<int>> steps(H + 1);
      for (int j = 1; j <= H; ++j)
        for (int e = 0; e < E; ++e)
          if (val[L.x(si, i, j, e)]) steps[j].push_back(e);
      for (int j = 1; j <= H; ++j)
        if (steps[j].size() > 1)
          bad("step_link", idx3("s", s, "i", i, "j", j),
              "route uses " + std::to_string(steps[j].size()) + " links in one leg");

      RoutePath path;
      path.sensor = s;
      path.route = i;
      int cur = s;
      bool ended = false, broken = false;
      for (int j = 1; j <= H && !broken; ++j) {
        if (ended) {
          if (!steps[j].empty())
            bad("path_term", idx3("s", s, "i", i, "j", j),
                "leg selected after the route reached a gateway");
          continue;
        }
        if (steps[j].empty()) {
          if (j == 1)
            bad("flow_exit", idx2("s", s, "i", i), "route has no first leg");
          else
            bad("arc_order", idx3("s", s, "i", i, "j", j),
                "route stops before reaching a gateway");
          broken = true;
          break;
        }
        const Link& l = g.links[steps[j][0]];
        if (l.from_pole != cur) {
          bad("arc_order", idx3("s", s, "i", i, "j", j),
              "leg transmits from pole " + std::to_string(l.from_pole) +
                  ", expected " + std::to_string(cur));
          broken = true;
          break;
        }
        path.links.push_back(l.id);
        cur = l.to_pole;
        if (is_gateway[cur]) ended = true;
      }
      if (!ended && !broken)
        bad("flow_enter", idx2("s", s, "i", i),
            "route does not reach a gateway within " + std::to_string(H) + " hops");
      rep.paths.push_back(std::move(path));
    }
  }

  // Reuse limits, straight from the X block.
  for (int si = 0; si < S; ++si) {
    const int s = L.sensor_ids[si];
    std::vector<int> relay_hits(L.num_poles, 0);
    std::vector<int> link_hits(E, 0);
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j <= H; ++j)
        for (int e = 0; e < E; ++e)
          if (val[L.x(si, i, j, e)]) {
            ++link_hits[e];
            ++relay_hits[g.links[e].to_pole];
          }
    for (const auto& pole : g.poles)
      if (pole.kind == PoleKind::Relay && relay_hits[pole.id] > 1)
        bad("reuse_pole", idx2("s", s, "n", pole.id),
            "relay visited " + std::to_string(relay_hits[pole.id]) +
                " times across the sensor's routes");
    for (int e = 0; e < E; ++e)
      if (link_hits[e] > 1)
        bad("reuse_link", idx2("s", s, "e", e),
            "link used " + std::to_string(link_hits[e]) +
                " times across the sensor's routes");
  }
  for (int e = 0; e < E; ++e)
    for (int j = 1; j <= H; ++j) {
      int hits = 0;
      for (int si = 0; si < S; ++si)
        for (int i = 1; i <= R; ++i) hits += val[L.x(si, i, j, e)] ? 1 : 0;
      if (hits > 1)
        bad("link_step", idx2("e", e, "j", j),
            "link carries " + std::to_string(hits) + " routes at the same leg index");
    }

  // Activation chain: used legs -> Y, Y -> Z, Z -> P; U mirrors link usage.
  std::vector<uint8_t> link_used(E, 0);
  for (int si = 0; si < S; ++si) {
    const int s = L.sensor_ids[si];
    for (int i = 1; i <= R; ++i)
      for (int j = 1; j <= H; ++j)
        for (int e = 0; e < E; ++e) {
          if (!val[L.x(si, i, j, e)]) continue;
          link_used[e] = 1;
          const Link& l = g.links[e];
          if (!val[L.y(si, l.from_antenna)])
            bad("y_tx", idx3("s", s, "e", e, "a", l.from_antenna),
                "transmitting antenna not reserved for the sensor");
          if (!val[L.y(si, l.to_antenna)])
            bad("y_rx", idx3("s", s, "e", e, "a", l.to_antenna),
                "receiving antenna not reserved for the sensor");
        }
    for (int an = 0; an < L.num_antennas; ++an)
      if (val[L.y(si, an)] && !val[L.z(an)])
        bad("z_from_y", idx2("s", s, "a", an),
            "antenna reserved for a sensor but not installed");
  }
  for (int an = 0; an < L.num_antennas; ++an)
    if (val[L.z(an)] && !val[L.p(g.antennas[an].pole)])
      bad("p_from_z", idx2("a", an, "v", g.antennas[an].pole),
          "antenna installed on a pole that is not selected");
  for (int e = 0; e < E; ++e)
    if (val[L.u(e)] != link_used[e])
      bad("link_use", "e=" + std::to_string(e),
          link_used[e] ? "used link has U=0" : "unused link has U=1");

  // Antenna and channel budgets.
  for (const auto& pole : g.poles) {
    int count = 0;
    for (int o = 0; o < g.orientations; ++o)
      count += val[L.z(pole.id * g.orientations + o)] ? 1 : 0;
    const int limit = pole.kind == PoleKind::Gateway ? g.params.max_antennas_gateway
                      : pole.kind == PoleKind::Sensor ? g.params.max_antennas_sensor
                                                      : g.params.max_antennas_relay;
    if (count > limit)
      bad("antenna_limit", "v=" + std::to_string(pole.id),
          std::to_string(count) + " antennas exceed the limit of " +
              std::to_string(limit));
  }
  for (const auto& pole : g.poles) {
    if (pole.kind != PoleKind::Relay) continue;
    int rx = 0, tx = 0;
    for (int e = 0; e < E; ++e) {
      if (!link_used[e]) continue;
      if (g.links[e].to_pole == pole.id) ++rx;
      if (g.links[e].from_pole == pole.id) ++tx;
    }
    if (rx > g.params.max_links_per_pole)
      bad("ml_rx", "n=" + std::to_string(pole.id),
          std::to_string(rx) + " receiving links exceed ML=" +
              std::to_string(g.params.max_links_per_pole));
    if (tx > g.params.max_links_per_pole)
      bad("ml_tx", "n=" + std::to_string(pole.id),
          std::to_string(tx) + " transmitting links exceed ML=" +
              std::to_string(g.params.max_links_per_pole));
  }

  // Deployment cost, recomputed from the graph data alone.
  double cost = 0;
  for (const auto& pole : g.poles)
    if (val[L.p(pole.id)]) cost += pole.cost;
  for (int an = 0; an < L.num_antennas; ++an)
    if (val[L.z(an)]) cost += g.params.antenna_cost;
  for (long long c = L.x_off; c < L.y_off; ++c)
    if (val[c]) cost += g.params.link_penalty;
  rep.recomputed_cost = cost;
  if (m.objective) {
    const double model_cost = objective_value(m, val);
    if (std::fabs(model_cost - cost) > 1e-6)
      bad("cost", "",
          "model objective " + fmt_real(model_cost) +
              " differs from the recomputed cost " + fmt_real(cost));
  }
  if (a.objective && std::fabs(*a.objective - cost) > 1e-6)
    bad("cost", "",
        "claimed objective " + fmt_real(*a.objective) +
            " differs from the recomputed cost " + fmt_real(cost));

  rep.ok = rep.violations.empty();
  return rep;
}

namespace {

bool sensors_connected(const VisibilityGraph& g, const ColumnLayout& L,
                       const std::vector<uint8_t>& alive_link,
                       const std::vector<uint8_t>& removed, int max_hops) {
  std::vector<std::vector<int>> out(L.num_poles);
  for (const auto& l : g.links)
    if (alive_link[l.id] && !removed[l.from_pole] && !removed[l.to_pole])
      out[l.from_pole].push_back(l.to_pole);

  std::vector<uint8_t> is_gateway(L.num_poles, 0);
  for (int v : g.gateway_poles()) is_gateway[v] = 1;

  for (int s : L.sensor_ids) {
    std::vector<int> dist(L.num_poles, -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    bool reached = is_gateway[s];
    while (!queue.empty() && !reached) {
      const int v = queue.front();
      queue.pop_front();
      if (dist[v] == max_hops) continue;
      for (int w : out[v]) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        if (is_gateway[w]) {
          reached = true;
          break;
        }
        queue.push_back(w);
      }
    }
    if (!reached) return false;
  }
  return true;
}

bool removal_subsets_hold(const VisibilityGraph& g, const ColumnLayout& L,
                          const std::vector<uint8_t>& alive_link,
                          const std::vector<int>& candidates, size_t from,
                          std::vector<uint8_t>& removed, int budget, int max_hops) {
  if (!sensors_connected(g, L, alive_link, removed, max_hops)) return false;
  if (budget == 0) return true;
  for (size_t k = from; k < candidates.size(); ++k) {
    removed[candidates[k]] = 1;
    const bool ok = removal_subsets_hold(g, L, alive_link, candidates, k + 1,
                                         removed, budget - 1, max_hops);
    removed[candidates[k]] = 0;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool fault_injection(const VisibilityGraph& g, const Params& params,
                     const Assignment& a) {
  const ColumnLayout L = ColumnLayout::from_graph(g);
  if (static_cast<long long>(a.values.size()) != L.num_vars)
    throw std::invalid_argument("fault_injection: assignment must cover every column");
  const auto& val = a.values;

  // Links the deployed hardware supports: both endpoint antennas installed.
  std::vector<uint8_t> alive(L.num_links, 0);
  for (const auto& l : g.links)
    alive[l.id] = val[L.z(l.from_antenna)] && val[L.z(l.to_antenna)];

  // Relay poles that actually carry traffic.
  std::vector<uint8_t> carries(L.num_poles, 0);
  for (int si = 0; si < L.num_sensors; ++si)
    for (int i = 1; i <= L.routes(); ++i)
      for (int j = 1; j <= L.max_hops; ++j)
        for (int e = 0; e < L.num_links; ++e)
          if (val[L.x(si, i, j, e)]) {
            carries[g.links[e].from_pole] = 1;
            carries[g.links[e].to_pole] = 1;
          }
  std::vector<int> candidates;
  for (const auto& pole : g.poles)
    if (pole.kind == PoleKind::Relay && carries[pole.id])
      candidates.push_back(pole.id);

  std::vector<uint8_t> removed(L.num_poles, 0);
  return removal_subsets_hold(g, L, alive, candidates, 0, removed,
                              params.fault_tolerance, params.max_hops);
}

std::string report_text(const ValidationReport& r) {
  std::string out = r.ok ? "OK\n" : "INVALID\n";
  out += "recomputed_cost " + fmt_real(r.recomputed_cost) + "\n";
  for (const auto& p : r.paths) {
    out += "path s" + std::to_string(p.sensor) + " i" + std::to_string(p.route) + ":";
    for (int e : p.links) out += " e" + std::to_string(e);
    out += "\n";
  }
  for (const auto& v : r.violations)
    out += "violation " + v.family + " [" + v.indices + "] " + v.message + "\n";
  return out;
}

std::string violations_csv(const ValidationReport& r) {
  std::string out = "family,indices,message\n";
  for (const auto& v : r.violations) {
    std::string msg = v.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::string idx = v.indices;
    std::replace(idx.begin(), idx.end(), ',', ';');
    out += v.family + "," + idx + "," + msg + "\n";
  }
  return out;
}

}  // namespace relay
