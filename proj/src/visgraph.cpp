#include "relay/visgraph.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "textio.hpp"

namespace relay {

bool segment_intersects_box(const Point3& p, const Point3& q, const Box3& b) {
  // Slab test on the closed box, t confined to [0,1].
  double t0 = 0, t1 = 1;
  const double d[3] = {q.x - p.x, q.y - p.y, q.z - p.z};
  const double o[3] = {p.x, p.y, p.z};
  const double lo[3] = {b.x0, b.y0, b.z0};
  const double hi[3] = {b.x1, b.y1, b.z1};
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0) {
      if (o[k] < lo[k] || o[k] > hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - o[k]) / d[k];
    double tb = (hi[k] - o[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

std::vector<int> VisibilityGraph::sensor_poles() const {
  std::vector<int> out;
  for (const auto& p : poles)
    if (p.kind == PoleKind::Sensor) out.push_back(p.id);
  return out;
}

std::vector<int> VisibilityGraph::gateway_poles() const {
  std::vector<int> out;
  for (const auto& p : poles)
    if (p.kind == PoleKind::Gateway) out.push_back(p.id);
  return out;
}

std::vector<int> VisibilityGraph::relay_poles() const {
  std::vector<int> out;
  for (const auto& p : poles)
    if (p.kind == PoleKind::Relay) out.push_back(p.id);
  return out;
}

Point3 antenna_point(const Pole& p, const Scenario& s) {
  return {p.pos.x, p.pos.y, s.terrain_at(p.pos.x, p.pos.y) + s.pole_height};
}

bool line_of_sight(const Point3& p_in, const Point3& q_in, const Scenario& s,
                   double step) {
  if (step <= 0) step = s.cell_size / 4;

  // Canonical endpoint order makes the sample set, and therefore the
  // verdict, independent of argument order.
  const Point3* p = &p_in;
  const Point3* q = &q_in;
  if (std::tie(q->x, q->y, q->z) < std::tie(p->x, p->y, p->z)) std::swap(p, q);

  const double len = dist3(*p, *q);
  const long long n = std::max(1LL, static_cast<long long>(std::ceil(len / step)));
  for (long long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    const double x = p->x + t * (q->x - p->x);
    const double y = p->y + t * (q->y - p->y);
    const double z = p->z + t * (q->z - p->z);
    const double ground = s.terrain_at(x, y);
    if (ground > z) return false;
    for (const auto& ob : s.obstacles)
      if (ob.footprint.contains(x, y) && ground + ob.height > z) return false;
  }
  return true;
}

namespace {

// Everything that does not depend on the antenna orientations: positive
// range, line of sight, forbidden-link clearance. Symmetric in v1/v2.
bool pole_pair_clear(const Point3& p1, const Point3& p2, const Scenario& s) {
  const double d = dist3(p1, p2);
  if (d == 0 || d > s.params.radio_range) return false;
  for (const auto& b : s.forbidden_link)
    if (segment_intersects_box(p1, p2, b)) return false;
  return line_of_sight(p1, p2, s);
}

bool beam_holds(const Antenna& from, const Point3& from_pt, const Point3& to_pt,
                int orientations, double halfwidth) {
  const double bearing = azimuth_deg(to_pt.x - from_pt.x, to_pt.y - from_pt.y);
  const double az = from.orientation * 360.0 / orientations;
  return azimuth_diff_deg(bearing, az) <= halfwidth + 1e-9;
}

}  // namespace

bool link_feasible(const Antenna& a1, const Antenna& a2, const CandidateSet& cs,
                   const Scenario& s) {
  if (a1.pole == a2.pole) return false;
  const Point3 p1 = antenna_point(cs.poles[a1.pole], s);
  const Point3 p2 = antenna_point(cs.poles[a2.pole], s);
  if (!pole_pair_clear(p1, p2, s)) return false;
  return beam_holds(a1, p1, p2, cs.orientations, s.params.beam_halfwidth) &&
         beam_holds(a2, p2, p1, cs.orientations, s.params.beam_halfwidth);
}

VisibilityGraph build_visibility_graph(const CandidateSet& cs, const Scenario& s,
                                       int threads) {
  VisibilityGraph g;
  g.poles = cs.poles;
  g.antennas = cs.antennas;
  g.orientations = cs.orientations;
  g.params = s.params;

  const int nv = static_cast<int>(cs.poles.size());
  std::vector<Point3> pts(nv);
  for (int v = 0; v < nv; ++v) pts[v] = antenna_point(cs.poles[v], s);

  // The expensive, orientation-independent part of the pair test, computed
  // once per unordered pole pair. Chunks are independent so the matrix is
  // identical for any schedule.
  std::vector<uint8_t> clear(static_cast<size_t>(nv) * nv, 0);
  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  auto fill_rows = [&](int v_begin, int v_end) {
    for (int v1 = v_begin; v1 < v_end; ++v1)
      for (int v2 = v1 + 1; v2 < nv; ++v2) {
        const uint8_t ok = pole_pair_clear(pts[v1], pts[v2], s) ? 1 : 0;
        clear[static_cast<size_t>(v1) * nv + v2] = ok;
        clear[static_cast<size_t>(v2) * nv + v1] = ok;
      }
  };
  if (threads == 1 || nv < 16) {
    fill_rows(0, nv);
  } else {
    std::vector<std::future<void>> work;
    const int chunk = (nv + threads - 1) / threads;
    for (int begin = 0; begin < nv; begin += chunk)
      work.push_back(std::async(std::launch::async, fill_rows, begin,
                                std::min(begin + chunk, nv)));
    for (auto& w : work) w.get();
  }

  const double halfwidth = s.params.beam_halfwidth;
  for (const auto& a1 : cs.antennas) {
    for (const auto& a2 : cs.antennas) {
      if (a1.pole == a2.pole) continue;
      if (!clear[static_cast<size_t>(a1.pole) * nv + a2.pole]) continue;
      if (!beam_holds(a1, pts[a1.pole], pts[a2.pole], cs.orientations, halfwidth) ||
          !beam_holds(a2, pts[a2.pole], pts[a1.pole], cs.orientations, halfwidth))
        continue;
      const int id = static_cast<int>(g.links.size());
      g.links.push_back({id, a1.pole, a2.pole, a1.id, a2.id});
    }
  }
  return g;
}

std::string graph_csv(const VisibilityGraph& g) {
  std::string out = "link_id,tau,sigma,alpha,beta\n";
  for (const auto& l : g.links) {
    out += fmt_int(l.id);
    out += ',';
    out += fmt_int(l.from_pole);
    out += ',';
    out += fmt_int(l.to_pole);
    out += ',';
    out += fmt_int(l.from_antenna);
    out += ',';
    out += fmt_int(l.to_antenna);
    out += '\n';
  }
  return out;
}

std::string poles_csv(const CandidateSet& cs) {
  std::string out = "pole_id,kind,x,y,cost\n";
  for (const auto& p : cs.poles) {
    const char* kind = p.kind == PoleKind::Relay    ? "relay"
                       : p.kind == PoleKind::Sensor ? "sensor"
                                                    : "gateway";
    out += fmt_int(p.id);
    out += ',';
    out += kind;
    out += ',';
    out += fmt_real(p.pos.x);
    out += ',';
    out += fmt_real(p.pos.y);
    out += ',';
    out += fmt_real(p.cost);
    out += '\n';
  }
  return out;
}

}  // namespace relay
