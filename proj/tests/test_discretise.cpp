#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "relay/discretise.hpp"
#include "test_util.hpp"

using namespace relay;

namespace {

Scenario flat(double extent, double cell) {
  Scenario s;
  s.x_max = s.y_max = extent;
  s.cell_size = cell;
  s.elevation.assign(s.grid_rows(), std::vector<double>(s.grid_cols(), 0));
  s.sensors.push_back({{extent * 0.12, extent * 0.52}, PoleKind::Sensor});
  s.gateways.push_back({{extent * 0.88, extent * 0.52}, PoleKind::Gateway});
  return s;
}

std::set<std::pair<double, double>> relay_positions(const CandidateSet& cs) {
  std::set<std::pair<double, double>> out;
  for (const auto& p : cs.poles)
    if (p.kind == PoleKind::Relay) out.insert({p.pos.x, p.pos.y});
  return out;
}

}  // namespace

TEST_CASE("full lattice on a flat 4x4 MA") {
  Scenario s = flat(40, 10);
  const CandidateSet cs = discretise(s);
  CHECK(cs.num_relays() == 16);
  CHECK(cs.poles.size() == 18);
  CHECK(cs.antennas.size() == 18 * 4);
  // row-major lattice, then the fixed poles
  CHECK(cs.poles[0].pos == Point2{5, 5});
  CHECK(cs.poles[1].pos == Point2{15, 5});
  CHECK(cs.poles[4].pos == Point2{5, 15});
  CHECK(cs.poles[16].kind == PoleKind::Sensor);
  CHECK(cs.poles[17].kind == PoleKind::Gateway);
  CHECK(cs.poles[16].cost == 0);
  CHECK(cs.poles[0].cost == s.params.pole_cost_base);
  for (size_t k = 0; k < cs.poles.size(); ++k)
    CHECK(cs.poles[k].id == static_cast<int>(k));
  // phi order: antenna id == pole * |O| + orientation
  for (size_t a = 0; a < cs.antennas.size(); ++a) {
    CHECK(cs.antennas[a].id == static_cast<int>(a));
    CHECK(cs.antennas[a].pole == static_cast<int>(a) / 4);
    CHECK(cs.antennas[a].orientation == static_cast<int>(a) % 4);
  }
}

TEST_CASE("forbidden placement excludes candidates, boundary inclusive") {
  Scenario s = flat(40, 10);
  SUBCASE("everything forbidden leaves only the fixed poles") {
    s.forbidden_placement.push_back({0, 0, 40, 40});
    s.sensors[0].pos = {4.8, 20.8};  // fixed poles stay regardless
    const CandidateSet cs = discretise(s);
    CHECK(cs.num_relays() == 0);
    CHECK(cs.poles.size() == 2);
    CHECK(cs.antennas.size() == 8);
  }
  SUBCASE("a point exactly on a box edge is excluded") {
    s.forbidden_placement.push_back({5, 5, 15, 15});  // corners on lattice points
    const CandidateSet cs = discretise(s);
    CHECK(cs.num_relays() == 12);  // the 2x2 block at (5,5)..(15,15) is gone
    const auto pos = relay_positions(cs);
    CHECK(!pos.count({5, 5}));
    CHECK(!pos.count({15, 15}));
    CHECK(pos.count({25, 5}));
  }
}

TEST_CASE("rho coarsens the lattice and coarse nests into fine") {
  Scenario s = flat(100, 10);
  const CandidateSet fine = discretise(s);
  s.params.rho = 0.5;
  const CandidateSet coarse = discretise(s);
  CHECK(fine.num_relays() == 100);
  CHECK(coarse.num_relays() == 25);

  const auto fine_pos = relay_positions(fine);
  for (const auto& p : relay_positions(coarse)) CHECK(fine_pos.count(p));

  // enumeration oracle: pitch 20, anchored at 5
  std::set<std::pair<double, double>> expect;
  for (double y = 5; y < 100; y += 20)
    for (double x = 5; x < 100; x += 20) expect.insert({x, y});
  CHECK(relay_positions(coarse) == expect);
}

TEST_CASE("rho sweep yields strictly growing candidate sets") {
  Scenario s = flat(120, 10);
  int prev = -1;
  for (double rho : {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
    s.params.rho = rho;
    const int n = discretise(s).num_relays();
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("determinism: identical scenario, identical output") {
  const Scenario s = parse_scenario(relaytest::fixture("fixture10x10.scn"));
  CHECK(discretise(s) == discretise(s));
}
