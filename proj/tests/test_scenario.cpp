#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relay/scenario.hpp"
#include "test_util.hpp"

using namespace relay;

namespace {

const char* kMinimal =
    "ma 20 20 10\n"
    "elevation\n"
    "0 0\n"
    "0 0\n"
    "sensor 5 10\n"
    "gateway 15 10\n";

Scenario random_scenario(relaytest::Rng& rng) {
  Scenario s;
  const int cols = rng.intin(1, 4), rows = rng.intin(1, 4);
  s.cell_size = rng.range(1, 20);
  s.x_max = s.cell_size * (cols - rng.range(0, 0.9));
  s.y_max = s.cell_size * (rows - rng.range(0, 0.9));
  s.pole_height = rng.range(1, 12);
  s.elevation.assign(rows, std::vector<double>(cols));
  for (auto& row : s.elevation)
    for (auto& v : row) v = rng.range(-50, 50);
  for (int k = rng.intin(0, 2); k > 0; --k)
    s.obstacles.push_back({{rng.range(0, 5), rng.range(0, 5), rng.range(6, 10),
                            rng.range(6, 10)},
                           rng.range(1, 30)});
  for (int k = rng.intin(0, 2); k > 0; --k)
    s.forbidden_placement.push_back(
        {rng.range(0, 5), rng.range(0, 5), rng.range(6, 10), rng.range(6, 10)});
  for (int k = rng.intin(0, 1); k > 0; --k)
    s.forbidden_link.push_back({rng.range(0, 5), rng.range(0, 5), rng.range(6, 10),
                                rng.range(6, 10), rng.range(-5, 0), rng.range(1, 40)});
  for (int k = rng.intin(1, 3); k > 0; --k)
    s.sensors.push_back(
        {{rng.range(0, s.x_max), rng.range(0, s.y_max)}, PoleKind::Sensor});
  for (int k = rng.intin(1, 2); k > 0; --k)
    s.gateways.push_back(
        {{rng.range(0, s.x_max), rng.range(0, s.y_max)}, PoleKind::Gateway});
  s.params.fault_tolerance = rng.intin(0, 3);
  s.params.max_hops = rng.intin(1, 8);
  s.params.max_antennas_sensor = rng.intin(4, 6);
  s.params.antenna_cost = rng.range(0, 4);
  s.params.link_penalty = rng.range(0, 0.5);
  s.params.pole_cost_base = rng.range(0, 10);
  s.params.rho = kRhoSweep[rng.intin(0, 6)];
  s.params.orientations = rng.intin(1, 8);
  s.params.beam_halfwidth = rng.range(10, 180);
  s.params.radio_range = rng.range(5, 500);
  return s;
}

}  // namespace

TEST_CASE("minimal scenario parses with defaults") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.grid_cols() == 2);
  CHECK(s.grid_rows() == 2);
  CHECK(s.elevation.size() == 2);
  CHECK(s.elevation[0].size() == 2);
  CHECK(s.sensors.size() == 1);
  CHECK(s.gateways.size() == 1);
  CHECK(s.pole_height == 6);
  CHECK(s.params.fault_tolerance == 1);
  CHECK(s.params.max_hops == 5);
  CHECK(s.params.max_antennas_gateway == 4);
  CHECK(s.params.orientations == 4);
  CHECK(s.params.beam_halfwidth == 45);
  CHECK(s.params.rho == 1);
  CHECK(validate_scenario(s).empty());
}

TEST_CASE("serialization is canonical and stable") {
  const Scenario s = parse_scenario(kMinimal);
  const std::string canon = serialize_scenario(s);
  CHECK(parse_scenario(canon) == s);
  CHECK(serialize_scenario(parse_scenario(canon)) == canon);
  // empty sections are omitted
  CHECK(canon.find("obstacle") == std::string::npos);
  CHECK(canon.find("forbid_place") == std::string::npos);
  // all params are explicit in canonical form
  CHECK(canon.find("param fault_tolerance 1\n") != std::string::npos);
  CHECK(canon.find("param radio_range 1000\n") != std::string::npos);
}

TEST_CASE("minimal fixture is byte-identical under canonicalization") {
  const std::string text = relaytest::fixture("minimal.scn");
  CHECK(serialize_scenario(parse_scenario(text)) == text);
}

TEST_CASE("10x10 fixture echoes exact field values") {
  const Scenario s = parse_scenario(relaytest::fixture("fixture10x10.scn"));
  CHECK(s.x_max == 100);
  CHECK(s.y_max == 100);
  CHECK(s.cell_size == 10);
  CHECK(s.pole_height == 8);
  CHECK(s.params.fault_tolerance == 1);
  CHECK(s.params.max_hops == 4);
  CHECK(s.params.radio_range == 60);
  REQUIRE(s.elevation.size() == 10);
  CHECK(s.elevation[0][5] == 1);
  CHECK(s.elevation[9][9] == 8);
  REQUIRE(s.obstacles.size() == 1);
  CHECK(s.obstacles[0].footprint == Box2{40, 40, 60, 60});
  CHECK(s.obstacles[0].height == 25);
  REQUIRE(s.forbidden_placement.size() == 1);
  REQUIRE(s.forbidden_link.size() == 1);
  CHECK(s.forbidden_link[0].z1 == 50);
  REQUIRE(s.sensors.size() == 2);
  CHECK(s.sensors[1].pos == Point2{85, 15});
  REQUIRE(s.gateways.size() == 1);
  CHECK(validate_scenario(s).empty());

  const Scenario round = parse_scenario(serialize_scenario(s));
  CHECK(round == s);
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("missing elevation row") {
    const char* text =
        "ma 20 20 10\n"
        "elevation\n"
        "0 0\n"
        "sensor 5 10\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text),
                         doctest::Contains("expected 2 rows"), ScenarioError);
  }
  SUBCASE("row too short") {
    const char* text =
        "ma 20 20 10\nelevation\n0 0\n0\n";
    try {
      parse_scenario(text);
      FAIL("expected a throw");
    } catch (const ScenarioError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("grid needs 2") != std::string::npos);
    }
  }
  SUBCASE("sensor outside MA") {
    const std::string text = std::string(kMinimal) + "sensor 25 5\n";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("outside the MA"),
                         ScenarioError);
  }
  SUBCASE("unknown directive") {
    CHECK_THROWS_WITH_AS(parse_scenario("ma 10 10 10\nfoo 1\nelevation\n0\n"),
                         doctest::Contains("unknown directive"), ScenarioError);
  }
  SUBCASE("unknown param") {
    CHECK_THROWS_WITH_AS(
        parse_scenario("ma 10 10 10\nparam gain 3\nelevation\n0\n"),
        doctest::Contains("unknown param"), ScenarioError);
  }
  SUBCASE("duplicate ma") {
    CHECK_THROWS_WITH_AS(parse_scenario("ma 10 10 10\nma 10 10 10\nelevation\n0\n"),
                         doctest::Contains("duplicate"), ScenarioError);
  }
  SUBCASE("bad number") {
    try {
      parse_scenario("ma 10 10 10\nelevation\nx\n");
      FAIL("expected a throw");
    } catch (const ScenarioError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-integer int param") {
    CHECK_THROWS_WITH_AS(
        parse_scenario("ma 10 10 10\nparam max_hops 2.5\nelevation\n0\n"),
        doctest::Contains("integer"), ScenarioError);
  }
}

TEST_CASE("round-trip is identity on random scenarios") {
  relaytest::Rng rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const Scenario s = random_scenario(rng);
    const std::string text = serialize_scenario(s);
    CAPTURE(trial);
    CHECK(parse_scenario(text) == s);
    CHECK(serialize_scenario(parse_scenario(text)) == text);
  }
}

TEST_CASE("validate_scenario flags broken invariants") {
  const Scenario base = parse_scenario(relaytest::fixture("fixture10x10.scn"));
  REQUIRE(validate_scenario(base).empty());

  SUBCASE("sensor inside a forbidden placement box") {
    Scenario s = base;
    s.sensors[0].pos = {10, 10};
    const auto v = validate_scenario(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("sensor 0") != std::string::npos);
    CHECK(v[0].find("forbidden placement") != std::string::npos);
  }
  SUBCASE("F+1 exceeding MS") {
    Scenario s = base;
    s.params.fault_tolerance = 4;
    const auto v = validate_scenario(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("fault_tolerance") != std::string::npos);
    CHECK(v[0].find("max_antennas_sensor") != std::string::npos);
  }
  SUBCASE("duplicate fixed pole positions") {
    Scenario s = base;
    s.gateways.push_back({s.sensors[0].pos, PoleKind::Gateway});
    const auto v = validate_scenario(s);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("duplicate position") != std::string::npos);
  }
  SUBCASE("rho off the sweep set") {
    Scenario s = base;
    s.params.rho = 0.45;
    CHECK(validate_scenario(s).size() == 1);
  }
  SUBCASE("degenerate obstacle box") {
    Scenario s = base;
    s.obstacles[0].footprint = {60, 40, 40, 60};
    CHECK(!validate_scenario(s).empty());
  }
  SUBCASE("elevation dimension mismatch") {
    Scenario s = base;
    s.elevation.pop_back();
    CHECK(!validate_scenario(s).empty());
  }
}

TEST_CASE("terrain interpolation is bilinear with clamped borders") {
  Scenario s;
  s.x_max = 20;
  s.y_max = 10;
  s.cell_size = 10;
  s.elevation = {{0, 10}};
  CHECK(s.terrain_at(5, 5) == 0);
  CHECK(s.terrain_at(15, 5) == 10);
  CHECK(s.terrain_at(10, 5) == doctest::Approx(5));
  CHECK(s.terrain_at(0, 5) == 0);     // clamped left
  CHECK(s.terrain_at(20, 5) == 10);   // clamped right
  CHECK(s.terrain_at(12, 0) == doctest::Approx(7));  // y clamped
}
