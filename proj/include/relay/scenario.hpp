#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relay/geometry.hpp"

namespace relay {

/// All numeric knobs of the placement problem. Defaults apply when a
/// scenario file omits the corresponding `param` line.
struct Params {
  int fault_tolerance = 1;       // F
  int max_hops = 5;              // H
  int max_antennas_gateway = 4;  // MG
  int max_antennas_sensor = 4;   // MS
  int max_antennas_relay = 4;    // MR
  int max_links_per_pole = 4;    // ML, radio channels
  double antenna_cost = 1;       // c
  double link_penalty = 0;       // delta
  double pole_cost_base = 1;     // w(v) for relay candidates
  double rho = 1;                // lattice density factor in (0,1]
  int orientations = 4;          // |O|
  double beam_halfwidth = 45;    // degrees, acceptance half-angle
  double radio_range = 1000;     // metres

  bool operator==(const Params&) const = default;
};

/// Sweep set rho is drawn from (100% down to 40%).
inline constexpr double kRhoSweep[] = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4};

enum class PoleKind { Relay, Sensor, Gateway };

struct FixedPole {
  Point2 pos;
  PoleKind kind = PoleKind::Sensor;  // sensor or gateway only
  bool operator==(const FixedPole&) const = default;
};

/// The monitored area: terrain, forbidden areas, fixed poles, parameters.
/// Elevation is a dense row-major grid, rows along y, one value per base
/// cell; elevation[r][c] is the height of the cell centred at
/// ((c+0.5)*cell_size, (r+0.5)*cell_size).
struct Scenario {
  double x_max = 0;
  double y_max = 0;
  double cell_size = 0;
  std::vector<std::vector<double>> elevation;
  std::vector<Obstacle> obstacles;
  std::vector<Box2> forbidden_placement;
  std::vector<Box3> forbidden_link;
  std::vector<FixedPole> sensors;
  std::vector<FixedPole> gateways;
  double pole_height = 6;  // L, antenna elevation above ground
  Params params;

  bool operator==(const Scenario&) const = default;

  int grid_cols() const;  // ceil(x_max / cell_size)
  int grid_rows() const;  // ceil(y_max / cell_size)

  /// Terrain height at (x,y), bilinear between cell centres, clamped at
  /// the borders.
  double terrain_at(double x, double y) const;

  bool inside_ma(double x, double y) const {
    return x >= 0 && x <= x_max && y >= 0 && y <= y_max;
  }
};

/// Parse failure; line is 1-based within the input text.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parse the line-oriented scenario format. Unknown directives and params
/// are rejected. Throws ScenarioError.
Scenario parse_scenario(std::string_view text);

/// Canonical text form; parse_scenario(serialize_scenario(s)) == s and the
/// output is byte-stable.
std::string serialize_scenario(const Scenario& s);

/// Invariant check. Returns one human-readable violation per broken rule,
/// each naming the offending field; empty means valid.
std::vector<std::string> validate_scenario(const Scenario& s);

}  // namespace relay
