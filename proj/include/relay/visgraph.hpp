#pragma once

#include <vector>

#include "relay/discretise.hpp"
#include "relay/scenario.hpp"

namespace relay {

/// Directed radio link between two antennas on distinct poles.
struct Link {
  int id = 0;
  int from_pole = 0;    // tau(e), transmitting pole
  int to_pole = 0;      // sigma(e), receiving pole
  int from_antenna = 0; // alpha(e)
  int to_antenna = 0;   // beta(e)
  bool operator==(const Link&) const = default;
};

struct VisibilityGraph {
  std::vector<Pole> poles;
  std::vector<Antenna> antennas;
  int orientations = 1;
  std::vector<Link> links;
  Params params;

  std::vector<int> sensor_poles() const;   // ids, ascending
  std::vector<int> gateway_poles() const;  // ids, ascending
  std::vector<int> relay_poles() const;    // ids, ascending
};

/// True iff the 3-D segment p-q clears the bilinear terrain surface and
/// every obstacle top at each sample. Samples are uniform, n = ceil(len/step)
/// intervals including both endpoints; the segment endpoints are swapped
/// into a canonical order first so the test is exactly symmetric.
/// step <= 0 selects the default cell_size/4.
bool line_of_sight(const Point3& p, const Point3& q, const Scenario& s,
                   double step = 0);

/// Antenna endpoint in 3-D: ground elevation + pole height.
Point3 antenna_point(const Pole& p, const Scenario& s);

/// Range, both beam cones, line of sight, and forbidden-link clearance.
bool link_feasible(const Antenna& a1, const Antenna& a2,
                   const CandidateSet& cs, const Scenario& s);

/// All feasible ordered antenna pairs, in (from_antenna, to_antenna)
/// lexicographic order, ids dense. threads = 0 picks the hardware
/// concurrency; the output is identical for any thread count.
VisibilityGraph build_visibility_graph(const CandidateSet& cs,
                                       const Scenario& s, int threads = 0);

/// CSV dump, `link_id,tau,sigma,alpha,beta` with header.
std::string graph_csv(const VisibilityGraph& g);

/// CSV dump, `pole_id,kind,x,y,cost` with header.
std::string poles_csv(const CandidateSet& cs);

}  // namespace relay
