#pragma once

#include <vector>

#include "relay/scenario.hpp"

namespace relay {

/// Candidate pole. Ids are dense, 0..|V|-1, in lattice row-major order
/// followed by sensors then gateways.
struct Pole {
  int id = 0;
  Point2 pos;
  PoleKind kind = PoleKind::Relay;
  double cost = 0;  // w(v); 0 for sensors and gateways, which pre-exist
  bool operator==(const Pole&) const = default;
};

/// One directional antenna slot; id == pole * |O| + orientation.
struct Antenna {
  int id = 0;
  int pole = 0;
  int orientation = 0;  // azimuth = orientation * 360 / |O|
  bool operator==(const Antenna&) const = default;
};

struct CandidateSet {
  std::vector<Pole> poles;
  std::vector<Antenna> antennas;
  int orientations = 1;  // |O|

  int num_relays() const;
  bool operator==(const CandidateSet&) const = default;
};

/// Place relay candidates on the cell-centre lattice with pitch
/// cell_size/rho, drop those inside forbidden placement boxes
/// (boundary-inclusive), then append sensors and gateways at their exact
/// positions. Emits |V|*|O| antennas in phi order.
CandidateSet discretise(const Scenario& s);

inline double antenna_azimuth_deg(const Antenna& a, int orientations) {
  return a.orientation * 360.0 / orientations;
}

}  // namespace relay
