#include "relay/discretise.hpp"

#include <algorithm>

namespace relay {

int CandidateSet::num_relays() const {
  return static_cast<int>(
      std::count_if(poles.begin(), poles.end(),
                    [](const Pole& p) { return p.kind == PoleKind::Relay; }));
}

CandidateSet discretise(const Scenario& s) {
  CandidateSet cs;
  cs.orientations = s.params.orientations;

  // Lattice anchored at the base-grid cell centre, pitch widened by 1/rho.
  // Positions come from one multiplication each so equal rho ratios give
  // bit-identical coordinates and coarser lattices nest into finer ones.
  const double pitch = s.cell_size / s.params.rho;
  const double anchor = s.cell_size / 2;
  auto excluded = [&s](double x, double y) {
    for (const auto& b : s.forbidden_placement)
      if (b.contains(x, y)) return true;
    return false;
  };
  int next_id = 0;
  for (int ky = 0;; ++ky) {
    const double y = anchor + ky * pitch;
    if (y >= s.y_max) break;
    for (int kx = 0;; ++kx) {
      const double x = anchor + kx * pitch;
      if (x >= s.x_max) break;
      if (excluded(x, y)) continue;
      cs.poles.push_back({next_id++, {x, y}, PoleKind::Relay, s.params.pole_cost_base});
    }
  }
  for (const auto& f : s.sensors)
    cs.poles.push_back({next_id++, f.pos, PoleKind::Sensor, 0});
  for (const auto& f : s.gateways)
    cs.poles.push_back({next_id++, f.pos, PoleKind::Gateway, 0});

  cs.antennas.reserve(cs.poles.size() * cs.orientations);
  for (const auto& p : cs.poles)
    for (int o = 0; o < cs.orientations; ++o)
      cs.antennas.push_back({p.id * cs.orientations + o, p.id, o});
  return cs;
}

}  // namespace relay
