#include "relay/synth.hpp"

#include <cmath>
#include <random>

namespace relay {
namespace {

// Raw engine draws with explicit mapping; std distributions are not
// reproducible across standard libraries.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  double unit() { return (eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + unit() * (hi - lo); }
  int intin(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng() % static_cast<uint64_t>(hi - lo + 1));
  }
};

// Snap to a decimal grid; dividing by the inverse keeps the result the
// nearest double to the decimal, so it prints without float noise.
double snap(double v, double inv_step) { return std::nearbyint(v * inv_step) / inv_step; }

struct Profile {
  double extent;
  double cell;
  double range;
  int min_sensors, max_sensors;
  int min_gateways, max_gateways;
  int max_obstacles;
  int max_forbid;
};

Profile profile_for(SizeClass size) {
  switch (size) {
    case SizeClass::Tiny: return {40, 10, 25, 1, 2, 1, 1, 1, 1};
    case SizeClass::Small: return {80, 10, 30, 1, 3, 1, 2, 2, 2};
    case SizeClass::Medium: return {120, 10, 25, 2, 2, 1, 2, 3, 2};
  }
  return {40, 10, 25, 1, 1, 1, 1, 1, 1};
}

}  // namespace

std::optional<SizeClass> parse_size_class(std::string_view name) {
  if (name == "tiny") return SizeClass::Tiny;
  if (name == "small") return SizeClass::Small;
  if (name == "medium") return SizeClass::Medium;
  return std::nullopt;
}

Scenario synth_scenario(uint64_t seed, SizeClass size) {
  const Profile pf = profile_for(size);
  Rng rng(seed * 0x9E3779B97F4A7C15ull + static_cast<uint64_t>(size) + 1);

  Scenario s;
  s.x_max = pf.extent;
  s.y_max = pf.extent;
  s.cell_size = pf.cell;
  s.pole_height = 6;
  s.params.radio_range = pf.range;
  s.params.rho = 1;

  // Terrain: a handful of smooth bumps over a flat base.
  const int rows = s.grid_rows(), cols = s.grid_cols();
  struct Bump {
    double cx, cy, amp, sigma;
  };
  std::vector<Bump> bumps(static_cast<size_t>(rng.intin(2, 4)));
  for (auto& b : bumps) {
    b.cx = rng.range(0, s.x_max);
    b.cy = rng.range(0, s.y_max);
    b.amp = rng.range(2, 14);
    b.sigma = rng.range(s.cell_size, s.x_max / 3);
  }
  s.elevation.assign(rows, std::vector<double>(cols, 0));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double x = (c + 0.5) * s.cell_size, y = (r + 0.5) * s.cell_size;
      double h = 0;
      for (const auto& b : bumps) {
        const double dx = x - b.cx, dy = y - b.cy;
        h += b.amp * std::exp(-(dx * dx + dy * dy) / (2 * b.sigma * b.sigma));
      }
      s.elevation[r][c] = snap(h, 100);
    }

  auto rand_box = [&](double max_w) {
    const double w = rng.range(s.cell_size * 0.5, max_w);
    const double h = rng.range(s.cell_size * 0.5, max_w);
    const double x0 = snap(rng.range(0, s.x_max - w), 10);
    const double y0 = snap(rng.range(0, s.y_max - h), 10);
    return Box2{x0, y0, snap(x0 + w, 10), snap(y0 + h, 10)};
  };
  const int n_obstacles = rng.intin(0, pf.max_obstacles);
  for (int k = 0; k < n_obstacles; ++k)
    s.obstacles.push_back({rand_box(s.cell_size * 2), snap(rng.range(8, 30), 10)});
  const int n_forbid = rng.intin(0, pf.max_forbid);
  for (int k = 0; k < n_forbid; ++k)
    s.forbidden_placement.push_back(rand_box(s.cell_size * 2));
  if (rng.intin(0, 1) == 1) {
    Box2 b = rand_box(s.cell_size * 1.5);
    s.forbidden_link.push_back({b.x0, b.y0, b.x1, b.y1, 0, snap(rng.range(10, 40), 10)});
  }

  auto place = [&](PoleKind kind) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double margin = s.cell_size / 2;
      Point2 p{snap(rng.range(margin, s.x_max - margin), 10),
               snap(rng.range(margin, s.y_max - margin), 10)};
      bool clash = false;
      for (const auto& b : s.forbidden_placement)
        clash = clash || b.contains(p.x, p.y);
      for (const auto& f : s.sensors) clash = clash || f.pos == p;
      for (const auto& f : s.gateways) clash = clash || f.pos == p;
      if (clash) continue;
      (kind == PoleKind::Sensor ? s.sensors : s.gateways).push_back({p, kind});
      return;
    }
  };
  const int n_sensors = rng.intin(pf.min_sensors, pf.max_sensors);
  const int n_gateways = rng.intin(pf.min_gateways, pf.max_gateways);
  for (int k = 0; k < n_sensors; ++k) place(PoleKind::Sensor);
  for (int k = 0; k < n_gateways; ++k) place(PoleKind::Gateway);

  return s;
}

}  // namespace relay
