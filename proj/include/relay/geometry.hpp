#pragma once

#include <cmath>
#include <compare>
#include <optional>

namespace relay {

struct Point2 {
  double x = 0;
  double y = 0;
  bool operator==(const Point2&) const = default;
};

struct Point3 {
  double x = 0;
  double y = 0;
  double z = 0;
  bool operator==(const Point3&) const = default;
};

/// Axis-aligned rectangle in the MA plane, metres.
struct Box2 {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool operator==(const Box2&) const = default;

  // Boundary-inclusive containment.
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

/// Axis-aligned volume, z is absolute elevation.
struct Box3 {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0, z0 = 0, z1 = 0;
  bool operator==(const Box3&) const = default;
};

/// Solid volume standing on the terrain; blocks line of sight up to
/// ground + height at every (x,y) of its footprint.
struct Obstacle {
  Box2 footprint;
  double height = 0;
  bool operator==(const Obstacle&) const = default;
};

inline double dist2(const Point2& a, const Point2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

inline double dist3(const Point3& a, const Point3& b) {
  const double dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Absolute angular difference of two azimuths, folded into [0, 180].
inline double azimuth_diff_deg(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

/// Azimuth of the direction (dx,dy) in degrees, 0 = +x axis, counter-clockwise,
/// normalized to [0, 360).
inline double azimuth_deg(double dx, double dy) {
  double a = std::atan2(dy, dx) * 180.0 / M_PI;
  if (a < 0) a += 360.0;
  return a;
}

/// True iff segment p-q intersects the closed box (touching counts).
bool segment_intersects_box(const Point3& p, const Point3& q, const Box3& b);

}  // namespace relay
