#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "../src/fsutil.hpp"

namespace relaytest {

inline std::string fixture_path(const std::string& name) {
  return std::string(RELAY_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture(const std::string& name) {
  return relay::read_file(fixture_path(name));
}

// Seeded draws with explicit mapping, reproducible everywhere.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  double unit() { return (eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + unit() * (hi - lo); }
  int intin(int lo, int hi) {
    return lo + static_cast<int>(eng() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return unit() < p; }
};

}  // namespace relaytest
