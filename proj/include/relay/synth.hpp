#pragma once

#include <cstdint>
#include <string>

#include "relay/scenario.hpp"

namespace relay {

enum class SizeClass { Tiny, Small, Medium };

std::optional<SizeClass> parse_size_class(std::string_view name);

/// Deterministic pseudo-random scenario: bumpy terrain, a few obstacle and
/// forbidden boxes, 1-4 sensors, 1-2 gateways. Same (seed, size) always
/// yields the same scenario, independent of platform.
Scenario synth_scenario(uint64_t seed, SizeClass size);

}  // namespace relay
