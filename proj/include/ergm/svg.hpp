#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ergm/network.hpp"

namespace ergm {

// Fruchterman-Reingold positions in the unit square; deterministic in seed.
std::vector<std::pair<double, double>> force_layout(const Network& net, std::uint64_t seed,
                                                    int iterations = 200);

// One SVG document with a 2x2 panel grid: the observed network upper left,
// up to three simulated draws after it, remaining panels blank. Byte-stable
// for a fixed seed.
std::string emit_drawing(const Network& observed, const std::vector<Network>& draws,
                         std::uint64_t seed);

} // namespace ergm
