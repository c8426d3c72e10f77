#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmkt/arc.hpp"

namespace pmkt {

/// Index k != i minimizing the directed distance (center_k - center_i) mod L.
/// Distance ties resolve to the smallest index. Throws population_error
/// when fewer than two firms exist. O(N) scan.
std::int32_t nearest_right_neighbor(std::span<const double> centers, double circumference,
                                    std::int32_t i);

std::int32_t nearest_right_neighbor(std::span<const Arc> arcs, std::int32_t i);

/// Right neighbor of every firm at once, O(N log N): sort by (center, index),
/// then each firm's neighbor is the next distinct position group (cyclic),
/// or the lowest other index within its own group when centers coincide.
std::vector<std::int32_t> nearest_right_neighbors(std::span<const double> centers,
                                                  double circumference);

} // namespace pmkt
