#include "pmkt/neighbor.hpp"

#include <algorithm>
#include <numeric>

#include "pmkt/errors.hpp"

namespace pmkt {

std::int32_t nearest_right_neighbor(std::span<const double> centers, double circumference,
                                    std::int32_t i) {
    const std::int32_t n = static_cast<std::int32_t>(centers.size());
    if (n < 2) throw population_error("nearest_right_neighbor: need at least two firms");

    std::int32_t best = -1;
    double best_dist = 0.0;
    for (std::int32_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double d = directed_distance(centers[static_cast<std::size_t>(i)],
                                           centers[static_cast<std::size_t>(k)], circumference);
        if (best < 0 || d < best_dist) { // strict: ties keep the smallest index
            best = k;
            best_dist = d;
        }
    }
    return best;
}

std::int32_t nearest_right_neighbor(std::span<const Arc> arcs, std::int32_t i) {
    std::vector<double> centers(arcs.size());
    for (std::size_t k = 0; k < arcs.size(); ++k) centers[k] = arcs[k].center;
    return nearest_right_neighbor(centers, arcs.empty() ? 1.0 : arcs[0].circumference, i);
}

std::vector<std::int32_t> nearest_right_neighbors(std::span<const double> centers,
                                                  double circumference) {
    (void)circumference;
    const std::size_t n = centers.size();
    if (n < 2) throw population_error("nearest_right_neighbors: need at least two firms");

    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        const double ca = centers[static_cast<std::size_t>(a)];
        const double cb = centers[static_cast<std::size_t>(b)];
        if (ca != cb) return ca < cb;
        return a < b;
    });

    std::vector<std::int32_t> result(n);

    // Walk position groups: coincident firms are mutual zero-distance
    // neighbors (lowest other index wins); otherwise the neighbor is the
    // lowest index at the next distinct position, cyclically.
    std::size_t g = 0;
    while (g < n) {
        std::size_t g_end = g + 1;
        const double pos = centers[static_cast<std::size_t>(order[g])];
        while (g_end < n && centers[static_cast<std::size_t>(order[g_end])] == pos) ++g_end;

        for (std::size_t p = g; p < g_end; ++p) {
            const std::int32_t self = order[p];
            if (g_end - g > 1) {
                result[static_cast<std::size_t>(self)] = (self == order[g]) ? order[g + 1]
                                                                            : order[g];
            } else {
                result[static_cast<std::size_t>(self)] = order[g_end == n ? 0 : g_end];
            }
        }
        g = g_end;
    }
    return result;
}

} // namespace pmkt
