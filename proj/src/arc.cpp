#include "pmkt/arc.hpp"

#include <algorithm>

#include "pmkt/errors.hpp"

namespace pmkt {

double arc_overlap(const Arc& a, const Arc& b) {
    if (a.circumference != b.circumference)
        throw config_error("arc_overlap: arcs on different circumferences");

    const double circ = a.circumference;
    const double d = circular_distance(a.center, b.center, circ);
    const double shorter = std::min(2.0 * a.radius, 2.0 * b.radius);
    const double reach = a.radius + b.radius;

    // Intersection of two intervals at center distance `dist` on the line:
    // min(2r_a, 2r_b, r_a + r_b - dist), floored at zero. Every term is
    // symmetric in (a, b), so the result is bit-exactly symmetric. The arcs
    // can meet between the centers and around the far side of the circle;
    // with radii <= L/2 the two pieces never double-count.
    const auto piece = [&](double dist) {
        return std::max(0.0, std::min(shorter, reach - dist));
    };
    return piece(d) + piece(circ - d);
}

} // namespace pmkt
