#pragma once

#include <span>

namespace pmkt {

/// Maps x into [0, L). Expects |x| within one period of the domain, which
/// holds for every internal use (centers in [0,L), radii <= L/2).
inline double wrap_position(double x, double circumference) {
    if (x < 0.0) x += circumference;
    if (x >= circumference) x -= circumference;
    if (x >= circumference || x < 0.0) x = 0.0; // rounding right at the seam
    return x;
}

/// Folded circular distance between two positions, in [0, L/2].
inline double circular_distance(double a, double b, double circumference) {
    double d = a - b;
    if (d < 0.0) d = -d;
    if (d > circumference - d) d = circumference - d;
    return d;
}

/// Directed distance from `from` to `to` walking in +x direction, in [0, L).
inline double directed_distance(double from, double to, double circumference) {
    double d = to - from;
    if (d < 0.0) d += circumference;
    return d;
}

/// A firm's selling interval on the periodic market: the open arc
/// (center - radius, center + radius) mod circumference.
struct Arc {
    double center = 0.0;        // in [0, L)
    double radius = 0.0;        // in [0, L/2]
    double circumference = 1.0; // L

    /// Arc length, i.e. the selling area 2r.
    double length() const { return 2.0 * radius; }
};

/// True iff x lies strictly inside the arc (boundary points excluded).
inline bool arc_contains(const Arc& a, double x) {
    return circular_distance(x, a.center, a.circumference) < a.radius;
}

/// Total length of the intersection of two arcs on the circle. Arcs can
/// meet on both sides of the circle, so both gaps are examined.
/// Throws config_error if the arcs live on different circumferences.
double arc_overlap(const Arc& a, const Arc& b);

} // namespace pmkt
