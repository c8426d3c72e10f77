#include "pmkt/overlap.hpp"

#include <algorithm>
#include <cassert>

#include "pmkt/compensated.hpp"
#include "pmkt/errors.hpp"

namespace pmkt {

namespace {

// Endpoint sentinels stored in ws.starts.
constexpr double kEmptyArc = -2.0;
constexpr double kFullArc = -1.0;

} // namespace

void total_overlaps(std::span<const double> centers, std::span<const double> radii,
                    double circumference, std::span<double> out, OverlapWorkspace& ws) {
    const std::size_t n = radii.size();
    assert(centers.size() == n && out.size() == n);
    const double circ = circumference;

    // Wrapped endpoints per arc; arcs of length >= L cover the whole circle
    // and stay out of the event list, zero-radius arcs overlap nothing.
    ws.starts.resize(n);
    ws.ends.resize(n);
    ws.events.clear();
    std::int64_t full = 0;
    std::int64_t covering_origin = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = radii[i];
        if (r <= 0.0) {
            ws.starts[i] = kEmptyArc;
            continue;
        }
        if (2.0 * r >= circ) {
            ws.starts[i] = kFullArc;
            full += 1;
            continue;
        }
        const double s = wrap_position(centers[i] - r, circ);
        const double e = wrap_position(centers[i] + r, circ);
        if (s == e) {
            // 2r just under L and both endpoints rounded together: full arc.
            ws.starts[i] = kFullArc;
            full += 1;
            continue;
        }
        ws.starts[i] = s;
        ws.ends[i] = e;
        if (s > e) covering_origin += 1; // wrapped arc is active at x = 0
        const auto slot = static_cast<std::uint32_t>(2 * i);
        ws.events.emplace_back(s, (slot << 1) | 1u);
        ws.events.emplace_back(e, ((slot + 1u) << 1));
    }

    std::sort(ws.events.begin(), ws.events.end());

    // One left-to-right walk. Between events the coverage count is constant;
    // the integral value at each endpoint is scattered into the arc's slot.
    // Events at equal positions bound zero-width segments, so their order
    // cannot affect any integral value.
    ws.integral_at.resize(2 * n);
    CompensatedSum acc;
    std::int64_t cover = covering_origin;
    double prev = 0.0;
    for (const auto& [pos, meta] : ws.events) {
        acc.add(static_cast<double>(cover) * (pos - prev));
        prev = pos;
        ws.integral_at[meta >> 1] = acc.value();
        cover += (meta & 1u) ? 1 : -1;
    }
    acc.add(static_cast<double>(cover) * (circ - prev));
    const double whole = acc.value(); // integral of coverage over [0, L)

    for (std::size_t i = 0; i < n; ++i) {
        const double s = ws.starts[i];
        if (s == kEmptyArc) {
            out[i] = 0.0;
            continue;
        }
        if (s == kFullArc) {
            // Overlaps every non-full arc over that arc's length, and every
            // other full arc over the whole circle.
            out[i] = whole + static_cast<double>(full - 1) * circ;
            continue;
        }
        const double e = ws.ends[i];
        const double at_s = ws.integral_at[2 * i];
        const double at_e = ws.integral_at[2 * i + 1];
        double integral, span_len;
        if (s < e) {
            integral = at_e - at_s;
            span_len = e - s;
        } else {
            integral = (whole - at_s) + at_e;
            span_len = (circ - s) + e;
        }
        // Coverage over the arc counts the arc itself once everywhere; full
        // arcs are not in the event list and overlap it completely.
        out[i] = (integral - span_len) + static_cast<double>(full) * span_len;
    }
}

std::vector<double> total_overlaps(std::span<const Arc> arcs) {
    const std::size_t n = arcs.size();
    std::vector<double> out(n);
    if (n == 0) return out;

    const double circ = arcs[0].circumference;
    std::vector<double> centers(n), radii(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (arcs[i].circumference != circ)
            throw config_error("total_overlaps: arcs on different circumferences");
        centers[i] = arcs[i].center;
        radii[i] = arcs[i].radius;
    }
    OverlapWorkspace ws;
    total_overlaps(centers, radii, circ, out, ws);
    return out;
}

std::vector<double> total_overlaps_pairwise(std::span<const Arc> arcs) {
    const std::size_t n = arcs.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            acc.add(arc_overlap(arcs[i], arcs[j]));
        }
        out[i] = acc.value();
    }
    return out;
}

} // namespace pmkt
