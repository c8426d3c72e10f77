#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pmkt/arc.hpp"

namespace pmkt {

/// Scratch buffers for the endpoint sweep; reuse across steps to avoid
/// per-step allocation.
struct OverlapWorkspace {
    std::vector<double> starts; // wrapped left endpoint per arc (or sentinel)
    std::vector<double> ends;   // wrapped right endpoint per arc
    std::vector<std::pair<double, std::uint32_t>> events; // (position, slot*2 | is_start)
    std::vector<double> integral_at; // coverage integral at each arc's two endpoints
};

/// Per-firm total overlap: out[i] = sum over j != i of |arc_i ∩ arc_j|.
///
/// Endpoint sweep over the circle, O(N log N): walk the sorted arc
/// endpoints once, accumulating the integral of the coverage count; the
/// integral over arc i equals its own length plus its total overlap.
/// Accumulation is compensated so results agree with the pairwise sum to
/// well below 1e-9.
void total_overlaps(std::span<const double> centers, std::span<const double> radii,
                    double circumference, std::span<double> out, OverlapWorkspace& ws);

/// Convenience form over Arc values. Empty input yields empty output.
std::vector<double> total_overlaps(std::span<const Arc> arcs);

/// O(N^2) pairwise reference path. Retained as an independent cross-check
/// of the sweep; also the faster choice for very small populations.
std::vector<double> total_overlaps_pairwise(std::span<const Arc> arcs);

} // namespace pmkt
