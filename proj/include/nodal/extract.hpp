#pragma once

#include "nodal/critical_points.hpp"
#include "nodal/grid.hpp"
#include "nodal/nodal_graph.hpp"

namespace nodal {

struct ExtractOptions {
    DetectOptions detect;
};

/// Full pipeline: samples u on the grid, traces the zero set by marching
/// squares with bisection-refined roots, assembles arcs, carves a disk
/// around every critical point and attaches the cut arcs to it (which makes
/// the arc count at a vertex a ring-crossing count, robust against marching
/// ambiguities near the vertex), adds one dummy vertex per circle component,
/// decomposes the rectangle boundary at corners and boundary critical
/// points, and labels the nodal domains by sign flood fill.
///
/// Throws std::invalid_argument when u is numerically zero on the grid and
/// ExtractionError on degenerate or inconsistent extraction states.
NodalGraph extract_nodal_graph(const Eigenfunction& u, const SurfaceDescriptor& s,
                               const GridSpec& grid, const ExtractOptions& opts = {});

/// Vanishing order of u at a nodal point z: the smallest |alpha| with a
/// nonvanishing derivative.  Flat charts scan exact partial derivatives
/// against a relative threshold of 1e-7 per Taylor scale lambda^(s/2); the
/// sphere uses the amplitude decay of u on shrinking rings of the local
/// orthographic chart, which stays reliable at the high-order pole zeros
/// where finite differences drown in rounding noise.
int vanishing_order(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z,
                    int cap = 16);

/// As vanishing_order, with the probe rings capped at max_ring_radius:
/// needed when z lies close to another zero of the gradient, whose own
/// order would otherwise dominate the decay measurement.  Non-positive cap
/// means the default schedule.  Flat-chart families are pointwise-exact and
/// ignore the cap.
int vanishing_order_capped(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z,
                           int cap, double max_ring_radius);

} // namespace nodal
