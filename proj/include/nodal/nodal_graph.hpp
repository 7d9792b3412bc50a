#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nodal/critical_points.hpp"
#include "nodal/surfaces.hpp"

namespace nodal {

struct GraphVertex {
    int id = 0;
    Vec2 pos;
    VertexClass cls = VertexClass::Interior;
    int degree = 0;
    int vanishing_order = 0;
    bool is_pole = false;
};

struct GraphEdge {
    int id = 0;
    int v_from = -1;
    int v_to = -1;
    std::vector<Vec2> polyline;   // wrapped chart points; may jump across seams
    bool on_boundary = false;
};

struct GraphFace {
    int id = 0;
    int sign = 0;                 // sign of u on the nodal domain
    double area_estimate = 0.0;
    bool is_disc = false;
};

/// The nodal set as an embedded metric graph.  Vertices are critical points
/// plus one dummy per circle component (and, on the rectangle, the four
/// chart corners); edges are nodal arcs; faces are the nodal domains.
/// Counts V and E are the paper-level ones: corner vertices are suppressed
/// by merging their two boundary edges, which leaves V - E unchanged.
/// The embedded (graph-level) counts including corners are kept alongside.
struct NodalGraph {
    SurfaceDescriptor surface;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    std::vector<GraphFace> faces;

    long long V = 0;       // |C(u)| + c(u)
    long long E = 0;
    long long F = 0;       // nodal count mu(u)
    int n_components = 0;  // components of N(u)
    int c_circles = 0;     // components homeomorphic to a circle
    bool cellular = false; // every face homeomorphic to a disc

    long long V_graph = 0; // embedded counts with corner vertices
    long long E_graph = 0;
};

/// Improved Euler inequality slack s = (V - E + F) - chi(M) - (n - 1) >= 0,
/// on paper-level counts.  Throws ExtractionError if the handshake
/// sum deg = 2E fails (internal inconsistency).
long long euler_slack(const NodalGraph& g, const SurfaceDescriptor& s);

/// (n, c): connected components of the graph, and how many of them are bare
/// circles (a single dummy vertex carrying one loop).
std::pair<int, int> components(const NodalGraph& g);

/// Degree histogram over C(u) (dummy and corner vertices excluded).
std::map<int, long long> degree_histogram(const NodalGraph& g);

/// Partition of C(u) by the C4 threshold deg >= 4.
struct C4Split {
    long long boundary_in_c4 = 0;   // |C_bnd ∩ C4|
    long long boundary_out_c4 = 0;  // |C_bnd \ C4|
    long long interior = 0;         // |C_int| (always in C4)
};
C4Split c4_split(const NodalGraph& g);

/// Fills V, E, F, n, c and the cellular flag from the assembled arrays.
/// Paper-level V and E suppress corner vertices: each degree-2 corner merges
/// its two boundary edges, and a boundary contour carrying no critical point
/// collapses to one dummy vertex with one loop, exactly as a bare circle
/// component does.
void finalize_counts(NodalGraph& g);

} // namespace nodal
