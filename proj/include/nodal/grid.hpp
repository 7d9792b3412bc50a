#pragma once

#include <vector>

#include "nodal/eigenfunction.hpp"
#include "nodal/surfaces.hpp"

namespace nodal {

struct GridSpec {
    int resolution = 512;        // sample nodes per axis
    double eps_root = 1e-10;     // bisection width for arc roots, chart units
    double eps_grad = 1e-8;      // |grad u| tolerance, relative to sqrt(lambda)*|u|_inf
    double eps_val = 1e-8;       // |u| tolerance, relative to |u|_inf
    double snap_factor = 2.0;    // snapping radius in cell diagonals

    void validate() const;
};

/// Eigenfunction values sampled on the surface-adapted node grid.
///
/// Torus: resolution^2 cell-centred nodes, both axes periodic.  Sphere:
/// phi periodic, theta rows cell-centred in (0, pi); the two pole caps are
/// handled by the extraction stage.  Rectangle: cell-centred interior nodes
/// plus an explicit boundary ring.  Since u vanishes identically on the
/// boundary, ring nodes store the inward normal derivative instead — the
/// sign u takes just inside — which makes marching squares uniform across
/// the chart; corners store the inward mixed derivative.
struct ScalarField {
    SurfaceDescriptor surface;
    GridSpec spec;
    int nx = 0, ny = 0;
    bool x_periodic = false, y_periodic = false;
    std::vector<double> values;   // row-major: j * nx + i
    double max_abs = 0.0;         // sup over real (non-ring) nodes

    double at(int i, int j) const { return values[(size_t)j * nx + i]; }
    bool positive(int i, int j) const { return at(i, j) >= 0.0; }
    bool virtual_node(int i, int j) const {
        return surface.kind == SurfaceKind::Rectangle &&
               (i == 0 || i == nx - 1 || j == 0 || j == ny - 1);
    }
    double node_x(int i) const;
    double node_y(int j) const;
    Vec2 node_pos(int i, int j) const { return {node_x(i), node_y(j)}; }
    int cells_x() const { return x_periodic ? nx : nx - 1; }
    int cells_y() const { return y_periodic ? ny : ny - 1; }
    /// Interior cell spacing (the rectangle's border cells are half-width).
    double hx() const;
    double hy() const;
};

/// Chart-gradient samples on the same node layout (zero on ring nodes).
struct GradientField {
    int nx = 0, ny = 0;
    std::vector<double> gx, gy;
};

/// OpenMP-parallel sampling kernel.
ScalarField sample_field(const Eigenfunction& u, const SurfaceDescriptor& s,
                         const GridSpec& spec);
/// Plain serial reference; must agree bit-for-bit with sample_field.
ScalarField sample_field_serial(const Eigenfunction& u, const SurfaceDescriptor& s,
                                const GridSpec& spec);

GradientField sample_gradient(const Eigenfunction& u, const ScalarField& f);
GradientField sample_gradient_serial(const Eigenfunction& u, const ScalarField& f);

/// r2 values for 1..n_max (index 0 unused), OpenMP over the range.
std::vector<long long> r2_bruteforce_table(long long n_max);
std::vector<long long> r2_bruteforce_table_serial(long long n_max);

} // namespace nodal
