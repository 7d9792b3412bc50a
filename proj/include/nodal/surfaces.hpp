#pragma once

#include <numbers>

#include "nodal/vec2.hpp"

namespace nodal {

inline constexpr double kPi = std::numbers::pi;

enum class SurfaceKind { FlatTorus, Sphere, Rectangle };

/// One of the three supported model geometries together with its chart and
/// topological invariants.  The torus chart is [-pi,pi)^2 with both pairs of
/// opposite sides identified; the sphere chart is (phi,theta) in
/// [-pi,pi) x [0,pi] with periodic phi and the two pole rows collapsed; the
/// rectangle chart is [0,a] x [0,b] with no identifications and the whole
/// chart boundary belonging to the nodal set of any Dirichlet eigenfunction.
struct SurfaceDescriptor {
    SurfaceKind kind = SurfaceKind::FlatTorus;
    double x_min = -kPi, x_max = kPi;
    double y_min = -kPi, y_max = kPi;
    int euler_characteristic = 0;
    int contour_count = 0;
    int genus = 0;
    bool orientable = true;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    bool periodic_x() const { return kind != SurfaceKind::Rectangle; }
    bool periodic_y() const { return kind == SurfaceKind::FlatTorus; }
};

/// Builds a descriptor.  `a`,`b` are the rectangle side lengths and are
/// ignored for the two closed surfaces (torus side fixed to 2*pi, unit
/// sphere).  Throws std::invalid_argument on non-positive rectangle sides.
SurfaceDescriptor make_surface(SurfaceKind kind, double a = kPi, double b = kPi);

/// Canonical representative of a chart point under the surface's
/// identifications.  Idempotent; maps identified points to equal
/// representatives.
Vec2 wrap_point(const SurfaceDescriptor& s, Vec2 p);

/// Quotient metric on the chart: minimum Euclidean distance over identified
/// copies for the flat surfaces, great-circle distance on the unit sphere.
double chart_distance(const SurfaceDescriptor& s, Vec2 p, Vec2 q);

const char* surface_kind_name(SurfaceKind kind);

} // namespace nodal
