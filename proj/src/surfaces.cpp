#include "nodal/surfaces.hpp"

#include <cmath>
#include <stdexcept>

namespace nodal {

namespace {

// Reduce t into [lo, lo + period). Exact for values already inside.
double wrap_interval(double t, double lo, double period) {
    if (t >= lo && t < lo + period) return t;
    double w = std::fmod(t - lo, period);
    if (w < 0) w += period;
    // fmod can land exactly on `period` after the correction when t is a
    // tiny negative multiple of it.
    if (w >= period) w = 0.0;
    return lo + w;
}

} // namespace

SurfaceDescriptor make_surface(SurfaceKind kind, double a, double b) {
    SurfaceDescriptor s;
    s.kind = kind;
    switch (kind) {
    case SurfaceKind::FlatTorus:
        s.x_min = -kPi; s.x_max = kPi;
        s.y_min = -kPi; s.y_max = kPi;
        s.euler_characteristic = 0;
        s.contour_count = 0;
        s.genus = 1;
        s.orientable = true;
        break;
    case SurfaceKind::Sphere:
        s.x_min = -kPi; s.x_max = kPi;   // phi
        s.y_min = 0.0;  s.y_max = kPi;   // theta
        s.euler_characteristic = 2;
        s.contour_count = 0;
        s.genus = 0;
        s.orientable = true;
        break;
    case SurfaceKind::Rectangle:
        if (!(a > 0.0) || !(b > 0.0))
            throw std::invalid_argument("rectangle sides must be positive");
        s.x_min = 0.0; s.x_max = a;
        s.y_min = 0.0; s.y_max = b;
        s.euler_characteristic = 1;  // chi = 2 - q with one contour
        s.contour_count = 1;
        s.genus = 0;
        s.orientable = true;
        break;
    }
    return s;
}

Vec2 wrap_point(const SurfaceDescriptor& s, Vec2 p) {
    switch (s.kind) {
    case SurfaceKind::FlatTorus:
        return {wrap_interval(p.x, -kPi, 2 * kPi), wrap_interval(p.y, -kPi, 2 * kPi)};
    case SurfaceKind::Sphere: {
        // Normalize theta into [0, 2*pi), fold theta > pi over the pole
        // (theta -> 2*pi - theta, phi -> phi + pi), then wrap phi.
        double theta = wrap_interval(p.y, 0.0, 2 * kPi);
        double phi = p.x;
        if (theta > kPi) {
            theta = 2 * kPi - theta;
            phi += kPi;
        }
        phi = wrap_interval(phi, -kPi, 2 * kPi);
        // Pole rows collapse to a single point; pin phi there.
        if (theta == 0.0 || theta == kPi) phi = 0.0;
        return {phi, theta};
    }
    case SurfaceKind::Rectangle: {
        double x = std::min(std::max(p.x, s.x_min), s.x_max);
        double y = std::min(std::max(p.y, s.y_min), s.y_max);
        return {x, y};
    }
    }
    return p;
}

double chart_distance(const SurfaceDescriptor& s, Vec2 p, Vec2 q) {
    switch (s.kind) {
    case SurfaceKind::FlatTorus: {
        double dx = std::fabs(p.x - q.x);
        double dy = std::fabs(p.y - q.y);
        dx = std::fmod(dx, 2 * kPi);
        dy = std::fmod(dy, 2 * kPi);
        dx = std::min(dx, 2 * kPi - dx);
        dy = std::min(dy, 2 * kPi - dy);
        return std::hypot(dx, dy);
    }
    case SurfaceKind::Sphere: {
        // Great-circle distance on the unit sphere (Vincenty form with
        // colatitudes), stable for both tiny and near-antipodal separations.
        double st1 = std::sin(p.y), ct1 = std::cos(p.y);
        double st2 = std::sin(q.y), ct2 = std::cos(q.y);
        double dphi = p.x - q.x;
        double cd = std::cos(dphi), sd = std::sin(dphi);
        double cross1 = st2 * sd;
        double cross2 = st1 * ct2 - ct1 * st2 * cd;
        double along = ct1 * ct2 + st1 * st2 * cd;
        return std::atan2(std::hypot(cross1, cross2), along);
    }
    case SurfaceKind::Rectangle:
        return std::hypot(p.x - q.x, p.y - q.y);
    }
    return 0.0;
}

const char* surface_kind_name(SurfaceKind kind) {
    switch (kind) {
    case SurfaceKind::FlatTorus: return "torus";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Rectangle: return "rectangle";
    }
    return "?";
}

} // namespace nodal
