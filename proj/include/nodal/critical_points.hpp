#pragma once

#include <vector>

#include "nodal/grid.hpp"

namespace nodal {

enum class VertexClass { Interior, Boundary, Corner, Dummy };

/// A point of C(u): u = 0 and grad u = 0.  Corner and Dummy records reuse
/// this type as graph vertices but are excluded from C(u) in all theorem
/// checks.  `degree` counts incident arc endpoints (loops twice) and is
/// filled during graph assembly; `vanishing_order` is computed independently
/// from derivative data.
struct CriticalPoint {
    Vec2 position;
    VertexClass location_class = VertexClass::Interior;
    int degree = 0;
    int vanishing_order = 0;
    bool is_pole = false;
    bool seeded = false;
};

struct DetectOptions {
    /// Exactly-known critical points (e.g. the origin of a constructed
    /// high-vanishing-order eigenfunction); bypass refinement.
    std::vector<Vec2> seeds;
};

/// Locates C(u) on the grid: cells where both gradient components change
/// sign (or the gradient is already tiny) and u is small are refined by
/// damped Newton on grad u; on a singular Hessian the refinement falls back
/// to coordinate-wise golden-section descent of u^2 + |grad u|^2.
/// Refined points with |u| above tolerance are discarded (gradient-critical
/// but not nodal).  Sphere poles and rectangle sides get dedicated 1-D
/// treatment.  Duplicates within the snap radius are merged.
std::vector<CriticalPoint> detect_critical_points(const Eigenfunction& u,
                                                  const SurfaceDescriptor& s,
                                                  const GridSpec& grid,
                                                  const DetectOptions& opts = {});

/// Same, reusing an existing field sample (the extraction pipeline path).
std::vector<CriticalPoint> detect_critical_points(const Eigenfunction& u,
                                                  const ScalarField& field,
                                                  const DetectOptions& opts = {});

/// Number of nodal arcs incident to z, counted as sign changes of u around a
/// small ring (an inward half/quarter ring for boundary and corner points,
/// which contributes the two boundary arcs).  The count must agree on two
/// consecutive radii; the ring radius shrinks until it does.  On the sphere
/// the ring lives in the local orthographic chart, so it is well defined at
/// the poles.
int ring_arc_count(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z,
                   double radius, VertexClass cls);

const char* vertex_class_name(VertexClass c);

} // namespace nodal
