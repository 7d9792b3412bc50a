#pragma once

#include <complex>
#include <vector>

#include "nodal/surfaces.hpp"
#include "nodal/vec2.hpp"

namespace nodal {

enum class Family { TorusFourier, SphereHarmonic, RectangleSine };

/// One plane-wave mode of a torus eigenfunction: coefficient mu on
/// exp(i <l, x>) with l an integer lattice point.
struct TorusMode {
    int l1 = 0;
    int l2 = 0;
    std::complex<double> mu;
};

/// Closed-form eigenfunction on one of the model surfaces.
///
///  - TorusFourier:    u(x) = Re sum_l mu_l exp(i <l, x>), all l on one
///                     lattice shell |l|^2 = lambda.
///  - SphereHarmonic:  u = P_ell^|m|(cos theta) * cos(m phi)  (m >= 0)
///                                              * sin(|m| phi) (m < 0),
///                     lambda = ell (ell + 1).
///  - RectangleSine:   u = sin(j pi x / a) sin(k pi y / b),
///                     lambda = (j pi / a)^2 + (k pi / b)^2.
struct Eigenfunction {
    Family family = Family::TorusFourier;
    std::vector<TorusMode> modes;
    int ell = 0, m = 0;
    int j = 0, k = 0;
    double a = kPi, b = kPi;
    double lambda = 0.0;
};

/// Validates that all modes are distinct, sit on one common shell and are
/// not all zero; throws std::invalid_argument otherwise.
Eigenfunction torus_combination(std::vector<TorusMode> modes);

/// cos(l1 x1) cos(l2 x2) as the four-mode combination on the shell
/// lambda = l1^2 + l2^2.
Eigenfunction product_mode(int l1, int l2);

Eigenfunction sphere_harmonic(int ell, int m);

Eigenfunction rectangle_sine(int j, int k, double a = kPi, double b = kPi);

SurfaceDescriptor natural_surface(const Eigenfunction& u);

double eval(const Eigenfunction& u, Vec2 p);

/// Partial derivative for the multi-index (ax, ay), |alpha| <= 32.
/// Exact trigonometric differentiation for TorusFourier and RectangleSine
/// (flat charts).  For SphereHarmonic the derivative is taken in the local
/// orthographic chart centred at p, by nested central finite differences
/// with one Richardson extrapolation step; accuracy is moderate by design.
double partial(const Eigenfunction& u, Vec2 p, int ax, int ay);

/// Analytic first derivatives in chart coordinates.  For the sphere this is
/// the (phi, theta) chart away from the poles.
Vec2 chart_gradient(const Eigenfunction& u, Vec2 p);

/// Analytic second derivatives in chart coordinates (same caveats).
void chart_hessian(const Eigenfunction& u, Vec2 p, double h[2][2]);

/// Smallest k with lambda_k(surface) equal to u's eigenvalue, i.e. one plus
/// the number of basis eigenvalues strictly below it (with multiplicity).
long long eigenvalue_index(const Eigenfunction& u);

/// sum_l mu_l l1^a1 l2^a2 over the modes; the moment sums of the
/// high-vanishing construction and the exact Taylor data at the origin.
std::complex<double> torus_moment_sum(const std::vector<TorusMode>& modes, int a1, int a2);

/// Crude amplitude scale (sum |mu_l|, max |P|, or 1) used to make
/// tolerances relative.
double coeff_scale(const Eigenfunction& u);

/// Maps local orthographic coordinates (X, Y) centred at chart point c of
/// the unit sphere back to (phi, theta).  Requires X^2 + Y^2 < 1.
Vec2 sphere_orthographic_to_chart(Vec2 center, Vec2 xy);

const char* family_name(Family f);

} // namespace nodal
