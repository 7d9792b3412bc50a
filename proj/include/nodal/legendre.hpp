#pragma once

namespace nodal {

/// Associated Legendre function P_l^m(t) for 0 <= m <= l, t in [-1,1],
/// without the Condon-Shortley phase (the sign convention does not move any
/// zero, so nodal sets are unaffected).  Upward recurrence in l starting from
/// the closed form of P_m^m; stable for the modest degrees used here.
/// Throws std::domain_error outside the parameter range.
double associated_legendre(int l, int m, double t);

/// d/dtheta P_l^m(cos(theta)).  Uses the derivative identity
/// (1-t^2) dP/dt = (l+m) P_{l-1}^m - l t P_l^m; not valid at the poles
/// (sin(theta) = 0), where callers switch to a local orthographic chart.
double associated_legendre_dtheta(int l, int m, double theta);

/// d^2/dtheta^2 P_l^m(cos(theta)) from the associated Legendre ODE
/// P'' + cot(theta) P' + (l(l+1) - m^2/sin^2(theta)) P = 0.
double associated_legendre_d2theta(int l, int m, double theta);

} // namespace nodal
