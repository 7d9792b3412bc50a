#include "nodal/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace nodal {

double associated_legendre(int l, int m, double t) {
    if (m < 0 || m > l)
        throw std::domain_error("associated_legendre: need 0 <= m <= l");
    if (std::fabs(t) > 1.0)
        throw std::domain_error("associated_legendre: need |t| <= 1");

    // P_m^m(t) = (2m-1)!! (1-t^2)^(m/2)
    double pmm = 1.0;
    if (m > 0) {
        double omt2 = (1.0 - t) * (1.0 + t);
        double fact = 1.0;
        double s = std::sqrt(omt2);
        for (int i = 1; i <= m; ++i) {
            pmm *= fact * s;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;

    double pmmp1 = t * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;

    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = ((2.0 * ll - 1.0) * t * pmmp1 - (double)(ll + m - 1) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

double associated_legendre_dtheta(int l, int m, double theta) {
    double t = std::cos(theta);
    double st = std::sin(theta);
    double pl = associated_legendre(l, m, t);
    double plm1 = (l - 1 >= m) ? associated_legendre(l - 1, m, t) : 0.0;
    // dP/dtheta = -sin(theta) dP/dt = (l t P_l - (l+m) P_{l-1}) / sin(theta)
    return (l * t * pl - (l + m) * plm1) / st;
}

double associated_legendre_d2theta(int l, int m, double theta) {
    double t = std::cos(theta);
    double st = std::sin(theta);
    double p = associated_legendre(l, m, t);
    double dp = associated_legendre_dtheta(l, m, theta);
    return -(t / st) * dp - (l * (l + 1.0) - (double)m * m / (st * st)) * p;
}

} // namespace nodal
