// Independent brute-force oracles used to pin expected test values.  These
// deliberately avoid the implementation paths they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "nodal/eigenfunction.hpp"
#include "nodal/surfaces.hpp"

namespace oracles {

// ---- associated Legendre by the Rodrigues formula --------------------------
// P_l^m(t) = (1-t^2)^(m/2) d^(l+m)/dt^(l+m) (t^2-1)^l / (2^l l!)
// evaluated through explicit polynomial coefficients (no recurrences).
inline double rodrigues_legendre(int l, int m, double t) {
    // coefficients of (t^2-1)^l
    std::vector<double> c(2 * l + 1, 0.0);
    std::vector<double> binom(l + 1, 0.0);
    binom[0] = 1.0;
    for (int i = 1; i <= l; ++i) binom[i] = binom[i - 1] * (l - i + 1) / i;
    for (int k = 0; k <= l; ++k)
        c[2 * k] = binom[k] * ((l - k) % 2 == 0 ? 1.0 : -1.0);  // t^(2k) term

    // differentiate l+m times
    for (int d = 0; d < l + m; ++d) {
        for (size_t p = 1; p < c.size(); ++p) c[p - 1] = c[p] * (double)p;
        c.pop_back();
    }
    double poly = 0.0;
    for (int p = (int)c.size() - 1; p >= 0; --p) poly = poly * t + c[p];

    double fact = 1.0;
    for (int i = 1; i <= l; ++i) fact *= 2.0 * i;
    return std::pow(std::max(0.0, 1.0 - t * t), 0.5 * m) * poly / fact;
}

// ---- nodal-domain count by sign flood fill on a finer grid -----------------
// Sign-only connectivity, no root bookkeeping: an entirely separate route to
// the face count.
inline int flood_fill_domains(const nodal::Eigenfunction& u,
                              const nodal::SurfaceDescriptor& s, int res) {
    using nodal::SurfaceKind;
    const bool px = s.periodic_x();
    const bool py = s.periodic_y();
    const bool rect = (s.kind == SurfaceKind::Rectangle);

    std::vector<int8_t> sign((size_t)res * res);
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            double x, y;
            if (rect) {
                x = s.x_min + s.width() * (i + 0.5) / res;
                y = s.y_min + s.height() * (j + 0.5) / res;
            } else {
                x = s.x_min + s.width() * (i + 0.5) / res;
                y = s.y_min + s.height() * (j + 0.5) / res;
            }
            sign[(size_t)j * res + i] = nodal::eval(u, {x, y}) >= 0 ? 1 : -1;
        }

    std::vector<int> label((size_t)res * res, -1);
    int count = 0;
    std::deque<std::pair<int, int>> q;
    for (int j0 = 0; j0 < res; ++j0)
        for (int i0 = 0; i0 < res; ++i0) {
            if (label[(size_t)j0 * res + i0] >= 0) continue;
            int L = count++;
            label[(size_t)j0 * res + i0] = L;
            q.push_back({i0, j0});
            while (!q.empty()) {
                auto [i, j] = q.front();
                q.pop_front();
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int ni = i + di[d], nj = j + dj[d];
                    if (ni < 0 || ni >= res) {
                        if (!px) continue;
                        ni = (ni + res) % res;
                    }
                    if (nj < 0 || nj >= res) {
                        if (!py) continue;
                        nj = (nj + res) % res;
                    }
                    size_t a = (size_t)j * res + i, b = (size_t)nj * res + ni;
                    if (label[b] >= 0 || sign[b] != sign[a]) continue;
                    label[b] = L;
                    q.push_back({(int)ni, (int)nj});
                }
            }
        }
    return count;
}

// ---- lattice point counting by double loop ---------------------------------
inline long long lattice_below_oracle(long long lambda) {
    long long r = (long long)std::ceil(std::sqrt((double)lambda)) + 2;
    long long count = 0;
    for (long long a = -r; a <= r; ++a)
        for (long long b = -r; b <= r; ++b)
            if (a * a + b * b < lambda) ++count;
    return count;
}

inline long long r2_oracle(long long n) {
    long long r = (long long)std::ceil(std::sqrt((double)n)) + 2;
    long long count = 0;
    for (long long a = -r; a <= r; ++a)
        for (long long b = -r; b <= r; ++b)
            if (a * a + b * b == n) ++count;
    return count;
}

// ---- rectangle sine-product enumeration ------------------------------------
// Critical points of sin(j pi x / a) sin(k pi y / b) on its nodal set, found
// by solving the trigonometric system directly.
struct RectangleCounts {
    int interior = 0;
    int boundary = 0;
    int domains = 0;
};

inline RectangleCounts rectangle_oracle(int j, int k) {
    RectangleCounts rc;
    rc.interior = (j - 1) * (k - 1);  // grid line crossings x = a p / j, y = b q / k
    rc.boundary = 2 * (j - 1) + 2 * (k - 1);
    rc.domains = j * k;
    return rc;
}

} // namespace oracles
