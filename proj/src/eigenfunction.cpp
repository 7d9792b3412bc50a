#include "nodal/eigenfunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "nodal/legendre.hpp"

namespace nodal {

namespace {

constexpr int kOrderCap = 32;

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Re(i^s * z) without touching trig: i^s cycles through {1, i, -1, -i}.
double re_ipow_times(int s, std::complex<double> z) {
    switch (((s % 4) + 4) % 4) {
    case 0: return z.real();
    case 1: return -z.imag();
    case 2: return -z.real();
    default: return z.imag();
    }
}

// sin(z + a*pi/2), exact at the case level so sine zeros survive.
double shifted_sin(double z, int a) {
    switch (((a % 4) + 4) % 4) {
    case 0: return std::sin(z);
    case 1: return std::cos(z);
    case 2: return -std::sin(z);
    default: return -std::cos(z);
    }
}

// Reduce into [-pi, pi); identity (bit-exact) for arguments already inside,
// so eval(wrap(p)) == eval(p) holds exactly.
double wrap_angle(double x) {
    if (x >= -kPi && x < kPi) return x;
    double w = std::fmod(x + kPi, 2 * kPi);
    if (w < 0) w += 2 * kPi;
    if (w >= 2 * kPi) w = 0.0;
    return w - kPi;
}

double sphere_eval_angles(const Eigenfunction& u, double phi, double theta) {
    phi = wrap_angle(phi);
    double p = associated_legendre(u.ell, std::abs(u.m), std::cos(theta));
    if (u.m > 0) return p * std::cos(u.m * phi);
    if (u.m < 0) return p * std::sin(-u.m * phi);
    return p;
}

// Integer floor(sqrt(n)) safe against double rounding.
long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = (long long)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

Eigenfunction torus_combination(std::vector<TorusMode> modes) {
    if (modes.empty())
        throw std::invalid_argument("torus_combination: no modes");
    long long shell = -1;
    double mass = 0.0;
    for (const auto& md : modes) {
        long long n2 = (long long)md.l1 * md.l1 + (long long)md.l2 * md.l2;
        if (shell < 0) shell = n2;
        if (n2 != shell)
            throw std::invalid_argument("torus_combination: modes on different shells");
        mass += std::abs(md.mu);
    }
    for (size_t i = 0; i < modes.size(); ++i)
        for (size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i].l1 == modes[j].l1 && modes[i].l2 == modes[j].l2)
                throw std::invalid_argument("torus_combination: duplicate lattice point");
    if (mass == 0.0)
        throw std::invalid_argument("torus_combination: all coefficients zero");

    Eigenfunction u;
    u.family = Family::TorusFourier;
    u.modes = std::move(modes);
    u.lambda = (double)shell;
    return u;
}

Eigenfunction product_mode(int l1, int l2) {
    if (l1 < 1 || l2 < 1)
        throw std::invalid_argument("product_mode: indices must be >= 1");
    // cos(l1 x) cos(l2 y) = Re sum over the four sign choices with mu = 1/4.
    std::vector<TorusMode> modes;
    for (int s1 : {+1, -1})
        for (int s2 : {+1, -1})
            modes.push_back({s1 * l1, s2 * l2, {0.25, 0.0}});
    return torus_combination(std::move(modes));
}

Eigenfunction sphere_harmonic(int ell, int m) {
    if (ell < 0 || std::abs(m) > ell)
        throw std::invalid_argument("sphere_harmonic: need |m| <= ell");
    Eigenfunction u;
    u.family = Family::SphereHarmonic;
    u.ell = ell;
    u.m = m;
    u.lambda = (double)ell * (ell + 1);
    return u;
}

Eigenfunction rectangle_sine(int j, int k, double a, double b) {
    if (j < 1 || k < 1)
        throw std::invalid_argument("rectangle_sine: need j, k >= 1");
    if (!(a > 0) || !(b > 0))
        throw std::invalid_argument("rectangle_sine: need positive sides");
    Eigenfunction u;
    u.family = Family::RectangleSine;
    u.j = j;
    u.k = k;
    u.a = a;
    u.b = b;
    double wx = j * kPi / a, wy = k * kPi / b;
    u.lambda = wx * wx + wy * wy;
    return u;
}

SurfaceDescriptor natural_surface(const Eigenfunction& u) {
    switch (u.family) {
    case Family::TorusFourier: return make_surface(SurfaceKind::FlatTorus);
    case Family::SphereHarmonic: return make_surface(SurfaceKind::Sphere);
    case Family::RectangleSine: return make_surface(SurfaceKind::Rectangle, u.a, u.b);
    }
    return {};
}

double eval(const Eigenfunction& u, Vec2 p) {
    switch (u.family) {
    case Family::TorusFourier: {
        double x = wrap_angle(p.x), y = wrap_angle(p.y);
        double acc = 0.0;
        for (const auto& md : u.modes) {
            double ph = md.l1 * x + md.l2 * y;
            acc += md.mu.real() * std::cos(ph) - md.mu.imag() * std::sin(ph);
        }
        return acc;
    }
    case Family::SphereHarmonic:
        return sphere_eval_angles(u, p.x, p.y);
    case Family::RectangleSine:
        return std::sin(u.j * kPi * p.x / u.a) * std::sin(u.k * kPi * p.y / u.b);
    }
    return 0.0;
}

std::complex<double> torus_moment_sum(const std::vector<TorusMode>& modes, int a1, int a2) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& md : modes)
        s += md.mu * (ipow((double)md.l1, a1) * ipow((double)md.l2, a2));
    return s;
}

Vec2 sphere_orthographic_to_chart(Vec2 center, Vec2 xy) {
    double rho2 = xy.x * xy.x + xy.y * xy.y;
    if (rho2 >= 1.0)
        throw std::domain_error("orthographic chart: point outside unit disc");
    double phi0 = center.x, th0 = center.y;
    double sp = std::sin(phi0), cp = std::cos(phi0);
    double st = std::sin(th0), ct = std::cos(th0);
    // centre direction, local east, local north
    double c[3] = {st * cp, st * sp, ct};
    double e1[3] = {-sp, cp, 0.0};
    double e2[3] = {-ct * cp, -ct * sp, st};
    double w = std::sqrt(1.0 - rho2);
    double q[3];
    for (int i = 0; i < 3; ++i)
        q[i] = w * c[i] + xy.x * e1[i] + xy.y * e2[i];
    double theta = std::acos(std::clamp(q[2], -1.0, 1.0));
    double phi = std::atan2(q[1], q[0]);
    return {phi, theta};
}

namespace {

// Central-difference weight sum for the a-th derivative in X and b-th in Y of
// the sphere harmonic read through the orthographic chart at `center`.
double sphere_fd(const Eigenfunction& u, Vec2 center, int ax, int ay, double h) {
    std::vector<double> cx(ax + 1), cy(ay + 1);
    for (int i = 0; i <= ax; ++i) {
        double b = 1.0;
        for (int t = 0; t < i; ++t) b = b * (ax - t) / (t + 1);
        cx[i] = ((i % 2) ? -b : b);
    }
    for (int i = 0; i <= ay; ++i) {
        double b = 1.0;
        for (int t = 0; t < i; ++t) b = b * (ay - t) / (t + 1);
        cy[i] = ((i % 2) ? -b : b);
    }
    double acc = 0.0;
    for (int i = 0; i <= ax; ++i) {
        double X = (0.5 * ax - i) * h;
        for (int jj = 0; jj <= ay; ++jj) {
            double Y = (0.5 * ay - jj) * h;
            Vec2 q = sphere_orthographic_to_chart(center, {X, Y});
            acc += cx[i] * cy[jj] * sphere_eval_angles(u, q.x, q.y);
        }
    }
    return acc / ipow(h, ax + ay);
}

} // namespace

double partial(const Eigenfunction& u, Vec2 p, int ax, int ay) {
    if (ax < 0 || ay < 0 || ax + ay > kOrderCap)
        throw std::invalid_argument("partial: order cap |alpha| <= 32 exceeded");
    if (ax == 0 && ay == 0) return eval(u, p);

    switch (u.family) {
    case Family::TorusFourier: {
        // Re sum mu (i l1)^a1 (i l2)^a2 e^{i<l,p>}; the i-power is pulled out
        // so exact cancellations at p = 0 survive in the complex sum.
        double x = wrap_angle(p.x), y = wrap_angle(p.y);
        std::complex<double> s{0.0, 0.0};
        for (const auto& md : u.modes) {
            double mag = ipow((double)md.l1, ax) * ipow((double)md.l2, ay);
            double ph = md.l1 * x + md.l2 * y;
            s += md.mu * mag * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return re_ipow_times(ax + ay, s);
    }
    case Family::RectangleSine: {
        double wx = u.j * kPi / u.a, wy = u.k * kPi / u.b;
        return ipow(wx, ax) * ipow(wy, ay) *
               shifted_sin(wx * p.x, ax) * shifted_sin(wy * p.y, ay);
    }
    case Family::SphereHarmonic: {
        double h = 0.12;
        double d1 = sphere_fd(u, p, ax, ay, h);
        double d2 = sphere_fd(u, p, ax, ay, h / 2.0);
        return (4.0 * d2 - d1) / 3.0;  // Richardson: O(h^2) -> O(h^4)
    }
    }
    return 0.0;
}

Vec2 chart_gradient(const Eigenfunction& u, Vec2 p) {
    switch (u.family) {
    case Family::TorusFourier:
        return {partial(u, p, 1, 0), partial(u, p, 0, 1)};
    case Family::RectangleSine:
        return {partial(u, p, 1, 0), partial(u, p, 0, 1)};
    case Family::SphereHarmonic: {
        int ma = std::abs(u.m);
        double t = std::cos(p.y);
        double pl = associated_legendre(u.ell, ma, t);
        double dpl = associated_legendre_dtheta(u.ell, ma, p.y);
        double trig, dtrig;
        if (u.m > 0) {
            trig = std::cos(u.m * p.x);
            dtrig = -u.m * std::sin(u.m * p.x);
        } else if (u.m < 0) {
            trig = std::sin(ma * p.x);
            dtrig = ma * std::cos(ma * p.x);
        } else {
            trig = 1.0;
            dtrig = 0.0;
        }
        return {pl * dtrig, dpl * trig};
    }
    }
    return {};
}

void chart_hessian(const Eigenfunction& u, Vec2 p, double h[2][2]) {
    switch (u.family) {
    case Family::TorusFourier:
    case Family::RectangleSine:
        h[0][0] = partial(u, p, 2, 0);
        h[0][1] = h[1][0] = partial(u, p, 1, 1);
        h[1][1] = partial(u, p, 0, 2);
        return;
    case Family::SphereHarmonic: {
        int ma = std::abs(u.m);
        double t = std::cos(p.y);
        double pl = associated_legendre(u.ell, ma, t);
        double dpl = associated_legendre_dtheta(u.ell, ma, p.y);
        double d2pl = associated_legendre_d2theta(u.ell, ma, p.y);
        double trig, dtrig, d2trig;
        if (u.m > 0) {
            trig = std::cos(u.m * p.x);
            dtrig = -u.m * std::sin(u.m * p.x);
            d2trig = -u.m * u.m * trig;
        } else if (u.m < 0) {
            trig = std::sin(ma * p.x);
            dtrig = ma * std::cos(ma * p.x);
            d2trig = -ma * ma * trig;
        } else {
            trig = 1.0;
            dtrig = d2trig = 0.0;
        }
        h[0][0] = pl * d2trig;
        h[0][1] = h[1][0] = dpl * dtrig;
        h[1][1] = d2pl * trig;
        return;
    }
    }
}

long long eigenvalue_index(const Eigenfunction& u) {
    switch (u.family) {
    case Family::TorusFourier: {
        long long lam = (long long)std::llround(u.lambda);
        long long below = 0;
        long long r = isqrt_ll(lam);
        for (long long l1 = -r; l1 <= r; ++l1) {
            long long rest = lam - l1 * l1;  // count l2 with l2^2 < rest
            if (rest <= 0) continue;
            long long m2 = isqrt_ll(rest - 1);
            below += 2 * m2 + 1;
        }
        return below + 1;
    }
    case Family::SphereHarmonic:
        // sum_{j < ell} (2j+1) = ell^2 states strictly below ell(ell+1)
        return (long long)u.ell * u.ell + 1;
    case Family::RectangleSine: {
        long long below = 0;
        double wx = kPi / u.a, wy = kPi / u.b;
        int jmax = (int)std::ceil(std::sqrt(u.lambda) / wx) + 1;
        int kmax = (int)std::ceil(std::sqrt(u.lambda) / wy) + 1;
        for (int jj = 1; jj <= jmax; ++jj)
            for (int kk = 1; kk <= kmax; ++kk) {
                double lam = wx * wx * jj * jj + wy * wy * kk * kk;
                if (lam < u.lambda * (1.0 - 1e-12)) ++below;
            }
        return below + 1;
    }
    }
    return 1;
}

double coeff_scale(const Eigenfunction& u) {
    switch (u.family) {
    case Family::TorusFourier: {
        double s = 0.0;
        for (const auto& md : u.modes) s += std::abs(md.mu);
        return s;
    }
    case Family::SphereHarmonic: {
        double mx = 0.0;
        for (int i = 0; i <= 512; ++i) {
            double t = -1.0 + 2.0 * i / 512.0;
            mx = std::max(mx, std::fabs(associated_legendre(u.ell, std::abs(u.m), t)));
        }
        return mx;
    }
    case Family::RectangleSine:
        return 1.0;
    }
    return 1.0;
}

const char* family_name(Family f) {
    switch (f) {
    case Family::TorusFourier: return "torus_fourier";
    case Family::SphereHarmonic: return "sphere_harmonic";
    case Family::RectangleSine: return "rectangle_sine";
    }
    return "?";
}

} // namespace nodal
