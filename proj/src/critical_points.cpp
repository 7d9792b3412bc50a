#include "nodal/critical_points.hpp"

#include <algorithm>
#include <cmath>

#include "nodal/errors.hpp"
#include "nodal/extract.hpp"

namespace nodal {

namespace {

struct Scales {
    double umax;    // grid sup of |u|
    double gscale;  // gradient magnitude scale, sqrt(lambda) * umax
    double lambda;
};

Vec2 ring_point(const SurfaceDescriptor& s, Vec2 z, double r, double t) {
    if (s.kind == SurfaceKind::Sphere)
        return sphere_orthographic_to_chart(z, {r * std::cos(t), r * std::sin(t)});
    return {z.x + r * std::cos(t), z.y + r * std::sin(t)};
}

// Sign changes of u around a ring (or part of one) centred at z.
int ring_changes(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z,
                 double r, double t0, double t1, int samples) {
    int changes = 0;
    double prev = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double t = t0 + (t1 - t0) * i / samples;
        double v = eval(u, ring_point(s, z, r, t));
        if (i > 0 && (prev < 0) != (v < 0)) ++changes;
        prev = v;
    }
    return changes;
}

} // namespace

int ring_arc_count(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 z,
                   double radius, VertexClass cls) {
    const int samples = 720;
    const double margin = 0.01;
    double r = radius;
    int last = -1;
    for (int attempt = 0; attempt < 7; ++attempt) {
        int c;
        switch (cls) {
        case VertexClass::Boundary: {
            // half ring opening into the surface, plus the two boundary arcs
            double base;
            if (std::fabs(z.y - s.y_min) < 1e-9) base = 0.0;          // bottom
            else if (std::fabs(z.x - s.x_max) < 1e-9) base = kPi / 2; // right
            else if (std::fabs(z.y - s.y_max) < 1e-9) base = kPi;     // top
            else base = -kPi / 2;                                     // left
            c = ring_changes(u, s, z, r, base + margin, base + kPi - margin, samples) + 2;
            break;
        }
        case VertexClass::Corner: {
            double a0;
            if (z.x == s.x_min && z.y == s.y_min) a0 = 0.0;
            else if (z.x == s.x_max && z.y == s.y_min) a0 = kPi / 2;
            else if (z.x == s.x_max && z.y == s.y_max) a0 = kPi;
            else a0 = 3 * kPi / 2;
            c = ring_changes(u, s, z, r, a0 + margin, a0 + kPi / 2 - margin, samples) + 2;
            break;
        }
        default: {
            // closed ring: start/end at the same point so stepping over the
            // seam is counted exactly once
            c = ring_changes(u, s, z, r, 0.0, 2 * kPi, samples);
            break;
        }
        }
        bool parity_ok = (cls != VertexClass::Interior) || (c % 2 == 0);
        if (c == last && parity_ok) return c;
        last = c;
        r *= 0.5;
    }
    throw ExtractionError("ring_arc_count: unstable arc count near vertex");
}

namespace {

double score_at(const Eigenfunction& u, Vec2 z, const Scales& sc) {
    double v = eval(u, z) / sc.umax;
    Vec2 g = chart_gradient(u, z);
    double gn = g.norm() / sc.gscale;
    return v * v + gn * gn;
}

// Golden-section minimization of score along one axis inside [lo, hi].
double golden_axis(const Eigenfunction& u, Vec2 z, int axis, double lo, double hi,
                   const Scales& sc) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    auto at = [&](double t) {
        Vec2 p = z;
        (axis == 0 ? p.x : p.y) = t;
        return score_at(u, p, sc);
    };
    double fc = at(c), fd = at(d);
    while (b - a > 1e-13 * (1.0 + std::fabs(a))) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = at(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = at(d);
        }
    }
    return 0.5 * (a + b);
}

struct Candidate {
    Vec2 z;
    double score;
    bool ok;
};

Candidate refine_newton(const Eigenfunction& u, const SurfaceDescriptor& s, Vec2 start,
                        double hx, double hy, const Scales& sc) {
    const double box = 3.0 * std::hypot(hx, hy);
    const double hess_scale = std::max(1.0, sc.lambda) * sc.umax;
    Vec2 z = start;
    bool stagnated = false;
    for (int iter = 0; iter < 60; ++iter) {
        Vec2 g = chart_gradient(u, z);
        double gn = g.norm();
        if (gn <= 1e-14 * sc.gscale) break;
        double h[2][2];
        chart_hessian(u, z, h);
        double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if (std::fabs(det) < 1e-10 * hess_scale * hess_scale) { stagnated = true; break; }
        Vec2 dz{-(h[1][1] * g.x - h[0][1] * g.y) / det,
                -(-h[1][0] * g.x + h[0][0] * g.y) / det};
        // damped step: halve until the gradient norm decreases
        int halvings = 0;
        while (halvings < 12) {
            Vec2 zn = z + dz;
            if (chart_gradient(u, zn).norm() < gn) break;
            dz = dz * 0.5;
            ++halvings;
        }
        if (halvings == 12) { stagnated = true; break; }
        z = z + dz;
        if (chart_distance(s, z, start) > box) return {z, 1e30, false};
        if (dz.norm() < 1e-15 * (1.0 + std::fabs(z.x) + std::fabs(z.y))) break;
    }

    if (stagnated) {
        // singular Hessian: expected at points of order >= 3; fall back to
        // coordinate-wise golden-section descent of u^2 + |grad u|^2
        double x_lo = start.x - 1.6 * hx, x_hi = start.x + 1.6 * hx;
        double y_lo = start.y - 1.6 * hy, y_hi = start.y + 1.6 * hy;
        if (s.kind == SurfaceKind::Rectangle) {
            x_lo = std::max(x_lo, s.x_min + 0.2 * hx);
            x_hi = std::min(x_hi, s.x_max - 0.2 * hx);
            y_lo = std::max(y_lo, s.y_min + 0.2 * hy);
            y_hi = std::min(y_hi, s.y_max - 0.2 * hy);
        }
        double prev = score_at(u, z, sc);
        for (int sweep = 0; sweep < 60; ++sweep) {
            z.x = golden_axis(u, z, 0, x_lo, x_hi, sc);
            z.y = golden_axis(u, z, 1, y_lo, y_hi, sc);
            double now = score_at(u, z, sc);
            if (prev - now < 1e-32) break;
            prev = now;
        }
    }
    return {z, score_at(u, z, sc), true};
}

void scan_interior(const Eigenfunction& u, const ScalarField& f, const GradientField& g,
                   const Scales& sc, std::vector<Candidate>& out) {
    const SurfaceDescriptor& s = f.surface;
    const double hx = f.hx(), hy = f.hy();
    const double gate =
        std::min(0.9, 16.0 * std::max(1.0, sc.lambda) * (hx * hx + hy * hy)) * sc.umax;

    const bool rect = (s.kind == SurfaceKind::Rectangle);
    const int ci_lo = rect ? 1 : 0;
    const int ci_hi = rect ? f.nx - 3 : f.cells_x() - 1;
    const int cj_lo = rect ? 1 : 0;
    const int cj_hi = rect ? f.ny - 3 : f.cells_y() - 1;

    auto idx = [&](int i, int j) {
        return (size_t)(j % f.ny) * f.nx + (i % f.nx);
    };

    for (int j = cj_lo; j <= cj_hi; ++j) {
        for (int i = ci_lo; i <= ci_hi; ++i) {
            int i1 = f.x_periodic ? (i + 1) % f.nx : i + 1;
            int j1 = f.y_periodic ? (j + 1) % f.ny : j + 1;
            size_t n00 = idx(i, j), n10 = idx(i1, j), n01 = idx(i, j1), n11 = idx(i1, j1);

            double u00 = f.values[n00], u10 = f.values[n10];
            double u01 = f.values[n01], u11 = f.values[n11];
            double umin = std::min({std::fabs(u00), std::fabs(u10),
                                    std::fabs(u01), std::fabs(u11)});
            if (umin > gate) continue;

            auto mixed_sign = [](double a, double b, double c, double d) {
                bool pos = a > 0 || b > 0 || c > 0 || d > 0;
                bool neg = a < 0 || b < 0 || c < 0 || d < 0;
                return pos && neg;
            };
            bool gx_flip = mixed_sign(g.gx[n00], g.gx[n10], g.gx[n01], g.gx[n11]);
            bool gy_flip = mixed_sign(g.gy[n00], g.gy[n10], g.gy[n01], g.gy[n11]);
            double gmax = 0.0;
            for (size_t nn : {n00, n10, n01, n11})
                gmax = std::max(gmax, std::hypot(g.gx[nn], g.gy[nn]));
            bool flat = gmax < 100.0 * f.spec.eps_grad * sc.gscale;
            if (!(gx_flip && gy_flip) && !flat) continue;

            Vec2 center{f.node_x(i) + 0.5 * hx, f.node_y(j) + 0.5 * hy};
            Candidate c = refine_newton(u, s, center, hx, hy, sc);
            if (c.ok) out.push_back(c);
        }
    }
}

void scan_rectangle_sides(const Eigenfunction& u, const ScalarField& f,
                          const Scales& sc, std::vector<CriticalPoint>& out) {
    const SurfaceDescriptor& s = f.surface;
    const GridSpec& spec = f.spec;
    const double r_excl = spec.snap_factor * std::hypot(f.hx(), f.hy());

    struct Side {
        int ax, ay;         // multi-index of the inward normal derivative
        double sgn;
        bool horizontal;
        double fixed;       // the constant coordinate
    };
    const Side sides[4] = {
        {0, 1, +1.0, true, s.y_min},   // bottom
        {0, 1, -1.0, true, s.y_max},   // top
        {1, 0, +1.0, false, s.x_min},  // left
        {1, 0, -1.0, false, s.x_max},  // right
    };

    for (const Side& sd : sides) {
        double lo = sd.horizontal ? s.x_min : s.y_min;
        double hi = sd.horizontal ? s.x_max : s.y_max;
        auto gn = [&](double t) {
            Vec2 p = sd.horizontal ? Vec2{t, sd.fixed} : Vec2{sd.fixed, t};
            return sd.sgn * partial(u, p, sd.ax, sd.ay);
        };
        auto emit = [&](double t) {
            if (t - lo < r_excl || hi - t < r_excl) return;  // corner zone
            CriticalPoint cp;
            cp.position = sd.horizontal ? Vec2{t, sd.fixed} : Vec2{sd.fixed, t};
            cp.location_class = VertexClass::Boundary;
            out.push_back(cp);
        };

        const int n = 4 * spec.resolution;
        double prev = gn(lo + (hi - lo) * 1e-7);
        double prev_t = lo + (hi - lo) * 1e-7;
        for (int i = 1; i <= n; ++i) {
            double t = lo + (hi - lo) * ((double)i / n);
            if (i == n) t = hi - (hi - lo) * 1e-7;
            double v = gn(t);
            if ((prev < 0) != (v < 0)) {
                double a = prev_t, b = t;
                double fa = prev;
                while (b - a > spec.eps_root) {
                    double m = 0.5 * (a + b);
                    double fm = gn(m);
                    if ((fa < 0) != (fm < 0)) b = m;
                    else { a = m; fa = fm; }
                }
                emit(0.5 * (a + b));
            } else if (std::fabs(v) < 100.0 * spec.eps_grad * sc.gscale &&
                       std::fabs(prev) >= std::fabs(v)) {
                // possible tangential zero: minimize |g_n| locally
                double a = std::max(lo, t - 2.0 * (hi - lo) / n);
                double b = std::min(hi, t + 2.0 * (hi - lo) / n);
                const double gr = 0.6180339887498949;
                double c = b - gr * (b - a), d = a + gr * (b - a);
                double fc = std::fabs(gn(c)), fd = std::fabs(gn(d));
                while (b - a > spec.eps_root) {
                    if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = std::fabs(gn(c)); }
                    else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = std::fabs(gn(d)); }
                }
                double m = 0.5 * (a + b);
                if (std::fabs(gn(m)) < spec.eps_grad * sc.gscale) emit(m);
            }
            prev = v;
            prev_t = t;
        }
    }
}

} // namespace

std::vector<CriticalPoint> detect_critical_points(const Eigenfunction& u,
                                                  const ScalarField& field,
                                                  const DetectOptions& opts) {
    const SurfaceDescriptor& s = field.surface;
    const GridSpec& spec = field.spec;
    Scales sc{field.max_abs, std::sqrt(std::max(1.0, u.lambda)) * field.max_abs, u.lambda};
    if (field.max_abs <= 0.0)
        throw std::invalid_argument("detect_critical_points: function is numerically zero");

    const double hx = field.hx(), hy = field.hy();
    const double r_snap = spec.snap_factor * std::hypot(hx, hy);

    std::vector<CriticalPoint> accepted;
    auto near_accepted = [&](Vec2 z) {
        for (const auto& cp : accepted)
            if (chart_distance(s, z, cp.position) < r_snap) return true;
        return false;
    };

    // seeds first: exactly-known points win every merge
    for (Vec2 seed : opts.seeds) {
        CriticalPoint cp;
        cp.position = wrap_point(s, seed);
        cp.seeded = true;
        cp.location_class = VertexClass::Interior;
        if (s.kind == SurfaceKind::Rectangle) {
            bool on_x = std::fabs(cp.position.x - s.x_min) < 1e-12 ||
                        std::fabs(cp.position.x - s.x_max) < 1e-12;
            bool on_y = std::fabs(cp.position.y - s.y_min) < 1e-12 ||
                        std::fabs(cp.position.y - s.y_max) < 1e-12;
            if (on_x || on_y) cp.location_class = VertexClass::Boundary;
        }
        accepted.push_back(cp);
    }

    // sphere poles: exact locations, classified by arc count
    if (s.kind == SurfaceKind::Sphere) {
        for (double theta : {0.0, kPi}) {
            Vec2 pole{0.0, theta};
            if (std::fabs(eval(u, pole)) > spec.eps_val * sc.umax) continue;
            double r_ring = std::max(r_snap, 3.0 * hy);
            int arcs = ring_arc_count(u, s, pole, r_ring, VertexClass::Interior);
            if (arcs >= 4 && !near_accepted(pole)) {
                CriticalPoint cp;
                cp.position = pole;
                cp.location_class = VertexClass::Interior;
                cp.is_pole = true;
                accepted.push_back(cp);
            }
            // arcs == 2: a regular point of one smooth arc through the pole
        }
    }

    // interior grid scan
    GradientField grad = sample_gradient(u, field);
    std::vector<Candidate> cands;
    scan_interior(u, field, grad, sc, cands);
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.score < b.score;
    });
    for (const Candidate& c : cands) {
        Vec2 z = wrap_point(s, c.z);
        if (std::fabs(eval(u, z)) > spec.eps_val * sc.umax) continue;
        if (chart_gradient(u, z).norm() > spec.eps_grad * sc.gscale) continue;
        if (s.kind == SurfaceKind::Rectangle) {
            double db = std::min({z.x - s.x_min, s.x_max - z.x, z.y - s.y_min, s.y_max - z.y});
            if (db < r_snap) continue;  // boundary scan owns this zone
        }
        if (near_accepted(z)) continue;
        // Near a high-order zero the whole neighbourhood is flat enough to
        // pass the tolerance gates even on a single smooth arc; the
        // vanishing order tells such regular points apart (it is one there).
        // The probe rings must not reach the neighbouring zero, whose order
        // would otherwise leak into the measurement.
        double ring_cap = 0.0;
        for (const auto& cp : accepted)
            if (double d = chart_distance(s, z, cp.position); d < 0.3)
                ring_cap = (ring_cap == 0.0) ? 0.5 * d : std::min(ring_cap, 0.5 * d);
        try {
            if (vanishing_order_capped(u, s, z, 16, ring_cap) < 2) continue;
        } catch (const ExtractionError&) {
            continue;
        }
        CriticalPoint cp;
        cp.position = z;
        cp.location_class = VertexClass::Interior;
        accepted.push_back(cp);
    }

    // rectangle boundary: 1-D zeros of the inward normal derivative
    if (s.kind == SurfaceKind::Rectangle) {
        std::vector<CriticalPoint> bnd;
        scan_rectangle_sides(u, field, sc, bnd);
        for (auto& cp : bnd)
            if (!near_accepted(cp.position)) accepted.push_back(cp);
    }

    // deterministic order
    std::sort(accepted.begin(), accepted.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return lex_less(a.position, b.position);
    });
    return accepted;
}

std::vector<CriticalPoint> detect_critical_points(const Eigenfunction& u,
                                                  const SurfaceDescriptor& s,
                                                  const GridSpec& grid,
                                                  const DetectOptions& opts) {
    ScalarField f = sample_field(u, s, grid);
    return detect_critical_points(u, f, opts);
}

const char* vertex_class_name(VertexClass c) {
    switch (c) {
    case VertexClass::Interior: return "interior";
    case VertexClass::Boundary: return "boundary";
    case VertexClass::Corner: return "corner";
    case VertexClass::Dummy: return "dummy";
    }
    return "?";
}

} // namespace nodal
