#include "nodal/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef NODAL_HAVE_OPENMP
#include <omp.h>
#endif

#include "nodal/lattice.hpp"
#include "nodal/parallel.hpp"

namespace nodal {

int max_workers() {
    if (const char* env = std::getenv("NODAL_ATLAS_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
#ifdef NODAL_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void apply_thread_cap() {
#ifdef NODAL_HAVE_OPENMP
    omp_set_num_threads(max_workers());
#endif
}

void GridSpec::validate() const {
    if (resolution < 16)
        throw std::invalid_argument("GridSpec: resolution must be >= 16");
    if (!(eps_root > 0) || !(eps_grad > 0) || !(eps_val > 0) || !(snap_factor > 0))
        throw std::invalid_argument("GridSpec: tolerances must be positive");
}

double ScalarField::node_x(int i) const {
    if (surface.kind == SurfaceKind::Rectangle) {
        if (i == 0) return surface.x_min;
        if (i == nx - 1) return surface.x_max;
        return surface.x_min + surface.width() * (i - 0.5) / (nx - 2);
    }
    return surface.x_min + surface.width() * (i + 0.5) / nx;
}

double ScalarField::node_y(int j) const {
    if (surface.kind == SurfaceKind::Rectangle) {
        if (j == 0) return surface.y_min;
        if (j == ny - 1) return surface.y_max;
        return surface.y_min + surface.height() * (j - 0.5) / (ny - 2);
    }
    return surface.y_min + surface.height() * (j + 0.5) / ny;
}

double ScalarField::hx() const {
    int cells = (surface.kind == SurfaceKind::Rectangle) ? nx - 2 : nx;
    return surface.width() / cells;
}

double ScalarField::hy() const {
    int cells = (surface.kind == SurfaceKind::Rectangle) ? ny - 2 : ny;
    return surface.height() / cells;
}

namespace {

// Value stored at a node: u itself at real nodes, the inward normal
// derivative on the rectangle's boundary ring (mixed derivative at corners).
double node_value(const Eigenfunction& u, const ScalarField& f, int i, int j) {
    Vec2 p = f.node_pos(i, j);
    if (!f.virtual_node(i, j)) return eval(u, p);

    bool left = (i == 0), right = (i == f.nx - 1);
    bool bottom = (j == 0), top = (j == f.ny - 1);
    if ((left || right) && (bottom || top)) {
        double mixed = partial(u, p, 1, 1);
        double sx = left ? 1.0 : -1.0;
        double sy = bottom ? 1.0 : -1.0;
        return sx * sy * mixed;
    }
    if (left) return partial(u, p, 1, 0);
    if (right) return -partial(u, p, 1, 0);
    if (bottom) return partial(u, p, 0, 1);
    return -partial(u, p, 0, 1);
}

ScalarField make_layout(const SurfaceDescriptor& s, const GridSpec& spec) {
    spec.validate();
    ScalarField f;
    f.surface = s;
    f.spec = spec;
    if (s.kind == SurfaceKind::Rectangle) {
        f.nx = spec.resolution + 2;
        f.ny = spec.resolution + 2;
    } else {
        f.nx = spec.resolution;
        f.ny = spec.resolution;
    }
    f.x_periodic = s.periodic_x();
    f.y_periodic = s.periodic_y();
    f.values.assign((size_t)f.nx * f.ny, 0.0);
    return f;
}

void finish_max_abs(ScalarField& f) {
    double mx = 0.0;
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            if (!f.virtual_node(i, j)) mx = std::max(mx, std::fabs(f.at(i, j)));
    f.max_abs = mx;
}

} // namespace

ScalarField sample_field(const Eigenfunction& u, const SurfaceDescriptor& s,
                         const GridSpec& spec) {
    ScalarField f = make_layout(s, spec);
#ifdef NODAL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            f.values[(size_t)j * f.nx + i] = node_value(u, f, i, j);
    finish_max_abs(f);
    return f;
}

ScalarField sample_field_serial(const Eigenfunction& u, const SurfaceDescriptor& s,
                                const GridSpec& spec) {
    ScalarField f = make_layout(s, spec);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i)
            f.values[(size_t)j * f.nx + i] = node_value(u, f, i, j);
    finish_max_abs(f);
    return f;
}

GradientField sample_gradient(const Eigenfunction& u, const ScalarField& f) {
    GradientField g;
    g.nx = f.nx;
    g.ny = f.ny;
    g.gx.assign((size_t)f.nx * f.ny, 0.0);
    g.gy.assign((size_t)f.nx * f.ny, 0.0);
#ifdef NODAL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            if (f.virtual_node(i, j)) continue;
            Vec2 gr = chart_gradient(u, f.node_pos(i, j));
            g.gx[(size_t)j * f.nx + i] = gr.x;
            g.gy[(size_t)j * f.nx + i] = gr.y;
        }
    return g;
}

GradientField sample_gradient_serial(const Eigenfunction& u, const ScalarField& f) {
    GradientField g;
    g.nx = f.nx;
    g.ny = f.ny;
    g.gx.assign((size_t)f.nx * f.ny, 0.0);
    g.gy.assign((size_t)f.nx * f.ny, 0.0);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            if (f.virtual_node(i, j)) continue;
            Vec2 gr = chart_gradient(u, f.node_pos(i, j));
            g.gx[(size_t)j * f.nx + i] = gr.x;
            g.gy[(size_t)j * f.nx + i] = gr.y;
        }
    return g;
}

std::vector<long long> r2_bruteforce_table(long long n_max) {
    std::vector<long long> t(n_max + 1, 0);
#ifdef NODAL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 256)
#endif
    for (long long n = 1; n <= n_max; ++n) t[n] = r2_bruteforce(n);
    t[0] = 1;
    return t;
}

std::vector<long long> r2_bruteforce_table_serial(long long n_max) {
    std::vector<long long> t(n_max + 1, 0);
    for (long long n = 1; n <= n_max; ++n) t[n] = r2_bruteforce(n);
    t[0] = 1;
    return t;
}

} // namespace nodal
