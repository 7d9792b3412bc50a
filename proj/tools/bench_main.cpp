// Compares the OpenMP kernels against their serial reference
// implementations: grid sampling, gradient sampling, the r2 table scan and
// a full catalog sweep.

#include <chrono>
#include <cstdio>

#include "nodal/grid.hpp"
#include "nodal/parallel.hpp"
#include "nodal/sweep.hpp"

using namespace nodal;
using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clk::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-36s %10.4f s %10.4f s %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

} // namespace

int main() {
    apply_thread_cap();
    std::printf("workers: %d\n", max_workers());
    std::printf("%-36s %12s %12s %9s\n", "kernel", "serial", "openmp", "speedup");

    Eigenfunction y63 = sphere_harmonic(6, 3);
    SurfaceDescriptor sphere = natural_surface(y63);

    for (int res : {512, 1024}) {
        GridSpec grid;
        grid.resolution = res;
        double ts = time_best_of(3, [&] { sample_field_serial(y63, sphere, grid); });
        double tp = time_best_of(3, [&] { sample_field(y63, sphere, grid); });
        char name[64];
        std::snprintf(name, sizeof name, "sample_field Y_{6,3} %dx%d", res, res);
        row(name, ts, tp);
    }

    {
        GridSpec grid;
        ScalarField f = sample_field(y63, sphere, grid);
        double ts = time_best_of(3, [&] { sample_gradient_serial(y63, f); });
        double tp = time_best_of(3, [&] { sample_gradient(y63, f); });
        row("sample_gradient Y_{6,3} 512x512", ts, tp);
    }

    {
        double ts = time_best_of(3, [] { r2_bruteforce_table_serial(100000); });
        double tp = time_best_of(3, [] { r2_bruteforce_table(100000); });
        row("r2_bruteforce_table 1e5", ts, tp);
    }

    {
        GridSpec grid;
        auto t0 = clk::now();
        SweepResult res = sweep_torus_products(3, 3, grid);
        double t = seconds_since(t0);
        std::printf("%-36s %10.4f s   (%zu rows, %d violations)\n",
                    "sweep torus products <= 3 (pool)", t, res.rows.size(),
                    res.violations);
    }
    return 0;
}
