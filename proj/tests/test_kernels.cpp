#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "nodal/grid.hpp"
#include "nodal/sweep.hpp"

using namespace nodal;

TEST_CASE("parallel field sampling matches the serial reference bit for bit") {
    GridSpec grid;
    grid.resolution = 128;
    struct Case {
        Eigenfunction u;
        const char* name;
    } cases[] = {
        {sphere_harmonic(6, 3), "Y63"},
        {product_mode(3, 2), "torus32"},
        {rectangle_sine(3, 3), "rect33"},
    };
    for (auto& c : cases) {
        CAPTURE(c.name);
        auto s = natural_surface(c.u);
        ScalarField par = sample_field(c.u, s, grid);
        ScalarField ser = sample_field_serial(c.u, s, grid);
        REQUIRE(par.values.size() == ser.values.size());
        for (size_t i = 0; i < par.values.size(); ++i)
            CHECK(par.values[i] == ser.values[i]);
        CHECK(par.max_abs == ser.max_abs);

        GradientField gp = sample_gradient(c.u, par);
        GradientField gs = sample_gradient_serial(c.u, ser);
        for (size_t i = 0; i < gp.gx.size(); ++i) {
            CHECK(gp.gx[i] == gs.gx[i]);
            CHECK(gp.gy[i] == gs.gy[i]);
        }
    }
}

TEST_CASE("parallel r2 table matches the serial reference") {
    auto par = r2_bruteforce_table(10000);
    auto ser = r2_bruteforce_table_serial(10000);
    REQUIRE(par.size() == ser.size());
    for (size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("sweep output is byte-identical across runs") {
    RandomSweepOptions opts;
    opts.samples = 6;
    opts.seed = 42;
    opts.shells = {1, 5};
    opts.grid.resolution = 128;

    std::ostringstream a, b;
    write_sweep_csv(a, sweep_random_torus(opts));
    write_sweep_csv(b, sweep_random_torus(opts));
    CHECK(a.str() == b.str());
    CHECK(a.str().find("# nodal-atlas sweep v1") == 0);
}
