#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "nodal/extract.hpp"
#include "nodal/lattice.hpp"
#include "nodal/theorems.hpp"
#include "oracles.hpp"

using namespace nodal;

namespace {

GridSpec default_grid(int res = 512) {
    GridSpec g;
    g.resolution = res;
    return g;
}

NodalGraph extract_default(const Eigenfunction& u, int res = 512) {
    return extract_nodal_graph(u, natural_surface(u), default_grid(res));
}

long long degree_sum(const NodalGraph& g) {
    long long s = 0;
    for (const auto& v : g.vertices) s += v.degree;
    return s;
}

int count_class(const NodalGraph& g, VertexClass c) {
    int n = 0;
    for (const auto& v : g.vertices)
        if (v.cls == c) ++n;
    return n;
}

} // namespace

TEST_CASE("detect_critical_points on the torus product mode (2,1)") {
    Eigenfunction u = product_mode(2, 1);
    auto s = natural_surface(u);
    auto cps = detect_critical_points(u, s, default_grid());
    REQUIRE(cps.size() == 8);

    std::set<std::pair<int, int>> found;
    for (const auto& cp : cps) {
        CHECK(cp.location_class == VertexClass::Interior);
        // expected lattice: x in {±pi/4, ±3pi/4}, y in {±pi/2}
        double xq = cp.position.x / (kPi / 4);
        double yq = cp.position.y / (kPi / 2);
        CHECK(std::fabs(xq - std::lround(xq)) < 1e-7);
        CHECK(std::fabs(yq - std::lround(yq)) < 1e-7);
        CHECK(std::lround(xq) % 2 != 0);
        CHECK(std::lround(yq) % 2 != 0);
        found.insert({(int)std::lround(xq), (int)std::lround(yq)});
    }
    CHECK(found.size() == 8);
}

TEST_CASE("extract torus product mode (2,1): the Figure-3 example") {
    NodalGraph g = extract_default(product_mode(2, 1));
    CHECK(g.V == 8);
    CHECK(g.E == 16);
    CHECK(g.F == 8);
    CHECK(g.n_components == 1);
    CHECK(g.c_circles == 0);
    CHECK(g.cellular);
    CHECK(degree_sum(g) == 2 * g.E_graph);
    for (const auto& v : g.vertices) {
        CHECK(v.cls == VertexClass::Interior);
        CHECK(v.degree == 4);
        CHECK(v.vanishing_order == 2);
    }
    CHECK(euler_slack(g, g.surface) == 0);
}

TEST_CASE("extract torus single mode cos(x1): two circles") {
    Eigenfunction u = torus_combination({{1, 0, {1.0, 0.0}}});
    NodalGraph g = extract_default(u);
    CHECK(g.V == 2);
    CHECK(g.E == 2);
    CHECK(g.F == 2);
    CHECK(g.n_components == 2);
    CHECK(g.c_circles == 2);
    CHECK(count_class(g, VertexClass::Dummy) == 2);
    CHECK(euler_slack(g, g.surface) == 1);
    CHECK_FALSE(g.cellular);  // two annular faces
}

TEST_CASE("extract shell-1 combination cos(x) - cos(y)") {
    Eigenfunction u = torus_combination({{1, 0, {0.5, 0.0}},
                                         {-1, 0, {0.5, 0.0}},
                                         {0, 1, {-0.5, 0.0}},
                                         {0, -1, {-0.5, 0.0}}});
    NodalGraph g = extract_default(u);
    CHECK(g.V == 2);  // crossings at (0,0) and the wrapped corner
    CHECK(g.E == 4);
    CHECK(g.F == 2);
    CHECK(g.n_components == 1);
    for (const auto& v : g.vertices) {
        CHECK(v.degree == 4);
        CHECK(v.vanishing_order == 2);
    }
    CHECK(euler_slack(g, g.surface) == 0);
}

TEST_CASE("extract sphere Y_{3,1}") {
    NodalGraph g = extract_default(sphere_harmonic(3, 1));
    CHECK(g.V == 4);
    CHECK(g.E == 8);
    CHECK(g.F == 6);
    CHECK(g.n_components == 1);
    CHECK(g.c_circles == 0);
    CHECK(g.cellular);
    for (const auto& v : g.vertices) {
        CHECK(v.cls == VertexClass::Interior);
        CHECK(v.degree == 4);
        CHECK(v.vanishing_order == 2);
    }
    CHECK(euler_slack(g, g.surface) == 0);
}

TEST_CASE("extract sphere Y_{4,2}: poles of order two") {
    NodalGraph g = extract_default(sphere_harmonic(4, 2));
    CHECK(g.F == 12);  // 2m(l-m+1)
    int interior = count_class(g, VertexClass::Interior);
    CHECK(interior == 10);  // 2m(l-m) + 2
    auto hist = degree_histogram(g);
    CHECK(hist.size() == 1);
    CHECK(hist[4] == 10);
    int poles = 0;
    for (const auto& v : g.vertices)
        if (v.is_pole) {
            ++poles;
            CHECK(v.degree == 4);  // 2m
            CHECK(v.vanishing_order == 2);
        }
    CHECK(poles == 2);
}

TEST_CASE("extract sphere Y_{5,3}: poles of order three") {
    NodalGraph g = extract_default(sphere_harmonic(5, 3));
    CHECK(g.F == 18);
    CHECK(count_class(g, VertexClass::Interior) == 14);
    long long sum_gamma = 0;
    for (const auto& v : g.vertices) {
        if (v.is_pole) {
            CHECK(v.degree == 6);
            CHECK(v.vanishing_order == 3);
        } else {
            CHECK(v.degree == 4);
            CHECK(v.vanishing_order == 2);
        }
        sum_gamma += v.vanishing_order;
    }
    CHECK(sum_gamma == 30);
    CHECK(euler_slack(g, g.surface) == 0);
}

TEST_CASE("extract sphere Y_{1,1}: one great circle, no critical points") {
    NodalGraph g = extract_default(sphere_harmonic(1, 1));
    CHECK(g.V == 1);
    CHECK(g.E == 1);
    CHECK(g.F == 2);
    CHECK(g.n_components == 1);
    CHECK(g.c_circles == 1);
    CHECK(count_class(g, VertexClass::Dummy) == 1);
    CHECK(g.cellular);  // two hemispherical discs
    CHECK(euler_slack(g, g.surface) == 0);
}

TEST_CASE("extract sphere Y_{2,0}: latitude circles") {
    NodalGraph g = extract_default(sphere_harmonic(2, 0));
    CHECK(g.V == 2);
    CHECK(g.E == 2);
    CHECK(g.F == 3);
    CHECK(g.n_components == 2);
    CHECK(g.c_circles == 2);
    CHECK(euler_slack(g, g.surface) == 0);
    CHECK_FALSE(g.cellular);  // the middle band is an annulus
}

TEST_CASE("extract sphere Y_{0,0}: empty nodal set") {
    NodalGraph g = extract_default(sphere_harmonic(0, 0));
    CHECK(g.V == 0);
    CHECK(g.E == 0);
    CHECK(g.F == 1);
    CHECK(g.n_components == 0);
    CHECK(g.c_circles == 0);
}

TEST_CASE("extract rectangle (2,1)") {
    NodalGraph g = extract_default(rectangle_sine(2, 1));
    CHECK(g.V == 2);   // paper-level: corners suppressed
    CHECK(g.E == 3);
    CHECK(g.F == 2);
    CHECK(g.V_graph == 6);
    CHECK(g.E_graph == 7);
    CHECK(g.n_components == 1);
    CHECK(g.c_circles == 0);
    CHECK(g.cellular);
    CHECK(euler_slack(g, g.surface) == 0);

    int boundary = 0;
    for (const auto& v : g.vertices) {
        if (v.cls == VertexClass::Boundary) {
            ++boundary;
            CHECK(v.degree == 3);
            CHECK(v.vanishing_order == 2);
            CHECK(std::fabs(v.pos.x - kPi / 2) < 1e-7);
        }
        if (v.cls == VertexClass::Corner) CHECK(v.degree == 2);
    }
    CHECK(boundary == 2);
    CHECK(count_class(g, VertexClass::Interior) == 0);
    CHECK(count_class(g, VertexClass::Corner) == 4);
}

TEST_CASE("extract rectangle (1,1): bare boundary contour") {
    NodalGraph g = extract_default(rectangle_sine(1, 1));
    CHECK(g.V == 1);
    CHECK(g.E == 1);
    CHECK(g.F == 1);
    CHECK(g.V_graph == 4);
    CHECK(g.E_graph == 4);
    CHECK(g.n_components == 1);
    CHECK(g.c_circles == 1);
    CHECK(count_class(g, VertexClass::Interior) == 0);
    CHECK(count_class(g, VertexClass::Boundary) == 0);
    CHECK(g.cellular);
    CHECK(euler_slack(g, g.surface) == 0);
}

TEST_CASE("extract rectangle (3,2)") {
    NodalGraph g = extract_default(rectangle_sine(3, 2));
    auto rc = oracles::rectangle_oracle(3, 2);
    CHECK(count_class(g, VertexClass::Interior) == rc.interior);
    CHECK(count_class(g, VertexClass::Boundary) == rc.boundary);
    CHECK(g.F == rc.domains);
    for (const auto& v : g.vertices) {
        if (v.cls == VertexClass::Interior) {
            CHECK(v.degree == 4);
            CHECK(v.vanishing_order == 2);
        }
        if (v.cls == VertexClass::Boundary) {
            CHECK(v.degree == 3);
            CHECK(v.vanishing_order == 2);
        }
    }
    CHECK(euler_slack(g, g.surface) == 0);
    CHECK(g.cellular);
}

TEST_CASE("face counts match the independent flood-fill oracle") {
    struct Case {
        Eigenfunction u;
        const char* name;
    } cases[] = {
        {product_mode(2, 1), "torus 2 1"},
        {product_mode(3, 3), "torus 3 3"},
        {sphere_harmonic(4, 2), "Y42"},
        {sphere_harmonic(5, 0), "Y50"},
        {rectangle_sine(3, 2), "rect 3 2"},
        {rectangle_sine(4, 4), "rect 4 4"},
    };
    for (auto& c : cases) {
        CAPTURE(c.name);
        NodalGraph g = extract_default(c.u);
        int oracle = oracles::flood_fill_domains(c.u, natural_surface(c.u), 2048);
        CHECK(g.F == oracle);
    }
}

TEST_CASE("sign alternation across non-boundary edges") {
    for (Eigenfunction u : {product_mode(2, 1), product_mode(3, 2)}) {
        NodalGraph g = extract_default(u);
        for (const auto& e : g.edges) {
            if (e.on_boundary || e.polyline.size() < 3) continue;
            // offset normal to a middle segment
            size_t mid = e.polyline.size() / 2;
            Vec2 a = e.polyline[mid - 1], b = e.polyline[mid];
            double dx = b.x - a.x, dy = b.y - a.y;
            double len = std::hypot(dx, dy);
            if (len < 1e-9 || len > 1.0) continue;  // seam jump
            Vec2 m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
            double off = 0.02;
            double up = eval(u, {m.x - dy / len * off, m.y + dx / len * off});
            double dn = eval(u, {m.x + dy / len * off, m.y - dx / len * off});
            CHECK(((up > 0) != (dn > 0)));
        }
    }
}

TEST_CASE("vanishing_order examples") {
    auto torus = make_surface(SurfaceKind::FlatTorus);
    Eigenfunction u21 = product_mode(2, 1);
    CHECK(vanishing_order(u21, torus, {kPi / 4, kPi / 2}) == 2);
    CHECK(vanishing_order(u21, torus, {kPi / 4, 0.3}) == 1);  // regular nodal point

    auto sphere = make_surface(SurfaceKind::Sphere);
    CHECK(vanishing_order(sphere_harmonic(4, 2), sphere, {0.0, 0.0}) == 2);
    CHECK(vanishing_order(sphere_harmonic(5, 3), sphere, {0.0, 0.0}) == 3);
    CHECK(vanishing_order(sphere_harmonic(6, 6), sphere, {0.0, kPi}) == 6);

    auto rect = make_surface(SurfaceKind::Rectangle, kPi, kPi);
    CHECK(vanishing_order(rectangle_sine(2, 1), rect, {kPi / 2, 0.0}) == 2);

    CHECK_THROWS_AS(vanishing_order(u21, torus, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("ring arc counts") {
    auto torus = make_surface(SurfaceKind::FlatTorus);
    Eigenfunction u21 = product_mode(2, 1);
    CHECK(ring_arc_count(u21, torus, {kPi / 4, kPi / 2}, 0.05, VertexClass::Interior) == 4);

    auto rect = make_surface(SurfaceKind::Rectangle, kPi, kPi);
    CHECK(ring_arc_count(rectangle_sine(2, 1), rect, {kPi / 2, 0.0}, 0.05,
                         VertexClass::Boundary) == 3);

    auto sphere = make_surface(SurfaceKind::Sphere);
    CHECK(ring_arc_count(sphere_harmonic(4, 2), sphere, {0.0, 0.0}, 0.1,
                         VertexClass::Interior) == 4);
}

TEST_CASE("extraction of the constructed high-vanishing function") {
    Construction c = construct_high_vanishing(3);
    ExtractOptions opts;
    opts.detect.seeds.push_back({0.0, 0.0});
    NodalGraph g = extract_nodal_graph(c.u, natural_surface(c.u), default_grid(), opts);
    const GraphVertex* origin = nullptr;
    for (const auto& v : g.vertices)
        if (chart_distance(g.surface, v.pos, {0, 0}) < 1e-9) origin = &v;
    REQUIRE(origin != nullptr);
    CHECK(origin->degree == 2 * c.certificate.attained_order);
    CHECK(origin->vanishing_order == c.certificate.attained_order);
    CHECK(origin->degree == c.certificate.arcs_at_origin);
}

TEST_CASE("identically vanishing combination is rejected") {
    // antisymmetric real coefficients: Re of the sum is identically zero
    Eigenfunction u = torus_combination({{1, 0, {0.5, 0.0}}, {-1, 0, {-0.5, 0.0}}});
    CHECK_THROWS_AS(extract_default(u), std::invalid_argument);
}

TEST_CASE("integer outputs are stable under resolution doubling (small)") {
    for (Eigenfunction u : {product_mode(2, 1), sphere_harmonic(3, 1)}) {
        NodalGraph a = extract_default(u, 256);
        NodalGraph b = extract_default(u, 512);
        CHECK(a.V == b.V);
        CHECK(a.E == b.E);
        CHECK(a.F == b.F);
        CHECK(a.n_components == b.n_components);
        CHECK(a.c_circles == b.c_circles);
    }
}

TEST_CASE("integer outputs are stable under 10x tolerance tightening") {
    GridSpec tight;
    tight.eps_root /= 10.0;
    tight.eps_grad /= 10.0;
    tight.eps_val /= 10.0;
    for (Eigenfunction u : {product_mode(2, 1), rectangle_sine(2, 2)}) {
        NodalGraph a = extract_default(u);
        NodalGraph b = extract_nodal_graph(u, natural_surface(u), tight);
        CHECK(a.V == b.V);
        CHECK(a.E == b.E);
        CHECK(a.F == b.F);
        CHECK(a.n_components == b.n_components);
    }
}

TEST_CASE("degree histogram and C4 split") {
    NodalGraph g = extract_default(sphere_harmonic(4, 2));
    auto hist = degree_histogram(g);
    CHECK(hist[4] == 10);
    C4Split split = c4_split(g);
    CHECK(split.interior == 10);
    CHECK(split.boundary_in_c4 == 0);
    CHECK(split.boundary_out_c4 == 0);

    NodalGraph r = extract_default(rectangle_sine(2, 1));
    auto rhist = degree_histogram(r);
    CHECK(rhist[3] == 2);
    C4Split rsplit = c4_split(r);
    CHECK(rsplit.interior == 0);
    CHECK(rsplit.boundary_in_c4 == 0);
    CHECK(rsplit.boundary_out_c4 == 2);
}
