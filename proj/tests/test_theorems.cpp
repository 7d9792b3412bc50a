#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nodal/report_io.hpp"
#include "nodal/sweep.hpp"
#include "nodal/theorems.hpp"

using namespace nodal;

namespace {

AnalysisReport analyze_default(const Eigenfunction& u, int res = 512) {
    GridSpec g;
    g.resolution = res;
    return analyze(u, natural_surface(u), g);
}

const Verdict* find(const AnalysisReport& r, const std::string& id) {
    for (const auto& v : r.verdicts)
        if (v.theorem == id) return &v;
    return nullptr;
}

} // namespace

TEST_CASE("Half arithmetic is exact") {
    Half a = Half::whole(3) + Half::half_of(1);
    CHECK(a.value() == 3.5);
    CHECK(a.str() == "3.5");
    CHECK(Half::whole(2).str() == "2");
    CHECK((Half::whole(4) - Half::half_of(1)).value() == 3.5);
    CHECK(Half::whole(2) <= Half::whole(2));
    CHECK(Half::half_of(3) <= Half::whole(2));
}

TEST_CASE("torus product (2,1): equality across the bound family") {
    AnalysisReport r = analyze_default(product_mode(2, 1));
    CHECK(r.k_index == 14);

    const Verdict* m1 = find(r, "main1");
    REQUIRE(m1);
    CHECK(m1->lhs.value() == 8.0);
    CHECK(m1->rhs.value() == 8.0);
    CHECK(m1->holds);
    CHECK(m1->equality);
    REQUIRE(m1->equality_predicted.has_value());
    CHECK(*m1->equality_predicted);
    CHECK(m1->consistent);

    const Verdict* m2 = find(r, "main2");
    REQUIRE(m2);
    CHECK(m2->lhs.value() == 16.0);
    CHECK(m2->rhs.value() == 16.0);
    CHECK(m2->equality);
    CHECK(m2->consistent);

    const Verdict* c34a = find(r, "cor34_count");
    REQUIRE(c34a);
    CHECK(c34a->lhs.value() == 8.0);
    CHECK(c34a->rhs.value() == 8.0);
    const Verdict* c34b = find(r, "cor34_order");
    REQUIRE(c34b);
    CHECK(c34b->lhs.value() == 16.0);
    CHECK(c34b->rhs.value() == 16.0);

    const Verdict* c35a = find(r, "cor35_count");
    REQUIRE(c35a);
    CHECK(c35a->rhs.value() == 14.0);
    CHECK(c35a->holds);

    const Verdict* ct = find(r, "contours_count");
    REQUIRE(ct);
    CHECK(ct->lhs.value() == 8.0);
    CHECK(ct->rhs.value() == 8.0);  // q = 0 reduces to Cor 3.4

    const Verdict* courant = find(r, "courant");
    REQUIRE(courant);
    CHECK(courant->lhs.value() == 8.0);
    CHECK(courant->rhs.value() == 14.0);

    CHECK(find(r, "domain_count") == nullptr);  // closed surface
}

TEST_CASE("sphere Y_{3,1} and Y_{4,2}: sharp cases") {
    AnalysisReport r31 = analyze_default(sphere_harmonic(3, 1));
    CHECK(r31.k_index == 10);
    const Verdict* m1 = find(r31, "main1");
    REQUIRE(m1);
    CHECK(m1->lhs.value() == 4.0);
    CHECK(m1->rhs.value() == 4.0);
    CHECK(m1->equality);
    CHECK(m1->consistent);
    const Verdict* c35 = find(r31, "cor35_count");
    REQUIRE(c35);
    CHECK(c35->lhs.value() == 4.0);
    CHECK(c35->rhs.value() == 8.0);

    AnalysisReport r42 = analyze_default(sphere_harmonic(4, 2));
    const Verdict* m1b = find(r42, "main1");
    REQUIRE(m1b);
    CHECK(m1b->lhs.value() == 10.0);
    CHECK(m1b->rhs.value() == 10.0);
    CHECK(m1b->equality);
    const Verdict* c34b = find(r42, "cor34_order");
    REQUIRE(c34b);
    CHECK(c34b->lhs.value() == 20.0);
    CHECK(c34b->rhs.value() == 20.0);
    CHECK(c34b->equality);
}

TEST_CASE("sphere Y_{5,3}: strict main1, tight main2") {
    AnalysisReport r = analyze_default(sphere_harmonic(5, 3));
    const Verdict* m1 = find(r, "main1");
    REQUIRE(m1);
    CHECK(m1->lhs.value() == 14.0);
    CHECK(m1->rhs.value() == 16.0);
    CHECK(m1->holds);
    CHECK_FALSE(m1->equality);
    REQUIRE(m1->equality_predicted.has_value());
    CHECK_FALSE(*m1->equality_predicted);  // pole orders exceed 2
    CHECK(m1->consistent);

    const Verdict* m2 = find(r, "main2");
    REQUIRE(m2);
    CHECK(m2->lhs.value() == 30.0);
    CHECK(m2->rhs.value() == 30.0);
    CHECK(m2->equality);
    CHECK(m2->consistent);  // s = 0 predicted equality
}

TEST_CASE("rectangle (2,1): domain bounds at equality") {
    AnalysisReport r = analyze_default(rectangle_sine(2, 1));
    const Verdict* m1 = find(r, "main1");
    REQUIRE(m1);
    CHECK(m1->lhs.value() == 1.0);
    CHECK(m1->rhs.value() == 1.0);
    CHECK(m1->equality);

    const Verdict* ref = find(r, "main1_refined");
    REQUIRE(ref);
    CHECK(ref->lhs.value() == 1.0);
    CHECK(ref->equality);

    const Verdict* m2 = find(r, "main2");
    REQUIRE(m2);
    CHECK(m2->lhs.value() == 2.0);
    CHECK(m2->rhs.value() == 2.0);

    const Verdict* d = find(r, "domain_count");
    REQUIRE(d);
    CHECK(d->lhs.value() == 1.0);
    CHECK(d->rhs.value() == 1.0);
    CHECK(d->equality);
    CHECK(d->consistent);

    const Verdict* ct = find(r, "contours_count");
    REQUIRE(ct);
    CHECK(ct->lhs.value() == 0.0);
    CHECK(ct->rhs.value() == 0.0);
    CHECK(ct->equality);

    const Verdict* dc = find(r, "domain_cor_count");
    REQUIRE(dc);
    CHECK(dc->lhs.value() == 0.0);
    CHECK(dc->rhs.value() == 0.0);
}

TEST_CASE("rectangle catalog: Thm 4.10 equality at jk - 1") {
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) {
            CAPTURE(j);
            CAPTURE(k);
            AnalysisReport r = analyze_default(rectangle_sine(j, k));
            const Verdict* d = find(r, "domain_count");
            if (j == 1 && k == 1) {
                CHECK(d == nullptr);  // no critical point, no verdict
                continue;
            }
            REQUIRE(d);
            CHECK(d->lhs.value() == (double)(j * k - 1));
            CHECK(d->rhs.value() == (double)(j * k - 1));
            CHECK(d->equality);
            CHECK(d->consistent);
            const Verdict* dc = find(r, "domain_cor_count");
            REQUIRE(dc);
            CHECK(dc->holds);
            const Verdict* dco = find(r, "domain_cor_order");
            REQUIRE(dco);
            CHECK(dco->holds);
            const Verdict* ct = find(r, "contours_order");
            REQUIRE(ct);
            CHECK(ct->holds);
        }
}

TEST_CASE("hypothesis gating: no critical points, no verdicts") {
    Eigenfunction circles = torus_combination({{1, 0, {1.0, 0.0}}});
    AnalysisReport r = analyze_default(circles);
    CHECK(find(r, "main1") == nullptr);
    CHECK(find(r, "cor34_count") == nullptr);
    CHECK(find(r, "cor35_count") == nullptr);
    REQUIRE(find(r, "courant"));  // Courant itself needs no critical point
    CHECK(find(r, "courant")->holds);

    AnalysisReport r11 = analyze_default(rectangle_sine(1, 1));
    CHECK(find(r11, "main1") == nullptr);
    CHECK(find(r11, "domain_count") == nullptr);
}

TEST_CASE("all catalog verdicts hold, equality matches prediction") {
    GridSpec grid;
    auto check_rows = [](const SweepResult& res) {
        for (const auto& row : res.rows) {
            CAPTURE(row.label);
            REQUIRE(row.ok);
            for (const auto& v : row.report.verdicts) {
                CAPTURE(v.theorem);
                CHECK(v.holds);
                if (v.theorem == "main1" || v.theorem == "main2" ||
                    v.theorem == "cor34_count" || v.theorem == "cor34_order" ||
                    v.theorem == "domain_count" || v.theorem == "domain_order")
                    CHECK(v.consistent);
            }
            const Verdict* plain = nullptr;
            const Verdict* refined = nullptr;
            for (const auto& v : row.report.verdicts) {
                if (v.theorem == "main1") plain = &v;
                if (v.theorem == "main1_refined") refined = &v;
            }
            if (plain && refined) CHECK(refined->lhs.twice >= plain->lhs.twice);
        }
    };
    check_rows(sweep_sphere(4, grid));
    check_rows(sweep_torus_products(3, 3, grid));
    check_rows(sweep_rectangle(3, 3, grid));
}

TEST_CASE("random shell sweep: deterministic and violation-free") {
    RandomSweepOptions opts;
    opts.samples = 10;
    opts.seed = 7;
    opts.shells = {1, 2, 5};
    opts.grid.resolution = 256;
    SweepResult res = sweep_random_torus(opts);
    CHECK(res.violations == 0);
    for (const auto& row : res.rows) {
        CAPTURE(row.label);
        CHECK(row.ok);
        CHECK(row.report.slack >= 0);
    }

    SweepResult res2 = sweep_random_torus(opts);
    std::ostringstream a, b;
    write_sweep_csv(a, res);
    write_sweep_csv(b, res2);
    CHECK(a.str() == b.str());
}

TEST_CASE("report JSON carries the documented schema") {
    AnalysisReport r = analyze_default(product_mode(2, 1));
    ordered_json j = report_to_json(r);
    CHECK(j["surface"]["kind"] == "torus");
    CHECK(j["surface"]["chi"] == 0);
    CHECK(j["counts"]["V"] == 8);
    CHECK(j["counts"]["E"] == 16);
    CHECK(j["counts"]["F"] == 8);
    CHECK(j["eigenfunction"]["family"] == "torus_fourier");
    CHECK(j["eigenfunction"]["modes"].size() == 4);
    CHECK(j["graph"]["vertices"].size() == 8);
    CHECK(j["graph"]["edges"].size() == 16);
    CHECK(j["verdicts"].is_array());
    CHECK(j["degree_histogram"]["4"] == 8);

    // vertices sorted lexicographically by wrapped position
    double prev_x = -1e9, prev_y = -1e9;
    for (const auto& v : j["graph"]["vertices"]) {
        double x = v["pos"][0], y = v["pos"][1];
        CHECK((x > prev_x || (x == prev_x && y >= prev_y)));
        prev_x = x;
        prev_y = y;
    }

    std::ostringstream csv;
    write_verdict_csv(csv, r.verdicts);
    CHECK(csv.str().find("main1,8,8,1,1,1,1") != std::string::npos);

    std::string svg = render_svg(r);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
}

TEST_CASE("certificate JSON") {
    Construction c = construct_high_vanishing(2);
    ordered_json j = certificate_to_json(c.certificate, c.u);
    CHECK(j["n"] == 2);
    CHECK(j["C"] == 6);
    CHECK(j["lambda"] == 5);
    CHECK(j["r2"] == 8);
    CHECK(j["mu"].size() == 8);
    CHECK(j["attained_order"].get<int>() >= 3);
    CHECK(j["arcs_at_origin"].get<int>() == 2 * j["attained_order"].get<int>());
}
