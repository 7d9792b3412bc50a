#include "nodal/theorems.hpp"

#include <cmath>

namespace nodal {

std::string Half::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    double v = twice / 2.0;
    std::string s = std::to_string(v);
    while (s.back() == '0') s.pop_back();
    return s;
}

namespace {

Verdict make_verdict(std::string id, Half lhs, Half rhs, std::optional<bool> predicted) {
    Verdict v;
    v.theorem = std::move(id);
    v.lhs = lhs;
    v.rhs = rhs;
    v.holds = lhs <= rhs;
    v.equality = lhs == rhs;
    v.equality_predicted = predicted;
    v.consistent = !predicted.has_value() || v.equality == *predicted;
    return v;
}

} // namespace

AnalysisReport summarize(const Eigenfunction& u, const SurfaceDescriptor& s,
                         NodalGraph graph) {
    AnalysisReport r;
    r.surface = s;
    r.eigenfunction = u;
    r.lambda = u.lambda;
    r.k_index = eigenvalue_index(u);

    r.V = graph.V;
    r.E = graph.E;
    r.F = graph.F;
    r.n = graph.n_components;
    r.c = graph.c_circles;
    r.V_graph = graph.V_graph;
    r.E_graph = graph.E_graph;
    r.cellular = graph.cellular;
    r.c4 = c4_split(graph);
    r.degree_hist = degree_histogram(graph);

    for (const auto& v : graph.vertices) {
        r.vertices.push_back({v.pos, v.cls, v.degree, v.vanishing_order});
        if (v.cls == VertexClass::Interior) {
            ++r.c_int;
            r.sum_gamma_int += v.vanishing_order;
            if (v.vanishing_order != 2) r.all_orders_two = false;
        } else if (v.cls == VertexClass::Boundary) {
            ++r.c_bnd;
            r.sum_gamma_bnd += v.vanishing_order;
            if (v.vanishing_order != 2) r.all_orders_two = false;
        }
    }

    r.slack = euler_slack(graph, s);
    r.graph = std::move(graph);
    return r;
}

AnalysisReport analyze(const Eigenfunction& u, const SurfaceDescriptor& s,
                       const GridSpec& grid, const ExtractOptions& opts) {
    NodalGraph graph = extract_nodal_graph(u, s, grid, opts);
    AnalysisReport r = summarize(u, s, std::move(graph));
    r.verdicts = run_all_checks(r);
    return r;
}

std::optional<Verdict> check_courant(const AnalysisReport& r) {
    return make_verdict("courant", Half::whole(r.F), Half::whole(r.k_index), std::nullopt);
}

std::optional<Verdict> check_main1(const AnalysisReport& r) {
    if (!r.has_critical_point()) return std::nullopt;
    Half lhs = Half::whole(r.c_int) + Half::half_of(r.c_bnd);
    Half rhs = Half::whole(r.F - r.surface.euler_characteristic - (r.n - 1));
    return make_verdict("main1", lhs, rhs, r.all_orders_two && r.slack == 0);
}

std::optional<Verdict> check_main1_refined(const AnalysisReport& r) {
    if (!r.has_critical_point()) return std::nullopt;
    Half lhs = Half::whole(r.c_int + r.c4.boundary_in_c4) + Half::half_of(r.c4.boundary_out_c4);
    Half rhs = Half::whole(r.F - r.surface.euler_characteristic - (r.n - 1));
    return make_verdict("main1_refined", lhs, rhs, std::nullopt);
}

std::optional<Verdict> check_main2(const AnalysisReport& r) {
    if (!r.has_critical_point()) return std::nullopt;
    Half lhs = Half::whole(r.sum_gamma_int) + Half::half_of(r.sum_gamma_bnd);
    Half rhs = Half::whole(r.F - r.surface.euler_characteristic + r.c_int - (r.n - 1)) +
               Half::half_of(r.c_bnd);
    return make_verdict("main2", lhs, rhs, r.slack == 0);
}

std::optional<std::pair<Verdict, Verdict>> check_corollary_34(const AnalysisReport& r) {
    if (!r.has_critical_point()) return std::nullopt;
    std::optional<bool> predicted = r.cellular && r.all_orders_two;
    Verdict count = make_verdict(
        "cor34_count", Half::whole(r.c_int) + Half::half_of(r.c_bnd),
        Half::whole(r.F - r.surface.euler_characteristic), predicted);
    Verdict order = make_verdict(
        "cor34_order", Half::whole(r.sum_gamma_int) + Half::half_of(r.sum_gamma_bnd),
        Half::whole(2 * (r.F - r.surface.euler_characteristic)), predicted);
    return std::make_pair(count, order);
}

std::optional<std::pair<Verdict, Verdict>> check_corollary_35(const AnalysisReport& r) {
    if (!r.has_critical_point()) return std::nullopt;
    Verdict count = make_verdict(
        "cor35_count", Half::whole(r.c_int) + Half::half_of(r.c_bnd),
        Half::whole(r.k_index - r.surface.euler_characteristic), std::nullopt);
    Verdict order = make_verdict(
        "cor35_order", Half::whole(r.sum_gamma_int) + Half::half_of(r.sum_gamma_bnd),
        Half::whole(2 * (r.k_index - r.surface.euler_characteristic)), std::nullopt);
    return std::make_pair(count, order);
}

std::optional<std::pair<Verdict, Verdict>> check_contours(const AnalysisReport& r) {
    if (!r.has_critical_point()) return std::nullopt;
    long long chi = r.surface.euler_characteristic;
    long long q = r.surface.contour_count;
    Verdict count = make_verdict("contours_count", Half::whole(r.c_int),
                                 Half::whole(r.F - chi - q), std::nullopt);
    Verdict order = make_verdict("contours_order", Half::whole(r.sum_gamma_int),
                                 Half::whole(2 * (r.F - chi - q)), std::nullopt);
    return std::make_pair(count, order);
}

std::optional<std::pair<Verdict, Verdict>> check_domain(const AnalysisReport& r) {
    if (r.surface.kind != SurfaceKind::Rectangle) return std::nullopt;
    if (!r.has_critical_point()) return std::nullopt;
    long long q = r.surface.contour_count;
    std::optional<bool> predicted = r.all_orders_two && r.slack == 0;
    Verdict count = make_verdict(
        "domain_count", Half::whole(r.c_int) + Half::half_of(r.c_bnd),
        Half::whole(r.F + q - 2 - (r.n - 1)), predicted);
    Verdict order = make_verdict(
        "domain_order", Half::whole(r.sum_gamma_int) + Half::half_of(r.sum_gamma_bnd),
        Half::whole(2 * r.F + 2 * q - 4 - 2 * (r.n - 1)), predicted);
    return std::make_pair(count, order);
}

std::optional<std::pair<Verdict, Verdict>> check_domain_corollary(const AnalysisReport& r) {
    if (r.surface.kind != SurfaceKind::Rectangle) return std::nullopt;
    if (!r.has_critical_point()) return std::nullopt;
    Verdict count = make_verdict("domain_cor_count", Half::whole(r.c_int),
                                 Half::whole(r.F - 2), std::nullopt);
    Verdict order = make_verdict("domain_cor_order", Half::whole(r.sum_gamma_int),
                                 Half::whole(2 * r.F - 4), std::nullopt);
    return std::make_pair(count, order);
}

std::vector<Verdict> run_all_checks(const AnalysisReport& r) {
    std::vector<Verdict> out;
    auto push1 = [&](const std::optional<Verdict>& v) {
        if (v) out.push_back(*v);
    };
    auto push2 = [&](const std::optional<std::pair<Verdict, Verdict>>& v) {
        if (v) {
            out.push_back(v->first);
            out.push_back(v->second);
        }
    };
    push1(check_courant(r));
    push1(check_main1(r));
    push1(check_main1_refined(r));
    push1(check_main2(r));
    push2(check_corollary_34(r));
    push2(check_corollary_35(r));
    push2(check_contours(r));
    push2(check_domain(r));
    push2(check_domain_corollary(r));
    return out;
}

} // namespace nodal
