#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nodal/extract.hpp"

namespace nodal {

/// Exact arithmetic for verdict sides: integers and half-integers only,
/// stored as twice the value.  No floating comparison anywhere.
struct Half {
    long long twice = 0;
    static Half whole(long long v) { return {2 * v}; }
    static Half half_of(long long v) { return {v}; }
    Half operator+(Half o) const { return {twice + o.twice}; }
    Half operator-(Half o) const { return {twice - o.twice}; }
    bool operator==(const Half& o) const { return twice == o.twice; }
    bool operator<=(const Half& o) const { return twice <= o.twice; }
    bool operator>=(const Half& o) const { return twice >= o.twice; }
    double value() const { return twice / 2.0; }
    std::string str() const;
};

struct Verdict {
    std::string theorem;
    Half lhs, rhs;
    bool holds = false;
    bool equality = false;
    std::optional<bool> equality_predicted;  // absent when the source states none
    bool consistent = true;                  // equality == prediction, when predicted
};

struct VertexSummary {
    Vec2 pos;
    VertexClass cls = VertexClass::Interior;
    int degree = 0;
    int order = 0;
};

/// Everything the theorem checks consume, plus the graph for export.
struct AnalysisReport {
    SurfaceDescriptor surface;
    Eigenfunction eigenfunction;
    double lambda = 0.0;
    long long k_index = 0;

    long long V = 0, E = 0, F = 0;  // paper-level counts, F = mu(u)
    int n = 0, c = 0;
    long long V_graph = 0, E_graph = 0;
    long long c_int = 0, c_bnd = 0;
    C4Split c4;
    std::map<int, long long> degree_hist;
    std::vector<VertexSummary> vertices;
    long long sum_gamma_int = 0, sum_gamma_bnd = 0;
    bool all_orders_two = true;  // over C(u); corners and dummies excluded
    long long slack = 0;
    bool cellular = false;

    bool has_seed = false;  // random-sweep provenance
    uint64_t seed = 0;

    std::vector<Verdict> verdicts;
    NodalGraph graph;

    bool has_critical_point() const { return c_int + c_bnd >= 1; }
};

/// Full pipeline: extraction, aggregation, all applicable theorem checks.
AnalysisReport analyze(const Eigenfunction& u, const SurfaceDescriptor& s,
                       const GridSpec& grid, const ExtractOptions& opts = {});

/// Aggregates extraction output without running the checks.
AnalysisReport summarize(const Eigenfunction& u, const SurfaceDescriptor& s,
                         NodalGraph graph);

// Individual checks return nothing when their hypotheses fail (no vacuous
// verdicts).  All sides are exact.

std::optional<Verdict> check_courant(const AnalysisReport& r);
std::optional<Verdict> check_main1(const AnalysisReport& r);
std::optional<Verdict> check_main1_refined(const AnalysisReport& r);
std::optional<Verdict> check_main2(const AnalysisReport& r);
std::optional<std::pair<Verdict, Verdict>> check_corollary_34(const AnalysisReport& r);
std::optional<std::pair<Verdict, Verdict>> check_corollary_35(const AnalysisReport& r);
std::optional<std::pair<Verdict, Verdict>> check_contours(const AnalysisReport& r);
std::optional<std::pair<Verdict, Verdict>> check_domain(const AnalysisReport& r);
std::optional<std::pair<Verdict, Verdict>> check_domain_corollary(const AnalysisReport& r);

/// Every applicable check in a fixed order.
std::vector<Verdict> run_all_checks(const AnalysisReport& r);

} // namespace nodal
