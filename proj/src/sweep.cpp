#include "nodal/sweep.hpp"

#include <cmath>
#include <functional>
#include <iterator>
#include <ostream>

#include "nodal/errors.hpp"
#include "nodal/lattice.hpp"

namespace nodal {

namespace {

// Deterministic across platforms: splitmix64 + Box-Muller, no <random>
// distributions (their streams are implementation-defined).
struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
    double gaussian() {
        double u1 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * kPi * u2);
    }
};

void finish(SweepResult& res) {
    for (const auto& row : res.rows) {
        if (!row.ok) continue;
        for (const auto& v : row.report.verdicts) {
            if (!v.holds) ++res.violations;
            Half slack = v.rhs - v.lhs;
            auto it = res.min_slack.find(v.theorem);
            if (it == res.min_slack.end() || slack.twice < it->second.twice)
                res.min_slack[v.theorem] = slack;
        }
    }
}

template <typename MakeRow>
SweepResult run_pool(int count, MakeRow&& make_row) {
    SweepResult res;
    res.rows.resize(count);
#ifdef NODAL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < count; ++i) res.rows[i] = make_row(i);
    finish(res);
    return res;
}

SweepRow analyze_row(const Eigenfunction& u, const GridSpec& grid, std::string label,
                     long long p1, long long p2) {
    SweepRow row;
    row.label = std::move(label);
    row.p1 = p1;
    row.p2 = p2;
    try {
        row.report = analyze(u, natural_surface(u), grid);
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

} // namespace

SweepResult sweep_sphere(int ell_max, const GridSpec& grid) {
    std::vector<std::pair<int, int>> params;
    for (int ell = 0; ell <= ell_max; ++ell)
        for (int m = 0; m <= ell; ++m) params.push_back({ell, m});
    return run_pool((int)params.size(), [&](int i) {
        auto [ell, m] = params[i];
        return analyze_row(sphere_harmonic(ell, m), grid,
                           "Y " + std::to_string(ell) + " " + std::to_string(m), ell, m);
    });
}

SweepResult sweep_torus_products(int l1_max, int l2_max, const GridSpec& grid) {
    std::vector<std::pair<int, int>> params;
    for (int l1 = 1; l1 <= l1_max; ++l1)
        for (int l2 = 1; l2 <= l2_max; ++l2) params.push_back({l1, l2});
    return run_pool((int)params.size(), [&](int i) {
        auto [l1, l2] = params[i];
        return analyze_row(product_mode(l1, l2), grid,
                           "product " + std::to_string(l1) + " " + std::to_string(l2), l1, l2);
    });
}

SweepResult sweep_rectangle(int j_max, int k_max, const GridSpec& grid) {
    std::vector<std::pair<int, int>> params;
    for (int j = 1; j <= j_max; ++j)
        for (int k = 1; k <= k_max; ++k) params.push_back({j, k});
    return run_pool((int)params.size(), [&](int i) {
        auto [j, k] = params[i];
        return analyze_row(rectangle_sine(j, k), grid,
                           "sine " + std::to_string(j) + " " + std::to_string(k), j, k);
    });
}

Eigenfunction random_shell_combination(long long shell_lambda, uint64_t seed,
                                       int sample_index, int attempt) {
    LatticeShell sh = shell(shell_lambda);
    if (sh.points.empty())
        throw std::invalid_argument("random_shell_combination: empty shell");
    SplitMix64 rng{seed ^ (0x5851F42D4C957F2Dull * (uint64_t)(sample_index + 1)) ^
                   (0x14057B7EF767814Full * (uint64_t)attempt)};
    rng.next();
    rng.next();
    std::vector<TorusMode> modes;
    for (auto [l1, l2] : sh.points)
        modes.push_back({l1, l2, {0.5 * rng.gaussian(), 0.5 * rng.gaussian()}});
    return torus_combination(std::move(modes));
}

SweepResult sweep_random_torus(const RandomSweepOptions& opts) {
    return run_pool(opts.samples, [&](int i) {
        long long lam = opts.shells[i % opts.shells.size()];
        SweepRow row;
        row.p1 = lam;
        row.p2 = i;
        row.label = "shell " + std::to_string(lam) + " sample " + std::to_string(i);
        for (int attempt = 0; attempt < 6; ++attempt) {
            try {
                Eigenfunction u = random_shell_combination(lam, opts.seed, i, attempt);
                row.report = analyze(u, natural_surface(u), opts.grid);
                row.report.has_seed = true;
                row.report.seed = opts.seed;
                row.ok = true;
                row.error.clear();
                row.resamples = attempt;
                return row;
            } catch (const ExtractionError& e) {
                row.ok = false;
                row.error = e.what();  // degenerate extraction: resample
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
                return row;
            }
        }
        return row;
    });
}

void write_sweep_csv(std::ostream& os, const SweepResult& res) {
    static const char* kTheorems[] = {
        "courant",        "main1",         "main1_refined", "main2",
        "cor34_count",    "cor34_order",   "cor35_count",   "cor35_order",
        "contours_count", "contours_order", "domain_count", "domain_order",
        "domain_cor_count", "domain_cor_order",
    };
    os << "# nodal-atlas sweep v1\n";
    os << "label,p1,p2,ok,resamples,lambda,k,V,E,F,n,c,c_int,c_bnd,"
          "sum_gamma_int,sum_gamma_bnd,slack,cellular,all_orders_two,seed";
    for (const char* t : kTheorems) os << ',' << t << "_holds," << t << "_slack";
    os << '\n';

    for (const auto& row : res.rows) {
        const AnalysisReport& r = row.report;
        os << row.label << ',' << row.p1 << ',' << row.p2 << ',' << (row.ok ? 1 : 0)
           << ',' << row.resamples << ',';
        if (!row.ok) {
            os << ",,,,,,,,,,,,,,,";
            for (size_t t = 0; t < std::size(kTheorems); ++t) os << ",,";
            os << '\n';
            continue;
        }
        os << r.lambda << ',' << r.k_index << ',' << r.V << ',' << r.E << ',' << r.F
           << ',' << r.n << ',' << r.c << ',' << r.c_int << ',' << r.c_bnd << ','
           << r.sum_gamma_int << ',' << r.sum_gamma_bnd << ',' << r.slack << ','
           << (r.cellular ? 1 : 0) << ',' << (r.all_orders_two ? 1 : 0) << ',';
        if (r.has_seed) os << r.seed;
        for (const char* t : kTheorems) {
            const Verdict* found = nullptr;
            for (const auto& v : r.verdicts)
                if (v.theorem == t) found = &v;
            if (found)
                os << ',' << (found->holds ? 1 : 0) << ',' << (found->rhs - found->lhs).str();
            else
                os << ",,";
        }
        os << '\n';
    }

    os << "# min_slack per theorem\n";
    for (const auto& [theorem, slack] : res.min_slack)
        os << "# min_slack," << theorem << ',' << slack.str() << '\n';
    os << "# violations," << res.violations << '\n';
}

} // namespace nodal
