#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nodal/theorems.hpp"

namespace nodal {

struct SweepRow {
    std::string label;  // e.g. "product 2 1", "Y 3 1", "shell 25 sample 7"
    long long p1 = 0, p2 = 0;
    bool ok = true;
    std::string error;
    int resamples = 0;
    AnalysisReport report;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int violations = 0;                       // verdicts with holds == false
    std::map<std::string, Half> min_slack;    // per theorem: min(rhs - lhs)
};

/// Catalog sweeps; rows fan out to an OpenMP worker pool and are assembled
/// in deterministic order.
SweepResult sweep_sphere(int ell_max, const GridSpec& grid);
SweepResult sweep_torus_products(int l1_max, int l2_max, const GridSpec& grid);
SweepResult sweep_rectangle(int j_max, int k_max, const GridSpec& grid);

/// Seeded random real combinations on the given shells, round-robin across
/// samples.  Samples whose extraction reports a degenerate state are
/// resampled with a derived seed (bounded retries).
struct RandomSweepOptions {
    std::vector<long long> shells{1, 2, 4, 5, 25};
    int samples = 100;
    uint64_t seed = 7;
    GridSpec grid;
};
SweepResult sweep_random_torus(const RandomSweepOptions& opts);

/// One deterministic random combination (exposed for tests and `analyze`).
Eigenfunction random_shell_combination(long long shell_lambda, uint64_t seed,
                                       int sample_index, int attempt);

/// Fixed-column CSV, one row per eigenfunction, trailing per-theorem
/// min-slack summary rows.
void write_sweep_csv(std::ostream& os, const SweepResult& res);

} // namespace nodal
