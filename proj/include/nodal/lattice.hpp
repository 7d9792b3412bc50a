#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nodal/eigenfunction.hpp"

namespace nodal {

/// The set I_lambda of integer lattice points on the circle of radius
/// sqrt(lambda), closed under the four sign/coordinate symmetries.
struct LatticeShell {
    long long lambda = 0;
    std::vector<std::pair<int, int>> points;
    long long r2() const { return (long long)points.size(); }
};

/// Number of ordered pairs (l1, l2) with l1^2 + l2^2 = n by Gauss's
/// sum-of-two-squares formula (trial-division factorization).  n = 0 returns
/// 1 for the origin by convention.
long long r2_formula(long long n);

/// Exhaustive-scan oracle for r2_formula; guarded to n <= 1e8.
long long r2_bruteforce(long long n);

LatticeShell shell(long long lambda);

/// #{ l in Z^2 : |l|^2 < lambda }
long long lattice_count_below(long long lambda);

/// Courant index of the eigenspace of shell lambda: lattice_count_below + 1.
long long courant_index_of_shell(long long lambda);

/// Moment system of the prescribed-vanishing construction: the matrix
/// (k^alpha) over alpha with |alpha| <= n and k in I_lambda, whose null
/// vectors are coefficient sets mu with sum_k mu_k k^alpha = 0.
struct MomentSystem {
    int n = 0;                                   // vanishing target
    long long lambda = 0;
    std::vector<std::pair<int, int>> alphas;     // |alpha| <= n, size C(n)
    std::vector<std::pair<int, int>> points;     // I_lambda
    std::vector<double> matrix;                  // row-major, C(n) x r2
};

MomentSystem build_moment_system(int n, const LatticeShell& sh);

/// Solution record of construct_high_vanishing.
struct VanishingCertificate {
    int n = 0;                  // requested order
    long long lambda = 0;
    int equations = 0;          // C(n) = (n+1)(n+2)/2
    long long r2 = 0;
    double residual_max = 0.0;  // max relative moment residual over |alpha| <= n
    int attained_order = 0;     // first order with a nonvanishing derivative
    int arcs_at_origin = 0;     // sign changes of u on small circles around 0
    bool used_paper_lambda = false;
};

struct Construction {
    Eigenfunction u;
    VanishingCertificate certificate;
};

struct ConstructOptions {
    bool paper_lambda = false;   // lambda = 5^C(n) as in the source argument
    long long lambda_search_bound = 10'000'000;
};

/// Builds a torus eigenfunction vanishing to order > n at the origin:
/// picks the smallest shell with r2 > C(n) (or 5^C(n) under the flag),
/// solves the moment system by column-pivoted Householder QR, and certifies
/// the result with exact Taylor sums.  1 <= n <= 8.
Construction construct_high_vanishing(int n, ConstructOptions opts = {});

/// Null-space basis of a dense row-major m x n matrix by column-pivoted
/// Householder QR; rank decided at `tol_rel` relative to the largest column
/// norm.  Exposed for testing.
std::vector<std::vector<double>> nullspace_qr(std::vector<double> a, int m, int n,
                                              double tol_rel = 1e-8);

} // namespace nodal
