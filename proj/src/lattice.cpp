#include "nodal/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace nodal {

namespace {

long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = (long long)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

const std::vector<int>& small_primes() {
    static const std::vector<int> primes = [] {
        std::vector<int> p;
        std::vector<bool> comp(10001, false);
        for (int i = 2; i <= 10000; ++i) {
            if (comp[i]) continue;
            p.push_back(i);
            for (int j = 2 * i; j <= 10000; j += i) comp[j] = true;
        }
        return p;
    }();
    return primes;
}

} // namespace

long long r2_formula(long long n) {
    if (n < 0) throw std::invalid_argument("r2_formula: negative argument");
    if (n == 0) return 1;  // the origin; outside the Gauss statement proper

    long long rest = n;
    long long count = 4;
    for (int p : small_primes()) {
        if ((long long)p * p > rest) break;
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        if (p == 2) continue;            // powers of two do not matter
        if (p % 4 == 1) count *= (e + 1);
        else if (e % 2 != 0) return 0;   // prime 3 mod 4 with odd exponent
    }
    if (rest > 1) {
        // rest is prime (n <= 1e8 so trial division up to 1e4 suffices)
        if (rest % 4 == 1) count *= 2;
        else if (rest % 4 == 3) return 0;
        // rest == 2 impossible here, all factors of 2 were removed
    }
    return count;
}

long long r2_bruteforce(long long n) {
    if (n < 0) throw std::invalid_argument("r2_bruteforce: negative argument");
    if (n > 100'000'000)
        throw std::invalid_argument("r2_bruteforce: argument above 1e8 guard");
    if (n == 0) return 1;
    long long r = isqrt_ll(n);
    long long count = 0;
    for (long long l1 = -r; l1 <= r; ++l1) {
        long long rest = n - l1 * l1;
        long long s = isqrt_ll(rest);
        if (s * s == rest) count += (s == 0) ? 1 : 2;
    }
    return count;
}

LatticeShell shell(long long lambda) {
    if (lambda < 0) throw std::invalid_argument("shell: negative eigenvalue");
    LatticeShell sh;
    sh.lambda = lambda;
    long long r = isqrt_ll(lambda);
    for (long long l1 = -r; l1 <= r; ++l1) {
        long long rest = lambda - l1 * l1;
        long long s = isqrt_ll(rest);
        if (s * s != rest) continue;
        if (s == 0) {
            sh.points.emplace_back((int)l1, 0);
        } else {
            sh.points.emplace_back((int)l1, (int)s);
            sh.points.emplace_back((int)l1, (int)-s);
        }
    }
    std::sort(sh.points.begin(), sh.points.end());
    return sh;
}

long long lattice_count_below(long long lambda) {
    long long below = 0;
    long long r = isqrt_ll(lambda);
    for (long long l1 = -r; l1 <= r; ++l1) {
        long long rest = lambda - l1 * l1;
        if (rest <= 0) continue;
        long long m2 = isqrt_ll(rest - 1);
        below += 2 * m2 + 1;
    }
    return below;
}

long long courant_index_of_shell(long long lambda) {
    return lattice_count_below(lambda) + 1;
}

MomentSystem build_moment_system(int n, const LatticeShell& sh) {
    MomentSystem ms;
    ms.n = n;
    ms.lambda = sh.lambda;
    ms.points = sh.points;
    for (int total = 0; total <= n; ++total)
        for (int a1 = total; a1 >= 0; --a1)
            ms.alphas.emplace_back(a1, total - a1);

    const size_t rows = ms.alphas.size();
    const size_t cols = ms.points.size();
    ms.matrix.assign(rows * cols, 0.0);
    for (size_t r = 0; r < rows; ++r) {
        auto [a1, a2] = ms.alphas[r];
        for (size_t c = 0; c < cols; ++c) {
            auto [k1, k2] = ms.points[c];
            double v = 1.0;
            for (int t = 0; t < a1; ++t) v *= k1;
            for (int t = 0; t < a2; ++t) v *= k2;
            ms.matrix[r * cols + c] = v;
        }
    }
    return ms;
}

std::vector<std::vector<double>> nullspace_qr(std::vector<double> a, int m, int n,
                                              double tol_rel) {
    // Column-pivoted Householder QR; R overwrites `a`.
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    std::vector<double> colnorm(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) colnorm[j] += a[i * n + j] * a[i * n + j];

    const int kmax = std::min(m, n);
    int rank = 0;
    double pivot0 = 0.0;
    for (int k = 0; k < kmax; ++k) {
        // live column norms, recomputed for stability (matrices are tiny)
        int piv = k;
        double best = -1.0;
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < m; ++i) s += a[i * n + j] * a[i * n + j];
            if (s > best) { best = s; piv = j; }
        }
        if (piv != k) {
            for (int i = 0; i < m; ++i) std::swap(a[i * n + k], a[i * n + piv]);
            std::swap(perm[k], perm[piv]);
        }
        double normx = std::sqrt(best);
        if (k == 0) pivot0 = normx;
        if (normx <= tol_rel * pivot0 || normx == 0.0) break;
        ++rank;

        // Householder vector v = x + sign(x0) |x| e1, stored in-place below R
        double x0 = a[k * n + k];
        double alpha = (x0 >= 0) ? -normx : normx;
        std::vector<double> v(m - k);
        v[0] = x0 - alpha;
        for (int i = k + 1; i < m; ++i) v[i - k] = a[i * n + k];
        double vnorm2 = 0.0;
        for (double t : v) vnorm2 += t * t;
        a[k * n + k] = alpha;
        for (int i = k + 1; i < m; ++i) a[i * n + k] = 0.0;
        if (vnorm2 == 0.0) continue;
        for (int j = k + 1; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < m; ++i) dot += v[i - k] * a[i * n + j];
            double f = 2.0 * dot / vnorm2;
            for (int i = k; i < m; ++i) a[i * n + j] -= f * v[i - k];
        }
    }

    // Null vectors: for each free column f, back-substitute R11 y = -R12(:,f).
    std::vector<std::vector<double>> basis;
    for (int f = rank; f < n; ++f) {
        std::vector<double> y(rank, 0.0);
        for (int i = rank - 1; i >= 0; --i) {
            double s = -a[i * n + f];
            for (int j = i + 1; j < rank; ++j) s -= a[i * n + j] * y[j];
            y[i] = s / a[i * n + i];
        }
        std::vector<double> x(n, 0.0);
        for (int i = 0; i < rank; ++i) x[perm[i]] = y[i];
        x[perm[f]] = 1.0;
        double nrm = 0.0;
        for (double t : x) nrm += t * t;
        nrm = std::sqrt(nrm);
        for (double& t : x) t /= nrm;
        // canonical sign: largest-magnitude entry positive
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::fabs(x[i]) > std::fabs(x[imax])) imax = i;
        if (x[imax] < 0)
            for (double& t : x) t = -t;
        basis.push_back(std::move(x));
    }
    return basis;
}

namespace {

// Sign changes of t -> eval(u, r(cos t, sin t)) around the origin; the count
// must agree on the two radii, otherwise r is shrunk once more.
int ring_sign_changes(const Eigenfunction& u, double r, int samples) {
    int changes = 0;
    double prev = eval(u, {r, 0.0});
    for (int i = 1; i <= samples; ++i) {
        double t = 2 * kPi * i / samples;
        double v = eval(u, {r * std::cos(t), r * std::sin(t)});
        if ((prev < 0) != (v < 0)) ++changes;
        prev = v;
    }
    return changes;
}

int arcs_at_origin_count(const Eigenfunction& u) {
    double r = 0.02;
    int samples = 4096;
    int last = -1;
    for (int attempt = 0; attempt < 6; ++attempt) {
        int c = ring_sign_changes(u, r, samples);
        if (c == last) return c;
        last = c;
        r *= 0.5;
    }
    return last;
}

} // namespace

Construction construct_high_vanishing(int n, ConstructOptions opts) {
    if (n < 1 || n > 8)
        throw std::invalid_argument("construct_high_vanishing: need 1 <= n <= 8");
    const int c_n = (n + 1) * (n + 2) / 2;

    long long lambda = -1;
    if (opts.paper_lambda) {
        if (n > 4)
            throw std::invalid_argument("paper lambda 5^C only supported for n <= 4");
        lambda = 1;
        for (int i = 0; i < c_n; ++i) lambda *= 5;
    } else {
        for (long long cand = 1; cand <= opts.lambda_search_bound; ++cand) {
            if (r2_formula(cand) > c_n) { lambda = cand; break; }
        }
        if (lambda < 0)
            throw std::runtime_error("construct_high_vanishing: no shell with r2 > C(n) below bound");
    }

    LatticeShell sh = shell(lambda);
    MomentSystem ms = build_moment_system(n, sh);
    const int rows = (int)ms.alphas.size();
    const int cols = (int)ms.points.size();

    auto basis = nullspace_qr(ms.matrix, rows, cols);
    if (basis.empty())
        throw std::runtime_error("construct_high_vanishing: moment system has trivial null space");

    const std::vector<double>& x = basis.front();
    std::vector<TorusMode> modes(cols);
    for (int c = 0; c < cols; ++c)
        modes[c] = {ms.points[c].first, ms.points[c].second, {x[c], 0.0}};

    // Re sum mu e^{ikx} = sum x_k cos<k,x> can vanish identically when x is
    // antisymmetric under k -> -k; switch to the sine part in that case.
    auto grid_peak = [&](const std::vector<TorusMode>& md) {
        Eigenfunction probe;
        probe.family = Family::TorusFourier;
        probe.modes = md;
        probe.lambda = (double)lambda;
        double mx = 0.0;
        for (int i = 0; i < 37; ++i)
            for (int jj = 0; jj < 37; ++jj) {
                Vec2 p{-kPi + 2 * kPi * (i + 0.31) / 37, -kPi + 2 * kPi * (jj + 0.47) / 37};
                mx = std::max(mx, std::fabs(eval(probe, p)));
            }
        return mx;
    };
    std::vector<TorusMode> modes_im = modes;
    for (auto& md : modes_im) md.mu *= std::complex<double>(0.0, -1.0);
    double peak_re = grid_peak(modes);
    double peak_im = grid_peak(modes_im);
    if (peak_im > peak_re) modes = std::move(modes_im);

    Eigenfunction u = torus_combination(std::move(modes));

    VanishingCertificate cert;
    cert.n = n;
    cert.lambda = lambda;
    cert.equations = c_n;
    cert.r2 = sh.r2();
    cert.used_paper_lambda = opts.paper_lambda;

    // Exact Taylor sums: all |alpha| <= n moments must vanish.
    double mu_mass = coeff_scale(u);
    double worst = 0.0;
    for (int total = 0; total <= n; ++total) {
        double scale = mu_mass * std::pow((double)lambda, total / 2.0);
        for (int a1 = 0; a1 <= total; ++a1) {
            std::complex<double> t = torus_moment_sum(u.modes, a1, total - a1);
            worst = std::max(worst, std::abs(t) / scale);
        }
    }
    cert.residual_max = worst;

    // First order with a genuinely nonzero derivative of the realified u.
    int attained = 0;
    for (int total = n + 1; total <= n + 12; ++total) {
        double scale = mu_mass * std::pow((double)lambda, total / 2.0);
        double mx = 0.0;
        for (int a1 = 0; a1 <= total; ++a1)
            mx = std::max(mx, std::fabs(partial(u, {0.0, 0.0}, a1, total - a1)));
        if (mx > 1e-7 * scale) { attained = total; break; }
    }
    if (attained == 0)
        throw std::runtime_error("construct_high_vanishing: unresolved vanishing order");
    cert.attained_order = attained;

    cert.arcs_at_origin = arcs_at_origin_count(u);
    return {std::move(u), cert};
}

} // namespace nodal
