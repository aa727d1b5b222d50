#include "fracwave/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fracwave/bdf2.hpp"

namespace fracwave {

double expected_order(double beta, double sigma, double gamma) {
    return std::min(gamma * sigma, 3.0 - beta);
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& prob, double gamma,
                                              const std::vector<int>& N_list, int M,
                                              const StepperOptions& opt, bool use_bdf2) {
    if (N_list.empty()) throw std::invalid_argument("convergence_study: empty N list");
    for (size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] != 2 * N_list[i - 1])
            throw std::invalid_argument(
                "convergence_study: N list must double between entries for order computation");
    if (!prob.exact_u)
        throw std::invalid_argument("convergence_study: problem needs an exact solution");

    const Grid2D grid(M, prob.L);
    const double exp_ord = expected_order(prob.beta, prob.sigma, gamma);
    std::vector<ConvergenceRow> rows;
    for (int N : N_list) {
        const auto t0 = std::chrono::steady_clock::now();
        const TimeMesh mesh = graded_mesh(N, prob.T, gamma);
        const SolutionReport rep =
            use_bdf2 ? bdf2_run(prob, mesh, grid) : run(prob, mesh, grid, opt);
        ConvergenceRow row;
        row.N = N;
        row.e_max = rep.e_max;
        row.e_l2 = rep.e_l2;
        row.expected = exp_ord;
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (!rows.empty()) {
            row.order_max = std::log2(rows.back().e_max / row.e_max);
            row.order_l2 = std::log2(rows.back().e_l2 / row.e_l2);
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

/// Adaptive Simpson quadrature with absolute tolerance.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

TruncationReport truncation_study(const TimeMesh& mesh, FracOrder order, double sigma) {
    if (!(sigma > 0.0) || !(sigma < 2.0))
        throw std::invalid_argument("truncation_study: sigma must lie in (0,2)");
    const int N = mesh.N;
    const double alpha = order.alpha;
    const auto a_rows = l1_rows(mesh, order);
    const auto p_rows = dcc_rows(a_rows);

    // Local residuals R^j of the discrete derivative on exact samples of t^sigma.
    std::vector<double> R(static_cast<size_t>(N) + 1, 0.0);
    std::vector<double> vh(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) vh[static_cast<size_t>(k)] = std::pow(mesh.half_point(k), sigma);
    for (int j = 1; j <= N; ++j) {
        std::vector<double> diffs(static_cast<size_t>(j));
        for (int k = 1; k <= j; ++k)
            diffs[static_cast<size_t>(k - 1)] = vh[static_cast<size_t>(k)] - vh[static_cast<size_t>(k - 1)];
        R[static_cast<size_t>(j)] = caputo_power(alpha, sigma, mesh.half_point(j)) -
                                    discrete_caputo(a_rows[static_cast<size_t>(j - 1)], diffs);
    }

    // Cell moments G^j = int_{t_{j-3/2}}^{t_{j-1/2}} (t - t_{j-3/2}) |v''| dt
    // with |v''(t)| = |sigma (sigma-1)| t^{sigma-2}.
    const double c2 = std::abs(sigma * (sigma - 1.0));
    std::vector<double> G(static_cast<size_t>(N) + 1, 0.0);
    G[1] = c2 * std::pow(mesh.half_point(1), sigma) / sigma;  // exact; integrand singular at 0
    for (int j = 2; j <= N; ++j) {
        const double b = mesh.half_point(j - 1);
        const double e = mesh.half_point(j);
        G[static_cast<size_t>(j)] = adaptive_quad(
            [&](double t) { return c2 * (t - b) * std::pow(t, sigma - 2.0); }, b, e, 1e-13);
    }

    TruncationReport rep;
    rep.measured.resize(static_cast<size_t>(N));
    rep.bound.resize(static_cast<size_t>(N));
    rep.bound_ok = true;
    for (int n = 1; n <= N; ++n) {
        const auto& p = p_rows[static_cast<size_t>(n - 1)].p;
        double lhs = 0.0, rhs = 0.0;
        for (int j = 1; j <= n; ++j) {
            lhs += p[static_cast<size_t>(n - j)] * std::abs(R[static_cast<size_t>(j)]);
            rhs += p[static_cast<size_t>(n - j)] * a_rows[static_cast<size_t>(j - 1)].a[0] *
                   G[static_cast<size_t>(j)];
        }
        rhs *= 2.0;
        rep.measured[static_cast<size_t>(n - 1)] = lhs;
        rep.bound[static_cast<size_t>(n - 1)] = rhs;
        rep.max_measured = std::max(rep.max_measured, lhs);
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? 1e300 : 0.0);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        // Absolute slack covers the round-off-only case (e.g. sigma = 1 has R = 0
        // in exact arithmetic and a vanishing bound).
        if (lhs > rhs * (1.0 + 1e-10) + 1e-12) rep.bound_ok = false;
    }
    return rep;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& vals) {
    if (xs.size() != vals.size() || xs.size() < 2)
        throw std::invalid_argument("fit_slope: need matching inputs of length >= 2");
    const size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        const double x = std::log(xs[i]);
        const double y = std::log(vals[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(m);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TimeMesh random_admissible_mesh(uint64_t seed, int max_N, double T) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_N(3, max_N);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int N = pick_N(rng);
    // Non-decreasing steps: each step grows by a random factor in [1, 1.25].
    std::vector<double> tau(static_cast<size_t>(N));
    tau[0] = 0.5 + u01(rng);
    for (int n = 1; n < N; ++n) tau[static_cast<size_t>(n)] = tau[static_cast<size_t>(n - 1)] * (1.0 + 0.25 * u01(rng));
    double total = 0.0;
    for (double s : tau) total += s;
    std::vector<double> levels(static_cast<size_t>(N) + 1, 0.0);
    for (int n = 1; n <= N; ++n)
        levels[static_cast<size_t>(n)] = levels[static_cast<size_t>(n - 1)] + tau[static_cast<size_t>(n - 1)] * (T / total);
    levels.back() = T;
    return validate_mesh(levels);
}

LemmaSuiteReport lemma_suite(uint64_t seed, int mesh_count, int max_N) {
    LemmaSuiteReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick_alpha(0.05, 0.95);
    for (int i = 0; i < mesh_count; ++i) {
        const uint64_t mesh_seed = rng();
        const double alpha = pick_alpha(rng);
        const TimeMesh mesh = random_admissible_mesh(mesh_seed, max_N);
        const FracOrder order(alpha);
        ++rep.meshes;
        bool ok = true;
        std::ostringstream why;

        for (int n = 1; n <= mesh.N; ++n) {
            for (const auto& r : check_kernel_lemma(mesh, order, n)) {
                if (!r.checked) continue;
                rep.worst_lemma_margin = std::min(rep.worst_lemma_margin, r.margin);
                if (!r.pass) {
                    ok = false;
                    why << "lemma " << r.name << " fails at n=" << n << "; ";
                }
            }
        }

        const auto a_rows = l1_rows(mesh, order);
        const auto p_rows = dcc_rows(a_rows);
        for (int n = 1; n <= mesh.N; ++n) {
            const double res = verify_identity(p_rows, a_rows, n);
            rep.worst_identity_residual = std::max(rep.worst_identity_residual, res);
            if (res >= 1e-11) {
                ok = false;
                why << "identity residual " << res << " at n=" << n << "; ";
            }
            // Sum bound: sum_j p^{(n)}_{n-j} <= omega_{1+a}(t_{n-1/2}).
            double s = 0.0;
            for (double v : p_rows[static_cast<size_t>(n - 1)].p) s += v;
            const double ub = omega(1.0 + alpha, mesh.half_point(n));
            const double margin = (ub - s) / std::max(ub, 1.0);
            rep.worst_sum_bound_margin = std::min(rep.worst_sum_bound_margin, margin);
            if (margin < -1e-12) {
                ok = false;
                why << "sum bound fails at n=" << n << "; ";
            }
        }

        const double mp = positive_definiteness_margin(p_rows, a_rows, false);
        const double mz = positive_definiteness_margin(p_rows, a_rows, true);
        rep.worst_pd_margin_p = std::min(rep.worst_pd_margin_p, mp);
        rep.worst_pd_margin_zeta = std::min(rep.worst_pd_margin_zeta, mz);
        if (mp < -1e-10 || mz < -1e-10) {
            ok = false;
            why << "PSD margin (p=" << mp << ", zeta=" << mz << "); ";
        }

        if (!ok) {
            ++rep.failures;
            std::ostringstream note;
            note << "mesh " << i << " (seed " << mesh_seed << ", N=" << mesh.N
                 << ", alpha=" << alpha << "): " << why.str();
            rep.notes.push_back(note.str());
        }
    }
    return rep;
}

}  // namespace fracwave
