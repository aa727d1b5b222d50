#ifndef FRACWAVE_HARNESS_HPP
#define FRACWAVE_HARNESS_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fracwave/dcc_kernels.hpp"
#include "fracwave/problems.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/time_mesh.hpp"

namespace fracwave {

/// Predicted temporal order on the graded mesh: min(gamma * sigma, 3 - beta).
double expected_order(double beta, double sigma, double gamma);

struct ConvergenceRow {
    int N = 0;
    double e_max = 0.0;
    double e_l2 = 0.0;
    double order_max = std::numeric_limits<double>::quiet_NaN();  ///< log2(e(N/2)/e(N))
    double order_l2 = std::numeric_limits<double>::quiet_NaN();
    double expected = 0.0;
    double wall_ms = 0.0;
};

/** Run the scheme on graded meshes for each N in N_list (ascending, each
 *  double the previous) and report final-time errors in both norms plus
 *  consecutive-pair orders log2(e(N)/e(2N)). With use_bdf2 the integer-level
 *  second-order scheme is used instead. */
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& prob, double gamma,
                                              const std::vector<int>& N_list, int M,
                                              const StepperOptions& opt = {},
                                              bool use_bdf2 = false);

/** Consistency study of the discrete fractional derivative for v = t^sigma:
 *  per-step weighted residual sums against the explicit factor-2 bound. */
struct TruncationReport {
    std::vector<double> measured;  ///< measured[n-1] = sum_j p^{(n)}_{n-j} |R^j|
    std::vector<double> bound;     ///< factor-2 bound 2 sum_j p a0^{(j)} G^j
    double max_measured = 0.0;     ///< max over n
    double worst_ratio = 0.0;      ///< max over n of measured/bound
    bool bound_ok = false;         ///< measured <= bound * (1 + 1e-10) for all n
};

/** R^j is the closed-form fractional derivative of t^sigma at t_{j-1/2}
 *  minus the discrete operator applied to exact half-point samples. The
 *  bound integrand (t - t_{j-3/2}) |v''(t)| is integrated by adaptive
 *  quadrature (absolute tolerance 1e-13) on interior cells and by the exact
 *  antiderivative on the first cell, where the integrand is singular. */
TruncationReport truncation_study(const TimeMesh& mesh, FracOrder order, double sigma);

/// Least-squares slope of log(vals) vs log(xs) (xs, vals positive).
double fit_slope(const std::vector<double>& xs, const std::vector<double>& vals);

/** Fuzz suite over seeded random admissible meshes: the five kernel
 *  inequalities, the complementary-kernel identity, non-negativity, the sum
 *  bound against omega_{1+a}(t_{n-1/2}), and symmetrized PSD margins of both
 *  the P and zeta matrices. */
struct LemmaSuiteReport {
    int meshes = 0;
    int failures = 0;
    double worst_lemma_margin = 1.0;     ///< min relative slack over all properties
    double worst_identity_residual = 0.0;
    double worst_sum_bound_margin = 1.0;
    double worst_pd_margin_p = 1.0;
    double worst_pd_margin_zeta = 1.0;
    std::vector<std::string> notes;      ///< one entry per failing mesh
    bool all_pass() const { return failures == 0; }
};

LemmaSuiteReport lemma_suite(uint64_t seed, int mesh_count, int max_N);

/** Random admissible mesh: non-decreasing positive steps normalized to [0,T],
 *  N drawn in [3, max_N], used by the fuzz suites. Deterministic in seed. */
TimeMesh random_admissible_mesh(uint64_t seed, int max_N, double T = 1.0);

}  // namespace fracwave

#endif
