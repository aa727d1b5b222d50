#ifndef FRACWAVE_L1_KERNELS_HPP
#define FRACWAVE_L1_KERNELS_HPP

#include <span>
#include <string>
#include <vector>

#include "fracwave/time_mesh.hpp"

namespace fracwave {

/** Reduced fractional order alpha = beta - 1 in (0,1), where beta in (1,2)
 *  is the order of the underlying evolution equation. */
struct FracOrder {
    double alpha;
    explicit FracOrder(double a);
    static FracOrder from_beta(double beta);
    double beta() const { return alpha + 1.0; }
};

/** omega_g(t) = t^{g-1} / Gamma(g). Throws std::domain_error for t = 0 with
 *  g <= 1 (singular) or t < 0. omega_1 is identically 1; omega_g(0) = 0 for
 *  g > 1. */
double omega(double g, double t);

/** Stable difference omega_g(x) - omega_g(y) for x >= y >= 0. When the
 *  arguments are nearly equal the naive power difference cancels
 *  catastrophically; this routine switches to an expm1/log1p rewriting. */
double omega_diff(double g, double x, double y);

/** One row of the discrete convolution kernel, indexed by lag:
 *  a[j] = a^{(n)}_j for j = 0..n-1, where
 *
 *    a^{(n)}_{n-k} = (1/tau_{k-1/2}) * [ omega_{2-a}(t_{n-1/2} - t_{k-3/2})
 *                                       - omega_{2-a}(t_{n-1/2} - t_{k-1/2}) ]
 *
 *  is the exact average of omega_{1-a}(t_{n-1/2} - s) over the half cell
 *  [t_{k-3/2}, t_{k-1/2}]. Entries are positive and non-increasing in lag. */
struct L1KernelRow {
    int n = 0;
    std::vector<double> a;
};

/// Closed-form kernel row for step n (1 <= n <= mesh.N). No quadrature.
L1KernelRow l1_row(const TimeMesh& mesh, FracOrder order, int n);

/// All rows 1..N (used by the property checkers and the complementary kernels).
std::vector<L1KernelRow> l1_rows(const TimeMesh& mesh, FracOrder order);

/** Discrete fractional derivative at t_{n-1/2}:
 *  sum_{k=1}^{n} a^{(n)}_{n-k} * diffs[k-1], where diffs[k-1] holds the
 *  backward half-difference of the integrand at level k. Throws on length
 *  mismatch. */
double discrete_caputo(const L1KernelRow& row, std::span<const double> diffs);

/** Result of checking one kernel inequality on a given mesh/row. `checked`
 *  is false when the inequality's hypotheses do not apply (range empty or
 *  step condition violated); `margin` is the worst signed slack (negative
 *  means violated beyond tolerance). */
struct LemmaPropertyResult {
    std::string name;
    bool checked = false;
    bool pass = false;
    double margin = 0.0;
    std::string note;
};

/** Evaluate all five structural kernel inequalities at step n:
 *    (I)   a^{(n)}_k > 0 and non-increasing in k
 *    (II)  a^{(n)}_k <= a^{(n-1)}_{k-1};  a^{(n-1)}_{k-1} a^{(n)}_{k+1} >= a^{(n-1)}_k a^{(n)}_k
 *    (III) a^{(n)}_k < a^{(n-1)}_k
 *    (IV)  a^{(k)}_0 / a^{(k)}_{k-2} < (t_{k-1/2} - t_{1/2})^a / ((1-a) tau_{k-1/2}^a)
 *    (V)   0 < omega_{1-a}(t_{n-1/2}-t_{k-1/2}) - omega_{1-a}(t_{n-1/2}-t_{k-3/2})
 *            <= a^{(n)}_{n-k-1} - a^{(n)}_{n-k}
 *  Non-strict sides are tested with tolerance -1e-13 to allow round-off. */
std::vector<LemmaPropertyResult> check_kernel_lemma(const TimeMesh& mesh, FracOrder order,
                                                    int n);

}  // namespace fracwave

#endif
