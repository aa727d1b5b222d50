#ifndef FRACWAVE_DCC_KERNELS_HPP
#define FRACWAVE_DCC_KERNELS_HPP

#include <vector>

#include "fracwave/l1_kernels.hpp"

namespace fracwave {

/** One row of the discrete complementary convolution kernel, indexed by lag:
 *  p[j] = p^{(n)}_j for j = 0..n-1, defined by the backward recursion
 *
 *    p^{(n)}_0     = 1 / a^{(n)}_0
 *    p^{(n)}_{n-k} = (1/a^{(k)}_0) * sum_{j=k+1}^{n} (a^{(j)}_{j-k-1} - a^{(j)}_{j-k}) p^{(n)}_{n-j}
 *
 *  so that the convolution identity sum_{j=k}^{n} p^{(n)}_{n-j} a^{(j)}_{j-k} = 1
 *  holds for every k. Entries are non-negative in exact arithmetic; values in
 *  [-1e-14, 0) are clamped to zero and counted in `clamped`. */
struct DccKernelRow {
    int n = 0;
    std::vector<double> p;
    int clamped = 0;
};

/** Complementary kernel row for step n = a_rows.size(). Requires the kernel
 *  rows 1..n. Throws std::runtime_error if an entry is more negative than
 *  -1e-14 (indicates corrupted kernel input). */
DccKernelRow dcc_row(const std::vector<L1KernelRow>& a_rows);

/// All complementary rows 1..N (each computed against the same a-rows).
std::vector<DccKernelRow> dcc_rows(const std::vector<L1KernelRow>& a_rows);

/** Max residual of the convolution identity at step n:
 *  max_{1<=k<=n} | sum_{j=k}^{n} p^{(n)}_{n-j} a^{(j)}_{j-k} - 1 |. */
double verify_identity(const std::vector<DccKernelRow>& p_rows,
                       const std::vector<L1KernelRow>& a_rows, int n);

/** Smallest eigenvalue of the symmetrized triangular kernel matrix.
 *  With `zeta` false the matrix is P[n][k] = p^{(n)}_{n-k} (1 <= k <= n);
 *  with `zeta` true it is Z[n][k] = zeta^{(n)}_{n-k} where
 *  zeta^{(k)}_0 = a^{(k)}_0 and zeta^{(k)}_{k-j} = a^{(k)}_{k-j} - a^{(k)}_{k-j-1}.
 *  A kernel is positive definite as a quadratic form over real sequences
 *  exactly when the symmetric part (K + K^T)/2 is PSD. */
double positive_definiteness_margin(const std::vector<DccKernelRow>& p_rows,
                                    const std::vector<L1KernelRow>& a_rows, bool zeta = false);

}  // namespace fracwave

#endif
