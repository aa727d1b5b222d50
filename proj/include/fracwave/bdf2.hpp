#ifndef FRACWAVE_BDF2_HPP
#define FRACWAVE_BDF2_HPP

#include <vector>

#include "fracwave/l1_kernels.hpp"
#include "fracwave/problems.hpp"
#include "fracwave/space_grid.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/time_mesh.hpp"

namespace fracwave {

/** Coefficients of the variable-step second-order (BDF2-type) fractional
 *  derivative at integer levels, indexed by lag. Built from the integer-grid
 *  kernels
 *
 *    abar^{(n)}_{n-k}  = (1/tau_k) int_{t_{k-1}}^{t_k} omega_{1-a}(t_n - s) ds
 *    varpi^{(n)}_{n-k} = (1/tau_k) int_{t_{k-1}}^{t_k}
 *                          ((2s - t_k - t_{k-1})/tau_k) omega_{1-a}(t_n - s) ds
 *
 *  combined with the step ratios r_n = tau_n / tau_{n-1}:
 *
 *    B^{(1)}_0   = abar^{(1)}_0
 *    B^{(n)}_0   = abar_0 + (r_n^2 varpi_0 + varpi_1) / (r_n (1 + r_n))
 *    B^{(n)}_1   = abar_1 - (r_n^2 varpi_0 + varpi_1) / (1 + r_n)
 *                        + varpi_2 / (r_{n-1} (1 + r_{n-1}))            (n >= 3)
 *    B^{(n)}_{n-k} = abar_{n-k} - varpi_{n-k} / (1 + r_{k+1})
 *                        + varpi_{n-k+1} / (r_k (1 + r_k))   (2 <= k <= n-1)
 *    B^{(n)}_{n-1} = abar_{n-1} - varpi_{n-1} / (1 + r_2)               (n >= 2)
 *
 *  All integrals are evaluated in closed form via omega antiderivatives. */
struct Bdf2KernelRow {
    int n = 0;
    std::vector<double> abar;   ///< abar[j] = abar^{(n)}_j
    std::vector<double> varpi;  ///< varpi[j] = varpi^{(n)}_j
    std::vector<double> B;      ///< assembled coefficients B^{(n)}_j
};

/** Closed-form coefficient row for step n (1 <= n <= mesh.N). With
 *  include_correction = false the varpi terms are dropped and B collapses to
 *  the first-order abar row (testing switch). */
Bdf2KernelRow bdf2_row(const TimeMesh& mesh, FracOrder order, int n,
                       bool include_correction = true);

/** March the integer-level second-order scheme
 *
 *    sum_{k=1}^n B^{(n)}_{n-k} (v^k - v^{k-1}) = Lap_h u^n + f^n,
 *    v^n = (1+2r_n)/(tau_n (1+r_n)) nabla u^n - r_n^2/(tau_n (1+r_n)) nabla u^{n-1}
 *
 *  (first step uses r_1 = 0, i.e. v^1 = nabla u^1 / tau_1). Linear problems
 *  only; experimental (no convergence theory), exposed for empirical order
 *  comparison against the half-point scheme. */
SolutionReport bdf2_run(const ProblemSpec& prob, const TimeMesh& mesh, const Grid2D& grid);

}  // namespace fracwave

#endif
