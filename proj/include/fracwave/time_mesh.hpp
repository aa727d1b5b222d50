#ifndef FRACWAVE_TIME_MESH_HPP
#define FRACWAVE_TIME_MESH_HPP

#include <string>
#include <vector>

namespace fracwave {

/** Nonuniform time mesh 0 = t_0 < t_1 < ... < t_N = T together with all
 *  half-index quantities used by the half-point collocated scheme:
 *
 *    tau_n      = t_n - t_{n-1}                       (steps)
 *    tau_{1/2}  = tau_1 / 2,
 *    tau_{n-1/2}= (tau_n + tau_{n-1}) / 2,  n >= 2    (half-steps)
 *    t_{n-1/2}  = t_{n-1} + tau_n / 2,      n >= 1    (half-points)
 *    t_{-1/2}   = t_0                                 (convention)
 *
 *  Construction enforces the step condition tau_{n-1} <= tau_n, which the
 *  kernel inequalities rely on. Immutable after construction. */
struct TimeMesh {
    int N = 0;             ///< number of steps
    double T = 0.0;        ///< final time
    std::vector<double> t;         ///< t[k] = t_k, size N+1
    std::vector<double> tau;       ///< tau[n-1] = tau_n, size N
    std::vector<double> tau_half;  ///< tau_half[n-1] = tau_{n-1/2}, size N
    std::vector<double> t_half;    ///< t_half[0] = t_{-1/2} = t_0; t_half[n] = t_{n-1/2}, size N+1

    /// Step size tau_n, 1 <= n <= N.
    double step(int n) const { return tau[static_cast<size_t>(n) - 1]; }
    /// Half-step tau_{n-1/2}, 1 <= n <= N.
    double half_step(int n) const { return tau_half[static_cast<size_t>(n) - 1]; }
    /// Half-point t_{n-1/2}; half_point(0) returns the convention t_{-1/2} = t_0.
    double half_point(int n) const { return t_half[static_cast<size_t>(n)]; }
};

/** Graded mesh t_k = T * (k/N)^gamma. gamma = 1 gives the uniform mesh;
 *  gamma > 1 clusters points near t = 0 to resolve an initial weak
 *  singularity. Throws std::invalid_argument for N < 1, T <= 0 or
 *  gamma < 1 (shrinking steps would violate the step condition). */
TimeMesh graded_mesh(int N, double T, double gamma);

/** Build a mesh from explicit levels (t_0 = 0, strictly increasing).
 *  Throws std::invalid_argument naming the offending index when the step
 *  condition tau_{n-1} <= tau_n fails or the first step is below the
 *  minimum-step guard (1e3 * eps * T). */
TimeMesh validate_mesh(const std::vector<double>& levels);

/** Read levels from a text file (one value per line) or a JSON array file
 *  and validate them. */
TimeMesh load_mesh_file(const std::string& path);

}  // namespace fracwave

#endif
