#ifndef FRACWAVE_SPACE_GRID_HPP
#define FRACWAVE_SPACE_GRID_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fracwave {

/** Uniform periodic M x M grid on [0,L)^2 with mesh width h = L/M.
 *  Nodes are x_i = i*h, y_j = j*h for 0 <= i,j < M; periodicity is by index
 *  arithmetic (no ghost layer). */
struct Grid2D {
    int M = 0;
    double L = 0.0;
    double h = 0.0;
    Grid2D() = default;
    Grid2D(int M_, double L_);
};

/** Real-valued periodic grid function stored row-major (i = x index slow,
 *  j = y index fast). */
class Field2D {
  public:
    Field2D() = default;
    explicit Field2D(int M, double fill = 0.0)
        : M_(M), v_(static_cast<size_t>(M) * static_cast<size_t>(M), fill) {}

    int size() const { return M_; }
    double& operator()(int i, int j) { return v_[idx(i, j)]; }
    double operator()(int i, int j) const { return v_[idx(i, j)]; }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    size_t count() const { return v_.size(); }

    /// Sample a callable (x, y) -> value at the grid nodes.
    static Field2D sample(const Grid2D& g, const std::function<double(double, double)>& fn);

  private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(M_) + static_cast<size_t>(j);
    }
    int M_ = 0;
    std::vector<double> v_;
};

/// Five-point periodic Laplacian: (u_E + u_W + u_N + u_S - 4u)/h^2.
Field2D laplacian(const Grid2D& g, const Field2D& u);

/** h^2-weighted inner product (u,v) = h^2 * sum u_ij v_ij, evaluated by a
 *  fixed-order pairwise reduction so the result is reproducible regardless
 *  of threading. */
double inner(const Grid2D& g, const Field2D& u, const Field2D& v);
double norm_l2(const Grid2D& g, const Field2D& u);
double norm_max(const Field2D& u);

/** Spectral solver for the per-step implicit system (c*I - s*Lap_h) u = rhs
 *  with c > 0, diagonalized by the 2D real DFT: on mode (p,q) the operator
 *  acts as c + s*(4/h^2)(sin^2(pi p/M) + sin^2(pi q/M)). Construction caches
 *  the transform plans; solves are exact per mode up to round-off. */
class HelmholtzSolver {
  public:
    explicit HelmholtzSolver(const Grid2D& g);
    ~HelmholtzSolver();
    HelmholtzSolver(const HelmholtzSolver&) = delete;
    HelmholtzSolver& operator=(const HelmholtzSolver&) = delete;

    /// Solve (c*I - s*Lap_h) u = rhs. Default s = 1/2 (half-averaged step).
    Field2D solve(double c, const Field2D& rhs, double s = 0.5) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper: solve (c*I - (1/2)Lap_h) u = rhs.
Field2D helmholtz_solve(const Grid2D& g, double c, const Field2D& rhs);

/** Binary field I/O. Format: 16-byte header (magic "F2D1", u32 M,
 *  u32 reserved = 0, 4 padding bytes), then M*M little-endian float64
 *  values row-major. */
void write_field(const std::string& path, const Field2D& u);
Field2D read_field(const std::string& path);

/// CSV dump (i, j, value) for small grids / plotting.
void write_field_csv(const std::string& path, const Grid2D& g, const Field2D& u);

}  // namespace fracwave

#endif
