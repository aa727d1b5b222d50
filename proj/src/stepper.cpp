#include "fracwave/stepper.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

// Small in-place field helpers; loops kept simple so the compiler vectorizes.

void axpy(Field2D& y, double a, const Field2D& x) {
    double* yp = y.data();
    const double* xp = x.data();
    for (size_t k = 0; k < y.count(); ++k) yp[k] += a * xp[k];
}

/// y += a * (x1 - x2), the history update for one lag.
void axpy_diff(Field2D& y, double a, const Field2D& x1, const Field2D& x2) {
    double* yp = y.data();
    const double* p1 = x1.data();
    const double* p2 = x2.data();
    for (size_t k = 0; k < y.count(); ++k) yp[k] += a * (p1[k] - p2[k]);
}

void scale(Field2D& y, double a) {
    double* yp = y.data();
    for (size_t k = 0; k < y.count(); ++k) yp[k] *= a;
}

Field2D half_cube(const Field2D& un, const Field2D& uprev) {
    Field2D out(un.size());
    double* op = out.data();
    const double* a = un.data();
    const double* b = uprev.data();
    for (size_t k = 0; k < out.count(); ++k) {
        const double m = 0.5 * (a[k] + b[k]);
        op[k] = m * m * m;
    }
    return out;
}

double rel_diff_norm(const Grid2D& g, const Field2D& a, const Field2D& b) {
    Field2D d = a;
    axpy(d, -1.0, b);
    const double nb = norm_l2(g, a);
    const double nd = norm_l2(g, d);
    return nb > 0.0 ? nd / nb : nd;
}

}  // namespace

SchemeState::SchemeState(const Grid2D& grid, const TimeMesh& mesh, FracOrder order,
                         Field2D u0, Field2D v0, StepperOptions opt)
    : grid_(grid),
      mesh_(mesh),
      order_(order),
      opt_(opt),
      solver_(grid),
      u_(std::move(u0)),
      v0_(std::move(v0)) {
    if (u_.size() != grid.M || v0_.size() != grid.M)
        throw std::invalid_argument("SchemeState: field dimensions do not match grid");
    w_.reserve(static_cast<size_t>(mesh.N));
}

void SchemeState::restore(Field2D u_prev, std::vector<Field2D> w, int next_n) {
    if (next_n < 1 || next_n > mesh_.N + 1 || static_cast<int>(w.size()) != next_n - 1)
        throw std::invalid_argument("restore: history length must equal next_n - 1");
    u_ = std::move(u_prev);
    w_ = std::move(w);
    n_ = next_n;
}

Field2D SchemeState::assemble_history(const L1KernelRow& row) const {
    if (row.n != n_) throw std::invalid_argument("assemble_history: kernel row/step mismatch");
    const double theta = opt_.first_step == FirstStepMode::half_weight ? 0.5 : 1.0;
    const int n = n_;
    Field2D H(grid_.M);
    if (n == 1) {
        axpy(H, -theta * row.a[0], v0_);
        return H;
    }
    // First lag: nabla v^{1/2} = theta * (w_1 - v0).
    axpy_diff(H, theta * row.a[static_cast<size_t>(n - 1)], w_[0], v0_);
    for (int k = 2; k <= n - 1; ++k)
        axpy_diff(H, row.a[static_cast<size_t>(n - k)], w_[static_cast<size_t>(k - 1)],
                  w_[static_cast<size_t>(k - 2)]);
    // The current difference nabla v^{n-1/2} = w_n - w_{n-1} contributes the
    // known part -a0 * w_{n-1}; the unknown a0 * w_n lives on the left side.
    axpy(H, -row.a[0], w_[static_cast<size_t>(n - 2)]);
    return H;
}

StepSolveStats SchemeState::step_common(const Field2D& f_half, double eps, bool cubic) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = n_;
    if (n > mesh_.N) throw std::runtime_error("step: mesh exhausted");
    const L1KernelRow row = l1_row(mesh_, order_, n);
    const double theta = opt_.first_step == FirstStepMode::half_weight ? 0.5 : 1.0;
    // At n = 1 the unknown difference is nabla v^{1/2} = theta*(w_1 - v0), so
    // the lead coefficient carries theta as well.
    const double lead = (n == 1 ? theta : 1.0) * row.a[0] / mesh_.step(n);
    const double s = 0.5 * eps * eps;  // Laplacian weight of the half average

    Field2D H = assemble_history(row);
    Field2D rhs = laplacian(grid_, u_);
    scale(rhs, s);
    axpy(rhs, lead, u_);
    axpy(rhs, 1.0, f_half);
    axpy(rhs, -1.0, H);

    StepSolveStats stats;
    Field2D un(grid_.M);
    if (!cubic) {
        un = solver_.solve(lead, rhs, s);
    } else if (opt_.lag_nonlinearity) {
        Field2D r = rhs;
        Field2D cube = half_cube(u_, u_);
        axpy(r, -1.0, cube);
        un = solver_.solve(lead, r, s);
        stats.picard_iterations = 1;
    } else {
        un = u_;
        bool converged = false;
        for (int it = 1; it <= opt_.picard_max; ++it) {
            Field2D r = rhs;
            Field2D cube = half_cube(un, u_);
            axpy(r, -1.0, cube);
            Field2D next = solver_.solve(lead, r, s);
            const double rel = rel_diff_norm(grid_, next, un);
            un = std::move(next);
            stats.picard_iterations = it;
            if (rel <= opt_.picard_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw std::runtime_error("step_semilinear: fixed-point iteration did not converge");
    }

    // Relative residual of the linear system actually solved (with the cubic
    // term frozen at the accepted iterate for semilinear steps).
    {
        Field2D r = laplacian(grid_, un);
        scale(r, -s);
        axpy(r, lead, un);
        axpy(r, -1.0, rhs);
        if (cubic) {
            Field2D cube = half_cube(un, u_);
            axpy(r, 1.0, cube);
        }
        const double nr = norm_l2(grid_, rhs);
        stats.residual = norm_l2(grid_, r) / (nr > 0.0 ? nr : 1.0);
    }

    Field2D w = un;
    axpy(w, -1.0, u_);
    scale(w, 1.0 / mesh_.step(n));
    w_.push_back(std::move(w));
    u_ = std::move(un);
    ++n_;

    stats.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return stats;
}

StepSolveStats SchemeState::step_linear(const Field2D& f_half) {
    return step_common(f_half, 1.0, false);
}

StepSolveStats SchemeState::step_semilinear(const Field2D& f_half, double eps) {
    return step_common(f_half, eps, true);
}

SolutionReport run(const ProblemSpec& prob, const TimeMesh& mesh, const Grid2D& grid,
                   const StepperOptions& opt) {
    const FracOrder order = FracOrder::from_beta(prob.beta);
    Field2D u0 = Field2D::sample(grid, prob.phi1);
    Field2D v0 = Field2D::sample(grid, prob.phi2);
    SchemeState state(grid, mesh, order, std::move(u0), std::move(v0), opt);

    SolutionReport report;
    report.stats.reserve(static_cast<size_t>(mesh.N));
    for (int n = 1; n <= mesh.N; ++n) {
        const double th = mesh.half_point(n);
        Field2D f_half =
            Field2D::sample(grid, [&](double x, double y) { return prob.f(x, y, th); });
        StepSolveStats st = prob.cubic_nonlinearity ? state.step_semilinear(f_half, prob.eps)
                                                    : state.step_linear(f_half);
        report.stats.push_back(
            {n, mesh.t[static_cast<size_t>(n)], mesh.step(n), st.picard_iterations, st.residual,
             st.wall_ms});
    }
    report.u_final = state.u();

    if (prob.exact_u) {
        const double T = mesh.T;
        Field2D exact =
            Field2D::sample(grid, [&](double x, double y) { return prob.exact_u(x, y, T); });
        Field2D err = report.u_final;
        axpy(err, -1.0, exact);
        report.e_max = norm_max(err);
        report.e_l2 = norm_l2(grid, err);
    }
    return report;
}

}  // namespace fracwave
