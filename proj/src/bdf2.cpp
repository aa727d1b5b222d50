#include "fracwave/bdf2.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

void axpy(Field2D& y, double a, const Field2D& x) {
    double* yp = y.data();
    const double* xp = x.data();
    for (size_t k = 0; k < y.count(); ++k) yp[k] += a * xp[k];
}

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

}  // namespace

Bdf2KernelRow bdf2_row(const TimeMesh& mesh, FracOrder order, int n,
                       bool include_correction) {
    if (n < 1 || n > mesh.N) throw std::invalid_argument("bdf2_row: step index out of range");
    const double a = order.alpha;
    const double tn = mesh.t[static_cast<size_t>(n)];

    Bdf2KernelRow row;
    row.n = n;
    row.abar.resize(static_cast<size_t>(n));
    row.varpi.resize(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double tk = mesh.t[static_cast<size_t>(k)];
        const double tkm = mesh.t[static_cast<size_t>(k - 1)];
        const double tau_k = tk - tkm;
        const double r0 = tn - tkm;  // larger argument
        const double r1 = tn - tk;
        // Average of omega_{1-a}: exact antiderivative is omega_{2-a}.
        row.abar[static_cast<size_t>(n - k)] = omega_diff(2.0 - a, r0, r1) / tau_k;
        // Correction weight: with c the cell midpoint and r = t_n - s,
        //   int (2s - t_k - t_{k-1}) omega_{1-a}(t_n - s) ds
        //     = 2 [ (t_n - c)(omega_{2-a}(r0) - omega_{2-a}(r1))
        //           - (1-a)(omega_{3-a}(r0) - omega_{3-a}(r1)) ].
        const double c = 0.5 * (tk + tkm);
        const double val = (tn - c) * omega_diff(2.0 - a, r0, r1) -
                           (1.0 - a) * omega_diff(3.0 - a, r0, r1);
        row.varpi[static_cast<size_t>(n - k)] = 2.0 / (tau_k * tau_k) * val;
    }

    row.B = row.abar;
    if (n == 1 || !include_correction) return row;

    // Step ratios r_k = tau_k / tau_{k-1}, defined for k >= 2.
    const auto r = [&](int k) { return mesh.step(k) / mesh.step(k - 1); };
    const double rn = r(n);
    const auto& w = row.varpi;
    row.B[0] = row.abar[0] + (rn * rn * w[0] + w[1]) / (rn * (1.0 + rn));
    if (n == 2) {
        // Both cells touch the three levels t_0, t_1, t_2: the backward
        // correction of cell 2 and the own-cell correction of cell 1 combine,
        // which is exactly what linear exactness requires at this step.
        row.B[1] = row.abar[1] - (rn * rn * w[0] + w[1]) / (1.0 + rn);
        return row;
    }
    row.B[static_cast<size_t>(n - 1)] = row.abar[static_cast<size_t>(n - 1)] - w[static_cast<size_t>(n - 1)] / (1.0 + r(2));
    if (n >= 3) {
        row.B[1] = row.abar[1] - (rn * rn * w[0] + w[1]) / (1.0 + rn) +
                   w[2] / (r(n - 1) * (1.0 + r(n - 1)));
        for (int k = 2; k <= n - 2; ++k) {
            const int j = n - k;  // lag, 2 <= j <= n-2
            row.B[static_cast<size_t>(j)] = row.abar[static_cast<size_t>(j)] -
                                            w[static_cast<size_t>(j)] / (1.0 + r(k + 1)) +
                                            w[static_cast<size_t>(j + 1)] / (r(k) * (1.0 + r(k)));
        }
    }
    return row;
}

SolutionReport bdf2_run(const ProblemSpec& prob, const TimeMesh& mesh, const Grid2D& grid) {
    if (prob.cubic_nonlinearity)
        throw std::invalid_argument("bdf2_run: only linear problems are supported");
    const FracOrder order = FracOrder::from_beta(prob.beta);
    HelmholtzSolver solver(grid);

    Field2D u_prev = Field2D::sample(grid, prob.phi1);
    Field2D du_prev(grid.M);  // nabla u^{n-1}, zero before the first step
    std::vector<Field2D> v;   // integer-level velocities v^0..v^{n-1}
    v.reserve(static_cast<size_t>(mesh.N) + 1);
    v.push_back(Field2D::sample(grid, prob.phi2));

    SolutionReport report;
    report.stats.reserve(static_cast<size_t>(mesh.N));
    for (int n = 1; n <= mesh.N; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const Bdf2KernelRow row = bdf2_row(mesh, order, n);
        const double tau_n = mesh.step(n);
        const double rn = n >= 2 ? tau_n / mesh.step(n - 1) : 0.0;
        const double A = (1.0 + 2.0 * rn) / (tau_n * (1.0 + rn));
        const double C = rn * rn / (tau_n * (1.0 + rn));
        const double tn = mesh.t[static_cast<size_t>(n)];

        // B0 (v^n - v^{n-1}) + sum_{k<n} B_{n-k} (v^k - v^{k-1}) = Lap u^n + f^n
        // with v^n = A nabla u^n - C nabla u^{n-1} gives the Helmholtz system
        // (B0 A I - Lap) u^n = f^n + B0 (A u^{n-1} + C nabla u^{n-1} + v^{n-1}) - hist.
        Field2D rhs = Field2D::sample(grid, [&](double x, double y) { return prob.f(x, y, tn); });
        axpy(rhs, row.B[0] * A, u_prev);
        axpy(rhs, row.B[0] * C, du_prev);
        axpy(rhs, row.B[0], v.back());
        for (int k = 1; k <= n - 1; ++k)
            axpy_diff(rhs, -row.B[static_cast<size_t>(n - k)], v[static_cast<size_t>(k)],
                      v[static_cast<size_t>(k - 1)]);

        Field2D un = solver.solve(row.B[0] * A, rhs, 1.0);  // full Laplacian, no half average

        Field2D du = un;
        axpy(du, -1.0, u_prev);
        Field2D vn = du;
        scale(vn, A);
        axpy(vn, -C, du_prev);
        v.push_back(std::move(vn));
        du_prev = std::move(du);
        u_prev = std::move(un);

        report.stats.push_back({n, tn, tau_n, 0, 0.0,
                                std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count()});
    }
    report.u_final = u_prev;

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
