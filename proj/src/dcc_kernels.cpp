#include "fracwave/dcc_kernels.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace fracwave {

namespace {
constexpr double kClampTol = 1e-14;
}

DccKernelRow dcc_row(const std::vector<L1KernelRow>& a_rows) {
    const int n = static_cast<int>(a_rows.size());
    if (n < 1) throw std::invalid_argument("dcc_row: need kernel rows 1..n");
    for (int m = 1; m <= n; ++m)
        if (a_rows[static_cast<size_t>(m - 1)].n != m ||
            static_cast<int>(a_rows[static_cast<size_t>(m - 1)].a.size()) != m)
            throw std::invalid_argument("dcc_row: inconsistent kernel rows");

    DccKernelRow row;
    row.n = n;
    row.p.resize(static_cast<size_t>(n));
    const auto a = [&](int j, int lag) -> double {
        return a_rows[static_cast<size_t>(j - 1)].a[static_cast<size_t>(lag)];
    };
    if (a(n, 0) <= 0.0) throw std::runtime_error("dcc_row: nonpositive lead kernel entry");
    row.p[0] = 1.0 / a(n, 0);
    for (int k = n - 1; k >= 1; --k) {
        // Compensated summation: the summands are differences of nearly equal
        // kernel entries scaled by already-computed p values.
        double s = 0.0, comp = 0.0;
        for (int j = k + 1; j <= n; ++j) {
            const double term = (a(j, j - k - 1) - a(j, j - k)) * row.p[static_cast<size_t>(n - j)];
            const double y = term - comp;
            const double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        if (a(k, 0) <= 0.0) throw std::runtime_error("dcc_row: nonpositive lead kernel entry");
        double v = s / a(k, 0);
        if (v < 0.0) {
            if (v < -kClampTol)
                throw std::runtime_error("dcc_row: negative complementary kernel entry beyond "
                                         "tolerance; kernel input is corrupted");
            v = 0.0;
            ++row.clamped;
        }
        row.p[static_cast<size_t>(n - k)] = v;
    }
    return row;
}

std::vector<DccKernelRow> dcc_rows(const std::vector<L1KernelRow>& a_rows) {
    std::vector<DccKernelRow> rows;
    rows.reserve(a_rows.size());
    std::vector<L1KernelRow> prefix;
    prefix.reserve(a_rows.size());
    for (const auto& ar : a_rows) {
        prefix.push_back(ar);
        rows.push_back(dcc_row(prefix));
    }
    return rows;
}

double verify_identity(const std::vector<DccKernelRow>& p_rows,
                       const std::vector<L1KernelRow>& a_rows, int n) {
    if (n < 1 || n > static_cast<int>(p_rows.size()) || n > static_cast<int>(a_rows.size()))
        throw std::invalid_argument("verify_identity: n out of range");
    const auto& p = p_rows[static_cast<size_t>(n - 1)].p;
    double worst = 0.0;
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = k; j <= n; ++j)
            s += p[static_cast<size_t>(n - j)] *
                 a_rows[static_cast<size_t>(j - 1)].a[static_cast<size_t>(j - k)];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

double positive_definiteness_margin(const std::vector<DccKernelRow>& p_rows,
                                    const std::vector<L1KernelRow>& a_rows, bool zeta) {
    const int N = zeta ? static_cast<int>(a_rows.size()) : static_cast<int>(p_rows.size());
    if (N < 1) throw std::invalid_argument("positive_definiteness_margin: empty input");
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
    for (int n = 1; n <= N; ++n) {
        for (int k = 1; k <= n; ++k) {
            double v;
            if (zeta) {
                const auto& an = a_rows[static_cast<size_t>(n - 1)].a;
                v = (k == n) ? an[0]
                             : an[static_cast<size_t>(n - k)] - an[static_cast<size_t>(n - k - 1)];
            } else {
                v = p_rows[static_cast<size_t>(n - 1)].p[static_cast<size_t>(n - k)];
            }
            K(n - 1, k - 1) = v;
        }
    }
    const Eigen::MatrixXd S = 0.5 * (K + K.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace fracwave
