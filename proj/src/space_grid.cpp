#include "fracwave/space_grid.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <fftw3.h>

namespace fracwave {

Grid2D::Grid2D(int M_, double L_) : M(M_), L(L_), h(L_ / M_) {
    if (M_ < 4 || M_ % 2 != 0)
        throw std::invalid_argument("Grid2D: M must be even and >= 4");
    if (!(L_ > 0.0)) throw std::invalid_argument("Grid2D: L must be positive");
}

Field2D Field2D::sample(const Grid2D& g, const std::function<double(double, double)>& fn) {
    Field2D out(g.M);
    for (int i = 0; i < g.M; ++i)
        for (int j = 0; j < g.M; ++j) out(i, j) = fn(i * g.h, j * g.h);
    return out;
}

Field2D laplacian(const Grid2D& g, const Field2D& u) {
    if (u.size() != g.M) throw std::invalid_argument("laplacian: dimension mismatch");
    const int M = g.M;
    const double ih2 = 1.0 / (g.h * g.h);
    Field2D out(M);
    for (int i = 0; i < M; ++i) {
        const int ip = (i + 1) % M, im = (i + M - 1) % M;
        for (int j = 0; j < M; ++j) {
            const int jp = (j + 1) % M, jm = (j + M - 1) % M;
            out(i, j) = (u(ip, j) + u(im, j) + u(i, jp) + u(i, jm) - 4.0 * u(i, j)) * ih2;
        }
    }
    return out;
}

namespace {

/// Pairwise (cascade) sum of products u[k]*v[k] over [lo, hi).
double pairwise_dot(const double* u, const double* v, size_t lo, size_t hi) {
    const size_t n = hi - lo;
    if (n <= 64) {
        double s = 0.0;
        for (size_t k = lo; k < hi; ++k) s += u[k] * v[k];
        return s;
    }
    const size_t mid = lo + n / 2;
    return pairwise_dot(u, v, lo, mid) + pairwise_dot(u, v, mid, hi);
}

}  // namespace

double inner(const Grid2D& g, const Field2D& u, const Field2D& v) {
    if (u.size() != g.M || v.size() != g.M)
        throw std::invalid_argument("inner: dimension mismatch");
    return g.h * g.h * pairwise_dot(u.data(), v.data(), 0, u.count());
}

double norm_l2(const Grid2D& g, const Field2D& u) { return std::sqrt(inner(g, u, u)); }

double norm_max(const Field2D& u) {
    double m = 0.0;
    const double* p = u.data();
    for (size_t k = 0; k < u.count(); ++k) m = std::max(m, std::abs(p[k]));
    return m;
}

struct HelmholtzSolver::Impl {
    Grid2D grid;
    std::vector<double> real_buf;
    std::vector<std::complex<double>> spec_buf;
    std::vector<double> lam1d;  // (4/h^2) sin^2(pi p / M), one per mode index
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(const Grid2D& g) : grid(g) {
        const int M = g.M;
        real_buf.resize(static_cast<size_t>(M) * M);
        spec_buf.resize(static_cast<size_t>(M) * (M / 2 + 1));
        lam1d.resize(static_cast<size_t>(M));
        for (int p = 0; p < M; ++p) {
            const double s = std::sin(M_PI * p / M);
            lam1d[static_cast<size_t>(p)] = 4.0 / (g.h * g.h) * s * s;
        }
        fwd = fftw_plan_dft_r2c_2d(M, M, real_buf.data(),
                                   reinterpret_cast<fftw_complex*>(spec_buf.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d(M, M, reinterpret_cast<fftw_complex*>(spec_buf.data()),
                                   real_buf.data(), FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("HelmholtzSolver: FFTW plan creation failed");
    }
    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

HelmholtzSolver::HelmholtzSolver(const Grid2D& g) : impl_(std::make_unique<Impl>(g)) {}
HelmholtzSolver::~HelmholtzSolver() = default;

Field2D HelmholtzSolver::solve(double c, const Field2D& rhs, double s) const {
    if (!(c > 0.0)) throw std::invalid_argument("helmholtz_solve: c must be positive");
    const int M = impl_->grid.M;
    if (rhs.size() != M) throw std::invalid_argument("helmholtz_solve: dimension mismatch");

    std::memcpy(impl_->real_buf.data(), rhs.data(), rhs.count() * sizeof(double));
    fftw_execute(impl_->fwd);

    const double scale = 1.0 / (static_cast<double>(M) * M);  // FFTW is unnormalized
    const int K = M / 2 + 1;
    for (int p = 0; p < M; ++p) {
        for (int q = 0; q < K; ++q) {
            const double denom =
                c + s * (impl_->lam1d[static_cast<size_t>(p)] + impl_->lam1d[static_cast<size_t>(q)]);
            impl_->spec_buf[static_cast<size_t>(p) * K + q] *= scale / denom;
        }
    }
    fftw_execute(impl_->bwd);

    Field2D out(M);
    std::memcpy(out.data(), impl_->real_buf.data(), out.count() * sizeof(double));
    return out;
}

Field2D helmholtz_solve(const Grid2D& g, double c, const Field2D& rhs) {
    HelmholtzSolver solver(g);
    return solver.solve(c, rhs, 0.5);
}

void write_field(const std::string& path, const Field2D& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field: cannot open " + path);
    char header[16] = {0};
    std::memcpy(header, "F2D1", 4);
    const uint32_t M = static_cast<uint32_t>(u.size());
    const uint32_t reserved = 0;
    std::memcpy(header + 4, &M, 4);
    std::memcpy(header + 8, &reserved, 4);
    out.write(header, sizeof(header));
    out.write(reinterpret_cast<const char*>(u.data()),
              static_cast<std::streamsize>(u.count() * sizeof(double)));
    if (!out) throw std::runtime_error("write_field: write failed for " + path);
}

Field2D read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    char header[16];
    in.read(header, sizeof(header));
    if (!in || std::memcmp(header, "F2D1", 4) != 0)
        throw std::runtime_error("read_field: bad magic in " + path);
    uint32_t M;
    std::memcpy(&M, header + 4, 4);
    Field2D u(static_cast<int>(M));
    in.read(reinterpret_cast<char*>(u.data()),
            static_cast<std::streamsize>(u.count() * sizeof(double)));
    if (!in) throw std::runtime_error("read_field: truncated data in " + path);
    return u;
}

void write_field_csv(const std::string& path, const Grid2D& g, const Field2D& u) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
    out << "x,y,value\n";
    for (int i = 0; i < g.M; ++i)
        for (int j = 0; j < g.M; ++j)
            out << i * g.h << ',' << j * g.h << ',' << u(i, j) << '\n';
}

}  // namespace fracwave
