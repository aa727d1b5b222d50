#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "fracwave/space_grid.hpp"

using namespace fracwave;

namespace {
const double kTwoPi = 2.0 * M_PI;

Field2D random_field(int M, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Field2D u(M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) u(i, j) = dist(rng);
    return u;
}
}  // namespace

TEST_CASE("grid construction and validation") {
    const Grid2D g(16, kTwoPi);
    CHECK(g.h == doctest::Approx(kTwoPi / 16.0));
    CHECK_THROWS_AS(Grid2D(3, 1.0), std::invalid_argument);   // odd
    CHECK_THROWS_AS(Grid2D(2, 1.0), std::invalid_argument);   // too small
    CHECK_THROWS_AS(Grid2D(8, -1.0), std::invalid_argument);  // bad length
}

TEST_CASE("Laplacian annihilates constants") {
    const Grid2D g(8, kTwoPi);
    const Field2D u(8, 3.5);
    const auto lap = laplacian(g, u);
    CHECK(norm_max(lap) == 0.0);
}

TEST_CASE("discrete eigenfunction relation for sin x sin y") {
    const Grid2D g(32, kTwoPi);
    const auto u = Field2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
    const auto lap = laplacian(g, u);
    // Lap_h u = -lambda_h u with lambda_h = (8/h^2) sin^2(h/2) for mode (1,1).
    const double lam = 8.0 / (g.h * g.h) * std::pow(std::sin(0.5 * g.h), 2);
    double worst = 0.0;
    for (int i = 0; i < g.M; ++i)
        for (int j = 0; j < g.M; ++j) worst = std::max(worst, std::abs(lap(i, j) + lam * u(i, j)));
    CHECK(worst < 1e-12);
}

TEST_CASE("inner product and norms") {
    const Grid2D g(64, kTwoPi);
    const Field2D one(64, 1.0);
    CHECK(inner(g, one, one) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-14));
    const auto s = Field2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
    CHECK(inner(g, s, s) == doctest::Approx(M_PI * M_PI).epsilon(1e-13));
    CHECK(norm_l2(g, s) == doctest::Approx(M_PI).epsilon(1e-13));
    CHECK(norm_max(s) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Laplacian is self-adjoint and negative semidefinite") {
    const Grid2D g(16, kTwoPi);
    const auto u = random_field(16, 1);
    const auto v = random_field(16, 2);
    const auto Lu = laplacian(g, u);
    const auto Lv = laplacian(g, v);
    CHECK(std::abs(inner(g, Lu, v) - inner(g, u, Lv)) < 1e-12 * norm_l2(g, u) * norm_l2(g, v));
    CHECK(inner(g, Lu, u) <= 1e-12);
}

TEST_CASE("Helmholtz solve: zero right-hand side") {
    const Grid2D g(16, kTwoPi);
    HelmholtzSolver solver(g);
    const auto u = solver.solve(2.0, Field2D(16, 0.0));
    CHECK(norm_max(u) == 0.0);
}

TEST_CASE("Helmholtz solve: eigenmode closed form") {
    const Grid2D g(32, kTwoPi);
    HelmholtzSolver solver(g);
    const auto rhs =
        Field2D::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
    const double c = 3.0, s = 0.5;
    const double lam = 8.0 / (g.h * g.h) * std::pow(std::sin(0.5 * g.h), 2);
    const auto u = solver.solve(c, rhs, s);
    double worst = 0.0;
    for (int i = 0; i < g.M; ++i)
        for (int j = 0; j < g.M; ++j)
            worst = std::max(worst, std::abs(u(i, j) - rhs(i, j) / (c + s * lam)));
    CHECK(worst < 1e-14);
}

TEST_CASE("Helmholtz solve: residual round trip on random data") {
    const Grid2D g(24, kTwoPi);
    HelmholtzSolver solver(g);
    const auto rhs = random_field(24, 7);
    const double c = 1.7, s = 0.5;
    const auto u = solver.solve(c, rhs, s);
    const auto lap = laplacian(g, u);
    double worst = 0.0;
    for (int i = 0; i < g.M; ++i)
        for (int j = 0; j < g.M; ++j)
            worst = std::max(worst, std::abs(c * u(i, j) - s * lap(i, j) - rhs(i, j)));
    CHECK(worst < 1e-12);
}

TEST_CASE("Helmholtz solve: constant mode divides by c; c <= 0 rejected") {
    const Grid2D g(8, kTwoPi);
    HelmholtzSolver solver(g);
    const auto u = solver.solve(4.0, Field2D(8, 2.0));
    CHECK(norm_max(u) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(solver.solve(0.0, Field2D(8, 1.0)), std::invalid_argument);
}

TEST_CASE("binary field IO round trip") {
    const Grid2D g(12, kTwoPi);
    const auto u = random_field(12, 9);
    const std::string path = "field_io_test.f2d";
    write_field(path, u);
    const auto v = read_field(path);
    REQUIRE(v.size() == 12);
    double worst = 0.0;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) worst = std::max(worst, std::abs(u(i, j) - v(i, j)));
    CHECK(worst == 0.0);
    std::remove(path.c_str());

    // Corrupt magic must be rejected.
    {
        FILE* f = std::fopen(path.c_str(), "wb");
        std::fputs("XXXXGARBAGEHEADER", f);
        std::fclose(f);
    }
    CHECK_THROWS(read_field(path));
    std::remove(path.c_str());
}
