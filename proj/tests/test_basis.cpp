#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "sllg/basis.hpp"

using namespace sllg;

namespace {
constexpr double kPi = std::numbers::pi;

VectorField random_field(const Basis& b, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    VectorField f(b.node_count());
    for (Vec3& p : f.v) p = {u(gen), u(gen), u(gen)};
    return f;
}
}  // namespace

TEST_CASE("build_basis constant mode", "[basis]") {
    const Basis b = build_basis(1, 8);
    CHECK(b.eigenvalues[0] == 0.0);
    for (double v : b.eigenfunctions[0]) CHECK(v == 1.0);
    for (double v : b.derivative_table[0]) CHECK(v == 0.0);
}

TEST_CASE("build_basis eigenvalues and derivatives", "[basis]") {
    const Basis b = build_basis(3, 64);
    CHECK(b.eigenvalues[2] == Catch::Approx(4.0 * kPi * kPi).epsilon(1e-14));

    // e_1' = -sqrt(2) pi sin(pi x)
    for (std::size_t j = 0; j < b.node_count(); ++j) {
        const double expected = -std::numbers::sqrt2 * kPi * std::sin(kPi * b.nodes[j]);
        CHECK(std::abs(b.derivative_table[1][j] - expected) <= 1e-12);
    }

    // Neumann condition at both ends
    for (int k = 0; k < b.n_modes; ++k) {
        CHECK(std::abs(b.derivative_table[k].front()) <= 1e-12);
        CHECK(std::abs(b.derivative_table[k].back()) <= 1e-12);
    }
}

TEST_CASE("build_basis rejects undersized grids", "[basis]") {
    CHECK_THROWS_AS(build_basis(8, 31), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(0, 64), std::invalid_argument);
}

TEST_CASE("quadrature orthonormality for M = 4n", "[basis]") {
    for (int n : {1, 2, 3, 4, 8, 16, 24, 32}) {
        const Basis b = build_basis(n, 4 * n);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double ip = 0.0;
                for (std::size_t q = 0; q < b.node_count(); ++q)
                    ip += b.weights[q] * b.eigenfunctions[j][q] * b.eigenfunctions[k][q];
                const double expected = (j == k) ? 1.0 : 0.0;
                REQUIRE(std::abs(ip - expected) <= 1e-10);
            }
        }
    }
}

TEST_CASE("project constants and orthogonal modes", "[basis]") {
    const Basis b = build_basis(2, 16);
    VectorField v(b.node_count());
    for (Vec3& p : v.v) p = {3.0, 0.0, 0.0};
    const GalerkinState s = project(v, b);
    CHECK(s.c[0].x == Catch::Approx(3.0).margin(1e-13));
    CHECK(std::abs(s.c[0].y) <= 1e-13);
    CHECK(norm(s.c[1]) <= 1e-13);

    // e_2 is orthogonal to span{e_0, e_1}
    const Basis wide = build_basis(3, 64);
    VectorField e2(wide.node_count());
    for (std::size_t j = 0; j < e2.nodes(); ++j)
        e2.v[j] = {0.0, wide.eigenfunctions[2][j], 0.0};
    VectorField e2_on_small(b.node_count());
    for (std::size_t j = 0; j < b.node_count(); ++j)
        e2_on_small.v[j] = {0.0, std::numbers::sqrt2 * std::cos(2.0 * kPi * b.nodes[j]), 0.0};
    const GalerkinState zero = project(e2_on_small, b);
    CHECK(norm(zero.c[0]) <= 1e-9);
    CHECK(norm(zero.c[1]) <= 1e-9);
}

TEST_CASE("project recovers a pure mode", "[basis]") {
    const Basis b = build_basis(4, 64);
    VectorField v(b.node_count());
    for (std::size_t j = 0; j < v.nodes(); ++j) v.v[j] = {0.0, 0.0, b.eigenfunctions[1][j]};
    const GalerkinState s = project(v, b);
    CHECK(s.c[1].z == Catch::Approx(1.0).margin(1e-8));
    CHECK(std::abs(s.c[0].z) <= 1e-8);
    CHECK(std::abs(s.c[2].z) <= 1e-8);
}

TEST_CASE("projection is an L2 contraction", "[basis]") {
    const Basis b = build_basis(6, 48);
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const VectorField v = random_field(b, seed, 2.0);
        const GalerkinState s = project(v, b);
        CHECK(norm_l2(s) <= norm_l2(b, v) + 1e-9);
    }
}

TEST_CASE("synthesize basics and round trip", "[basis]") {
    const Basis b = build_basis(8, 64);

    GalerkinState c0(1);
    c0.c[0] = {1.0, 0.0, 0.0};
    const VectorField constant = synthesize(c0, b);
    for (const Vec3& p : constant.v) {
        CHECK(p.x == Catch::Approx(1.0).margin(1e-15));
        CHECK(p.y == 0.0);
    }

    GalerkinState c1(2);
    c1.c[1] = {0.0, 1.0, 0.0};
    const VectorField mode1 = synthesize(c1, b);
    CHECK(mode1.v[0].y == Catch::Approx(std::numbers::sqrt2).epsilon(1e-14));

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GalerkinState s(8);
    for (Vec3& c : s.c) c = {u(gen), u(gen), u(gen)};
    const GalerkinState round = project(synthesize(s, b), b);
    for (std::size_t k = 0; k < s.modes(); ++k) CHECK(norm(round.c[k] - s.c[k]) <= 1e-9);
}

TEST_CASE("synthesize rejects oversized states", "[basis]") {
    const Basis b = build_basis(2, 8);
    GalerkinState s(3);
    CHECK_THROWS_AS(synthesize(s, b), std::invalid_argument);
}

TEST_CASE("laplacian acts diagonally", "[basis]") {
    const Basis b = build_basis(4, 32);

    GalerkinState c0(1);
    c0.c[0] = {1.0, 1.0, 1.0};
    CHECK(norm(laplacian(c0, b).c[0]) == 0.0);

    GalerkinState c1(2);
    c1.c[1] = {0.0, 0.0, 1.0};
    const GalerkinState lap = laplacian(c1, b);
    CHECK(lap.c[1].z == Catch::Approx(-kPi * kPi).epsilon(1e-14));

    // linearity is exact
    GalerkinState x(4), y(4);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 0; k < 4; ++k) {
        x.c[k] = {u(gen), u(gen), u(gen)};
        y.c[k] = {u(gen), u(gen), u(gen)};
    }
    const GalerkinState lhs = laplacian(2.0 * x + (-3.0) * y, b);
    const GalerkinState rhs = 2.0 * laplacian(x, b) + (-3.0) * laplacian(y, b);
    for (std::size_t k = 0; k < 4; ++k) CHECK(norm(lhs.c[k] - rhs.c[k]) <= 1e-12);
}

TEST_CASE("spectral laplacian matches eigenvalue action on the grid", "[basis]") {
    const Basis b = build_basis(8, 48);
    for (int k = 0; k < b.n_modes; ++k) {
        GalerkinState s(b.n_modes);
        s.c[k] = {1.0, 0.0, 0.0};
        const VectorField lap = synthesize(laplacian(s, b), b);
        for (std::size_t j = 0; j < lap.nodes(); ++j) {
            const double expected = -b.eigenvalues[k] * b.eigenfunctions[k][j];
            REQUIRE(std::abs(lap.v[j].x - expected) <= 1e-9);
        }
    }
}

TEST_CASE("spatial derivative values", "[basis]") {
    const Basis b = build_basis(4, 64);

    GalerkinState c0(1);
    c0.c[0] = {5.0, -2.0, 1.0};
    const VectorField dz = spatial_derivative(c0, b);
    for (const Vec3& p : dz.v) CHECK(norm(p) == 0.0);

    GalerkinState c1(2);
    c1.c[1] = {1.0, 0.0, 0.0};
    const VectorField d = spatial_derivative(c1, b);
    CHECK(norm(d.v[0]) <= 1e-12);  // Neumann end
    CHECK(d.v[32].x == Catch::Approx(-std::numbers::sqrt2 * kPi).epsilon(1e-13));
}

TEST_CASE("project and synthesize are linear", "[basis]") {
    const Basis b = build_basis(5, 40);
    const VectorField f = random_field(b, 21);
    const VectorField g = random_field(b, 22);
    const GalerkinState lhs = project(2.5 * f + (-1.0) * g, b);
    const GalerkinState rhs = 2.5 * project(f, b) + (-1.0) * project(g, b);
    for (std::size_t k = 0; k < lhs.modes(); ++k) CHECK(norm(lhs.c[k] - rhs.c[k]) <= 1e-14);
}

TEST_CASE("project rejects grid mismatch", "[basis]") {
    const Basis b = build_basis(2, 8);
    VectorField wrong(7);
    CHECK_THROWS_AS(project(wrong, b), std::invalid_argument);
}
