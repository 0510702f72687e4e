#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "sllg/basis.hpp"
#include "sllg/field.hpp"
#include "sllg/norms.hpp"

using namespace sllg;

namespace {
constexpr double kPi = std::numbers::pi;

VectorField random_field(std::size_t nodes, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    VectorField f(nodes);
    for (Vec3& p : f.v) p = {u(gen), u(gen), u(gen)};
    return f;
}

VectorField constant_field(std::size_t nodes, Vec3 v) {
    VectorField f(nodes);
    for (Vec3& p : f.v) p = v;
    return f;
}
}  // namespace

TEST_CASE("cross product basics", "[fields]") {
    const std::size_t nodes = 17;
    const VectorField a = random_field(nodes, 1);
    CHECK(sup_norm(cross(a, a)) == 0.0);

    const VectorField ex = constant_field(nodes, {1, 0, 0});
    const VectorField ey = constant_field(nodes, {0, 1, 0});
    const VectorField ez = cross(ex, ey);
    for (const Vec3& p : ez.v) {
        CHECK(p.x == 0.0);
        CHECK(p.y == 0.0);
        CHECK(p.z == 1.0);
    }
}

TEST_CASE("cross is antisymmetric, bilinear, orthogonal to its factors", "[fields]") {
    const std::size_t nodes = 33;
    const VectorField a = random_field(nodes, 2);
    const VectorField b = random_field(nodes, 3);
    const VectorField c = random_field(nodes, 4);

    const VectorField ab = cross(a, b);
    const VectorField ba = cross(b, a);
    for (std::size_t j = 0; j < nodes; ++j) {
        CHECK(norm(ab.v[j] + ba.v[j]) == 0.0);
        CHECK(std::abs(dot(ab.v[j], a.v[j])) <= 1e-14);
        CHECK(std::abs(dot(ab.v[j], b.v[j])) <= 1e-14);
    }

    const VectorField lhs = cross(a, 2.0 * b + (-1.5) * c);
    const VectorField rhs = 2.0 * cross(a, b) + (-1.5) * cross(a, c);
    for (std::size_t j = 0; j < nodes; ++j) CHECK(norm(lhs.v[j] - rhs.v[j]) <= 1e-14);
}

TEST_CASE("cross rejects mismatched grids", "[fields]") {
    CHECK_THROWS_AS(cross(VectorField(5), VectorField(6)), std::invalid_argument);
}

TEST_CASE("norms of simple fields", "[fields]") {
    const Basis b = build_basis(16, 64);

    const VectorField zero(b.node_count());
    const FieldNorms nz = norms(zero, b);
    CHECK(nz.l2 == 0.0);
    CHECK(nz.h1 == 0.0);
    CHECK(nz.linf == 0.0);
    CHECK(nz.l4_of_gradient == 0.0);

    // sphere-valued field on the unit interval has unit L2 norm
    VectorField m(b.node_count());
    for (std::size_t j = 0; j < m.nodes(); ++j) {
        const double f = 0.7 * std::cos(kPi * b.nodes[j]);
        m.v[j] = {std::cos(f), std::sin(f), 0.0};
    }
    CHECK(norms(m, b).l2 == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("gradient norm of the winding field has the closed-form value", "[fields]") {
    // m = (cos f, sin f, 0), f = cos(pi x): |m'|^2 = pi^2 sin^2(pi x), integral pi^2/2
    const Basis b = build_basis(32, 256);
    VectorField m(b.node_count());
    for (std::size_t j = 0; j < m.nodes(); ++j) {
        const double f = std::cos(kPi * b.nodes[j]);
        m.v[j] = {std::cos(f), std::sin(f), 0.0};
    }
    const FieldNorms n = norms(m, b);
    const double grad_sq = n.h1 * n.h1 - n.l2 * n.l2;
    CHECK(grad_sq == Catch::Approx(kPi * kPi / 2.0).margin(1e-6));
}

TEST_CASE("norms are absolutely homogeneous", "[fields]") {
    const Basis b = build_basis(8, 32);
    const VectorField v = random_field(b.node_count(), 5);
    const FieldNorms n1 = norms(v, b);
    const FieldNorms n2 = norms(-2.5 * v, b);
    CHECK(n2.l2 == Catch::Approx(2.5 * n1.l2).margin(1e-12));
    CHECK(n2.linf == Catch::Approx(2.5 * n1.linf).margin(1e-12));
}

TEST_CASE("exchange energy", "[fields]") {
    const Basis b = build_basis(32, 256);

    GalerkinState constant(b.n_modes);
    constant.c[0] = {0.0, 0.0, 1.0};
    CHECK(exchange_energy(constant, b) == 0.0);

    VectorField m(b.node_count());
    for (std::size_t j = 0; j < m.nodes(); ++j) {
        const double f = std::cos(kPi * b.nodes[j]);
        m.v[j] = {std::cos(f), std::sin(f), 0.0};
    }
    const GalerkinState s = project(m, b);
    CHECK(exchange_energy(s, b) == Catch::Approx(kPi * kPi / 4.0).margin(1e-6));
    CHECK(exchange_energy(2.0 * s, b) ==
          Catch::Approx(4.0 * exchange_energy(s, b)).epsilon(1e-12));
}

TEST_CASE("sphere deviation", "[fields]") {
    const std::size_t nodes = 9;
    CHECK(sphere_deviation(constant_field(nodes, {0, 0, 1})) == 0.0);
    CHECK(sphere_deviation(1.5 * constant_field(nodes, {1, 0, 0})) ==
          Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("lagrange identity residual", "[fields]") {
    const std::size_t nodes = 11;
    const VectorField ex = constant_field(nodes, {1, 0, 0});
    const VectorField ey = constant_field(nodes, {0, 1, 0});
    CHECK(lagrange_identity_residual(ex, ey) <= 1e-15);
    CHECK(lagrange_identity_residual(ex, ex) <= 1e-15);

    for (std::uint64_t seed : {31u, 32u, 33u, 34u}) {
        const VectorField a = random_field(nodes, seed);
        const VectorField b = random_field(nodes, seed + 100);
        CHECK(lagrange_identity_residual(a, b) <= 1e-12);
    }
}
