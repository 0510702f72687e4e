#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sllg/field.hpp"

namespace sllg {

// Neumann-Laplacian eigenbasis on (0,1):
//   e_0 = 1, lambda_0 = 0;  e_k(x) = sqrt(2) cos(k pi x), lambda_k = (k pi)^2.
// All integrals use the composite trapezoid rule on the shared uniform grid, so
// the discrete basis is orthonormal to rounding whenever M >= 4 n (cosine
// products up to mode 2n-2 are integrated exactly by the M+1-point rule).
struct Basis {
    int n_modes = 0;
    int grid = 0;  // M; nodes are x_j = j/M, j = 0..M
    std::vector<double> nodes;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenfunctions;     // [k][j]
    std::vector<std::vector<double>> derivative_table;   // e_k'(x_j)
    std::vector<double> weights;                         // trapezoid weights

    std::size_t node_count() const { return static_cast<std::size_t>(grid) + 1; }
};

/// Coefficients of an R^3-valued field in span{e_0, ..., e_{n-1}}, one Vec3 per mode.
struct GalerkinState {
    std::vector<Vec3> c;

    GalerkinState() = default;
    explicit GalerkinState(std::size_t modes) : c(modes) {}

    std::size_t modes() const { return c.size(); }
};

inline Basis build_basis(int n_modes, int grid_points) {
    if (n_modes < 1) throw std::invalid_argument("build_basis: need n_modes >= 1");
    if (grid_points < 4 * n_modes)
        throw std::invalid_argument("build_basis: grid must satisfy M >= 4*n_modes, got M=" +
                                    std::to_string(grid_points) + " for n=" +
                                    std::to_string(n_modes));
    Basis b;
    b.n_modes = n_modes;
    b.grid = grid_points;
    const int M = grid_points;
    b.nodes.resize(M + 1);
    for (int j = 0; j <= M; ++j) b.nodes[j] = static_cast<double>(j) / M;

    b.weights.assign(M + 1, 1.0 / M);
    b.weights.front() = 0.5 / M;
    b.weights.back() = 0.5 / M;

    const double pi = std::numbers::pi;
    const double rt2 = std::numbers::sqrt2;
    b.eigenvalues.resize(n_modes);
    b.eigenfunctions.assign(n_modes, std::vector<double>(M + 1));
    b.derivative_table.assign(n_modes, std::vector<double>(M + 1));
    for (int k = 0; k < n_modes; ++k) {
        b.eigenvalues[k] = (k * pi) * (k * pi);
        for (int j = 0; j <= M; ++j) {
            if (k == 0) {
                b.eigenfunctions[k][j] = 1.0;
                b.derivative_table[k][j] = 0.0;
            } else {
                b.eigenfunctions[k][j] = rt2 * std::cos(k * pi * b.nodes[j]);
                b.derivative_table[k][j] = -rt2 * k * pi * std::sin(k * pi * b.nodes[j]);
            }
        }
    }
    return b;
}

/// Trapezoid integral of a scalar sample vector over [0,1].
inline double integrate(const Basis& b, const std::vector<double>& samples) {
    if (samples.size() != b.node_count())
        throw std::invalid_argument("integrate: sample count does not match basis grid");
    double s = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) s += b.weights[j] * samples[j];
    return s;
}

/// Trapezoid L^2 inner product of two fields on the basis grid.
inline double inner_l2(const Basis& b, const VectorField& f, const VectorField& g) {
    if (f.nodes() != b.node_count() || g.nodes() != b.node_count())
        throw std::invalid_argument("inner_l2: field not sampled on basis grid");
    double s = 0.0;
    for (std::size_t j = 0; j < f.nodes(); ++j) s += b.weights[j] * dot(f.v[j], g.v[j]);
    return s;
}

inline double norm_l2(const Basis& b, const VectorField& f) {
    return std::sqrt(std::max(0.0, inner_l2(b, f, f)));
}

/// Quadrature coefficients c_k = <v, e_k> per component.
inline GalerkinState project(const VectorField& v, const Basis& b) {
    if (v.nodes() != b.node_count())
        throw std::invalid_argument("project: field not sampled on basis grid");
    GalerkinState s(b.n_modes);
    for (int k = 0; k < b.n_modes; ++k) {
        const std::vector<double>& ek = b.eigenfunctions[k];
        Vec3 acc;
        for (std::size_t j = 0; j < v.nodes(); ++j) acc += (b.weights[j] * ek[j]) * v.v[j];
        s.c[k] = acc;
    }
    return s;
}

/// Pointwise synthesis sum_k c_k e_k(x_j).
inline VectorField synthesize(const GalerkinState& s, const Basis& b) {
    if (s.modes() > static_cast<std::size_t>(b.n_modes))
        throw std::invalid_argument("synthesize: state has more modes than basis");
    VectorField out(b.node_count());
    for (std::size_t k = 0; k < s.modes(); ++k) {
        const std::vector<double>& ek = b.eigenfunctions[k];
        for (std::size_t j = 0; j < out.nodes(); ++j) out.v[j] += ek[j] * s.c[k];
    }
    return out;
}

/// Spectral Laplacian: mode k is scaled by -lambda_k.
inline GalerkinState laplacian(const GalerkinState& s, const Basis& b) {
    if (s.modes() > static_cast<std::size_t>(b.n_modes))
        throw std::invalid_argument("laplacian: state has more modes than basis");
    GalerkinState out(s.modes());
    for (std::size_t k = 0; k < s.modes(); ++k) out.c[k] = -b.eigenvalues[k] * s.c[k];
    return out;
}

/// Pointwise derivative sum_k c_k e_k'(x_j); vanishes at both ends (Neumann).
inline VectorField spatial_derivative(const GalerkinState& s, const Basis& b) {
    if (s.modes() > static_cast<std::size_t>(b.n_modes))
        throw std::invalid_argument("spatial_derivative: state has more modes than basis");
    VectorField out(b.node_count());
    for (std::size_t k = 1; k < s.modes(); ++k) {
        const std::vector<double>& dek = b.derivative_table[k];
        for (std::size_t j = 0; j < out.nodes(); ++j) out.v[j] += dek[j] * s.c[k];
    }
    return out;
}

// Coefficient-space algebra. With the discrete orthonormality above these are
// the same L^2 quantities as the grid quadrature ones.

inline GalerkinState operator+(const GalerkinState& a, const GalerkinState& b) {
    if (a.modes() != b.modes()) throw std::invalid_argument("state mode-count mismatch");
    GalerkinState out(a.modes());
    for (std::size_t k = 0; k < a.modes(); ++k) out.c[k] = a.c[k] + b.c[k];
    return out;
}

inline GalerkinState operator-(const GalerkinState& a, const GalerkinState& b) {
    if (a.modes() != b.modes()) throw std::invalid_argument("state mode-count mismatch");
    GalerkinState out(a.modes());
    for (std::size_t k = 0; k < a.modes(); ++k) out.c[k] = a.c[k] - b.c[k];
    return out;
}

inline GalerkinState operator*(double s, const GalerkinState& a) {
    GalerkinState out(a.modes());
    for (std::size_t k = 0; k < a.modes(); ++k) out.c[k] = s * a.c[k];
    return out;
}

inline GalerkinState& operator+=(GalerkinState& a, const GalerkinState& b) {
    if (a.modes() != b.modes()) throw std::invalid_argument("state mode-count mismatch");
    for (std::size_t k = 0; k < a.modes(); ++k) a.c[k] += b.c[k];
    return a;
}

inline double inner_l2(const GalerkinState& a, const GalerkinState& b) {
    if (a.modes() != b.modes()) throw std::invalid_argument("state mode-count mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.modes(); ++k) s += dot(a.c[k], b.c[k]);
    return s;
}

inline double norm_l2_sq(const GalerkinState& a) { return inner_l2(a, a); }
inline double norm_l2(const GalerkinState& a) { return std::sqrt(norm_l2_sq(a)); }

inline bool finite(const GalerkinState& a) {
    for (const Vec3& p : a.c)
        if (!finite(p)) return false;
    return true;
}

}  // namespace sllg
