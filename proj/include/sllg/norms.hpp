#pragma once

#include <cmath>

#include "sllg/basis.hpp"
#include "sllg/field.hpp"

namespace sllg {

/// Norm bundle used by the energy and regularity diagnostics.
struct FieldNorms {
    double l2 = 0.0;
    double h1 = 0.0;
    double linf = 0.0;
    double l4_of_gradient = 0.0;
};

// The gradient in every diagnostic below is spectral: raw grid fields are
// projected onto the basis first, Galerkin states are differentiated directly.

inline FieldNorms norms(const VectorField& v, const Basis& b) {
    FieldNorms n;
    n.linf = sup_norm(v);
    std::vector<double> sq(v.nodes());
    for (std::size_t j = 0; j < v.nodes(); ++j) sq[j] = norm_sq(v.v[j]);
    const double l2_sq = integrate(b, sq);
    n.l2 = std::sqrt(std::max(0.0, l2_sq));

    const VectorField grad = spatial_derivative(project(v, b), b);
    std::vector<double> gsq(grad.nodes());
    std::vector<double> g4(grad.nodes());
    for (std::size_t j = 0; j < grad.nodes(); ++j) {
        gsq[j] = norm_sq(grad.v[j]);
        g4[j] = gsq[j] * gsq[j];
    }
    n.h1 = std::sqrt(std::max(0.0, l2_sq + integrate(b, gsq)));
    n.l4_of_gradient = std::pow(std::max(0.0, integrate(b, g4)), 0.25);
    return n;
}

inline FieldNorms norms(const GalerkinState& s, const Basis& b) {
    return norms(synthesize(s, b), b);
}

/// |grad m|^2_{L^2} from coefficients: sum_k lambda_k |c_k|^2.
inline double gradient_l2_sq(const GalerkinState& s, const Basis& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.modes(); ++k) acc += b.eigenvalues[k] * norm_sq(s.c[k]);
    return acc;
}

inline double h1_norm_sq(const GalerkinState& s, const Basis& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.modes(); ++k)
        acc += (1.0 + b.eigenvalues[k]) * norm_sq(s.c[k]);
    return acc;
}

/// |(I - Delta) m|^2_{L^2} = sum_k (1 + lambda_k)^2 |c_k|^2.
inline double a1_norm_sq(const GalerkinState& s, const Basis& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.modes(); ++k) {
        const double w = 1.0 + b.eigenvalues[k];
        acc += w * w * norm_sq(s.c[k]);
    }
    return acc;
}

/// Exchange energy (1/2) |grad m|^2_{L^2}; the only energy term retained.
inline double exchange_energy(const GalerkinState& m, const Basis& b) {
    return 0.5 * gradient_l2_sq(m, b);
}

}  // namespace sllg
