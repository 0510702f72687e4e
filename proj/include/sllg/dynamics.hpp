#pragma once

#include <cmath>
#include <stdexcept>

#include "sllg/basis.hpp"
#include "sllg/field.hpp"
#include "sllg/norms.hpp"

namespace sllg {

/// Fixed data of the controlled equation: damping, noise direction, cut-off switch.
/// The basis pointer must outlive the params object.
struct LlgParams {
    double alpha = 0.1;
    VectorField h;
    bool cutoff_enabled = false;
    const Basis* basis = nullptr;
    double h_sup = 0.0;  // |h|_{L^inf}, recorded for the cut-off thresholds

    LlgParams() = default;
    LlgParams(double alpha_, VectorField h_, const Basis& b, bool cutoff = false)
        : alpha(alpha_), h(std::move(h_)), cutoff_enabled(cutoff), basis(&b) {
        if (alpha <= 0.0) throw std::invalid_argument("LlgParams: alpha must be > 0");
        if (h.nodes() != b.node_count())
            throw std::invalid_argument("LlgParams: h not sampled on basis grid");
        if (!finite(h)) throw std::invalid_argument("LlgParams: h has non-finite entries");
        h_sup = sup_norm(h);
    }
};

/// Noise operator applied to a direction k: v x k - alpha v x (v x k).
inline VectorField g_apply(const VectorField& v, const VectorField& k, const LlgParams& p) {
    require_same_grid(v, k);
    VectorField out(v.nodes());
    for (std::size_t j = 0; j < v.nodes(); ++j) {
        const Vec3 vk = cross(v.v[j], k.v[j]);
        out.v[j] = vk - p.alpha * cross(v.v[j], vk);
    }
    return out;
}

/// Derivative of the noise operator at v in direction w, applied to h:
/// w x h - alpha [ v x (w x h) + w x (v x h) ].
inline VectorField dg_apply(const VectorField& v, const VectorField& w, const LlgParams& p) {
    require_same_grid(v, w);
    require_same_grid(v, p.h);
    VectorField out(v.nodes());
    for (std::size_t j = 0; j < v.nodes(); ++j) {
        const Vec3 wh = cross(w.v[j], p.h.v[j]);
        const Vec3 vh = cross(v.v[j], p.h.v[j]);
        out.v[j] = wh - p.alpha * (cross(v.v[j], wh) + cross(w.v[j], vh));
    }
    return out;
}

/// C^1 plateau function: 1 on [0, a], 0 on [b, inf), quintic smoothstep between.
inline double psi_plateau(double x, double a, double b) {
    const double ax = std::abs(x);
    if (ax <= a) return 1.0;
    if (ax >= b) return 0.0;
    const double t = (ax - a) / (b - a);
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

/// Three-factor cut-off psi_n(v); the thresholds sit at |h|_inf + 1 and |h|_inf + 2.
inline double psi_cutoff(const VectorField& v, const LlgParams& p) {
    const Basis& b = *p.basis;
    const double lo = p.h_sup + 1.0;
    const double hi = p.h_sup + 2.0;
    const VectorField vh = synthesize(project(cross(v, p.h), b), b);
    const VectorField vvh = synthesize(project(cross(v, cross(v, p.h)), b), b);
    return psi_plateau(sup_norm(v), lo, hi) * psi_plateau(sup_norm(vh), lo, hi) *
           psi_plateau(sup_norm(vvh), lo, hi);
}

/// P_n(G(m)): the diffusion coefficient of the Galerkin system (before the cut-off factor).
inline GalerkinState galerkin_noise(const GalerkinState& m, const LlgParams& p) {
    const Basis& b = *p.basis;
    return project(g_apply(synthesize(m, b), p.h, p), b);
}

// Stratonovich-to-Ito correction DG_n(m)(G_n(m)), expanded into its six
// projected terms. Substituting w = P_n(m x h) - alpha P_n(m x (m x h)) into
// the derivative formula and distributing gives
//     P_n(P_n(m x h) x h)
//   - alpha   P_n(P_n(m x (m x h)) x h)
//   - alpha   P_n(P_n(m x h) x (m x h))
//   - alpha   P_n(m x (P_n(m x h) x h))
//   + alpha^2 P_n(P_n(m x (m x h)) x (m x h))
//   + alpha^2 P_n(m x (P_n(m x (m x h)) x h)).
// Neither the leading 1/2 nor the cut-off factor is applied here; the drift
// assembler owns both.
inline GalerkinState correction(const GalerkinState& m, const LlgParams& p) {
    const Basis& b = *p.basis;
    const double a = p.alpha;
    const VectorField mg = synthesize(m, b);
    const VectorField mh = cross(mg, p.h);
    const VectorField mmh = cross(mg, mh);
    const VectorField pmh = synthesize(project(mh, b), b);
    const VectorField pmmh = synthesize(project(mmh, b), b);

    GalerkinState out = project(cross(pmh, p.h), b);
    out += (-a) * project(cross(pmmh, p.h), b);
    out += (-a) * project(cross(pmh, mh), b);
    out += (-a) * project(cross(mg, cross(pmh, p.h)), b);
    out += (a * a) * project(cross(pmmh, mh), b);
    out += (a * a) * project(cross(mg, cross(pmmh, p.h)), b);
    return out;
}

/// The four projected cross-product drift terms; each is L^2-orthogonal to m.
struct DriftTerms {
    GalerkinState exchange_precession;  // P_n(m x Dm)
    GalerkinState exchange_damping;     // P_n(m x (m x Dm))
    GalerkinState control_precession;   // P_n(m x u)
    GalerkinState control_damping;      // P_n(m x (m x u))
};

inline DriftTerms drift_terms(const GalerkinState& m, const VectorField& u_slice,
                              const LlgParams& p) {
    const Basis& b = *p.basis;
    if (u_slice.nodes() != b.node_count())
        throw std::invalid_argument("drift_terms: control slice not on basis grid");
    const VectorField mg = synthesize(m, b);
    const VectorField lap = synthesize(laplacian(m, b), b);
    const VectorField mxlap = cross(mg, lap);
    const VectorField mxu = cross(mg, u_slice);
    DriftTerms t;
    t.exchange_precession = project(mxlap, b);
    t.exchange_damping = project(cross(mg, mxlap), b);
    t.control_precession = project(mxu, b);
    t.control_damping = project(cross(mg, mxu), b);
    return t;
}

/// Ito drift of the truncated Galerkin system:
/// F1 - alpha F2 + F3 - alpha psi F4 + (1/2) psi^2 DG_n(G_n); psi = 1 when the
/// cut-off is disabled.
inline GalerkinState drift_ito(const GalerkinState& m, const VectorField& u_slice,
                               const LlgParams& p) {
    const DriftTerms t = drift_terms(m, u_slice, p);
    const double psi = p.cutoff_enabled ? psi_cutoff(synthesize(m, *p.basis), p) : 1.0;
    GalerkinState d = t.exchange_precession;
    d += (-p.alpha) * t.exchange_damping;
    d += t.control_precession;
    d += (-p.alpha * psi) * t.control_damping;
    d += (0.5 * psi * psi) * correction(m, p);
    return d;
}

/// Stratonovich drift: as above without the correction term.
inline GalerkinState drift_stratonovich(const GalerkinState& m, const VectorField& u_slice,
                                        const LlgParams& p) {
    const DriftTerms t = drift_terms(m, u_slice, p);
    const double psi = p.cutoff_enabled ? psi_cutoff(synthesize(m, *p.basis), p) : 1.0;
    GalerkinState d = t.exchange_precession;
    d += (-p.alpha) * t.exchange_damping;
    d += t.control_precession;
    d += (-p.alpha * psi) * t.control_damping;
    return d;
}

/// L^2 size of m x (m x Dm) + Dm + |grad m|^2 m, which vanishes for unit-length m.
inline double triple_product_residual(const GalerkinState& s, const Basis& b) {
    const VectorField m = synthesize(s, b);
    const VectorField lap = synthesize(laplacian(s, b), b);
    const VectorField grad = spatial_derivative(s, b);
    VectorField r(m.nodes());
    for (std::size_t j = 0; j < m.nodes(); ++j)
        r.v[j] = cross(m.v[j], cross(m.v[j], lap.v[j])) + lap.v[j] + norm_sq(grad.v[j]) * m.v[j];
    return norm_l2(b, r);
}

}  // namespace sllg
