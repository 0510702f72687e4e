#pragma once

#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sllg/dynamics.hpp"
#include "sllg/wiener.hpp"

namespace sllg {

enum class Scheme { ito, heun };

/// Piecewise-constant-in-time control: window j covers [j T/J_t, (j+1) T/J_t).
/// A default-constructed schedule is the zero control.
struct ControlSchedule {
    std::vector<VectorField> windows;
    double horizon = 0.0;

    ControlSchedule() = default;
    ControlSchedule(std::vector<VectorField> w, double T) : windows(std::move(w)), horizon(T) {}

    bool empty() const { return windows.empty(); }

    const VectorField& slice_at(double t) const {
        const auto j = static_cast<std::size_t>(t / horizon * static_cast<double>(windows.size()));
        return windows[std::min(j, windows.size() - 1)];
    }
};

struct SimConfig {
    const Basis* basis = nullptr;
    LlgParams params;
    GalerkinState m0;
    Scheme scheme = Scheme::heun;
    double dt = 1e-3;
    std::size_t n_steps = 0;
    bool renormalize = false;
    std::size_t save_stride = 1;
    double blowup_threshold = 1e6;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GalerkinState> states;
    WienerPath path;
    Scheme scheme = Scheme::heun;
    bool blown_up = false;
    std::size_t blowup_step = 0;

    const GalerkinState& final_state() const { return states.back(); }
};

/// One explicit Euler-Maruyama step of the Ito form (drift includes the
/// Stratonovich correction): m + drift dt + psi P_n(G(m)) dW.
inline GalerkinState step_ito(const GalerkinState& m, const VectorField& u_slice, double dW,
                              double dt, const LlgParams& p) {
    GalerkinState out = m;
    out += dt * drift_ito(m, u_slice, p);
    const double psi = p.cutoff_enabled ? psi_cutoff(synthesize(m, *p.basis), p) : 1.0;
    out += (psi * dW) * galerkin_noise(m, p);
    return out;
}

/// Heun predictor-corrector step of the Stratonovich form: drift omits the
/// correction term, both drift and diffusion are averaged over the predictor.
inline GalerkinState step_heun_stratonovich(const GalerkinState& m, const VectorField& u_slice,
                                            double dW, double dt, const LlgParams& p) {
    const GalerkinState a0 = drift_stratonovich(m, u_slice, p);
    const double psi0 = p.cutoff_enabled ? psi_cutoff(synthesize(m, *p.basis), p) : 1.0;
    const GalerkinState b0 = psi0 * galerkin_noise(m, p);

    GalerkinState pred = m;
    pred += dt * a0;
    pred += dW * b0;

    const GalerkinState a1 = drift_stratonovich(pred, u_slice, p);
    const double psi1 = p.cutoff_enabled ? psi_cutoff(synthesize(pred, *p.basis), p) : 1.0;
    const GalerkinState b1 = psi1 * galerkin_noise(pred, p);

    GalerkinState out = m;
    out += (0.5 * dt) * (a0 + a1);
    out += (0.5 * dW) * (b0 + b1);
    return out;
}

inline void renormalize_state(GalerkinState& s, const Basis& b) {
    VectorField f = synthesize(s, b);
    for (Vec3& p : f.v) {
        const double r = norm(p);
        if (r > 1e-14) p = (1.0 / r) * p;
    }
    s = project(f, b);
}

/// Run the chosen scheme along one Wiener path. The control is sampled at the
/// left endpoint of each step. Stops early and flags the trajectory when a
/// state leaves the finite ball of radius blowup_threshold; the last finite
/// state stays in the record.
inline Trajectory integrate(const SimConfig& cfg, const ControlSchedule& control,
                            const WienerPath& path) {
    const Basis& b = *cfg.basis;
    if (cfg.m0.modes() != static_cast<std::size_t>(b.n_modes))
        throw std::invalid_argument("integrate: m0 mode count does not match basis");
    if (path.steps() != cfg.n_steps)
        throw std::invalid_argument("integrate: path length does not match config");
    if (cfg.n_steps > 0 && std::abs(path.dt - cfg.dt) > 1e-15)
        throw std::invalid_argument("integrate: path step size does not match config");
    if (!control.empty() && control.horizon + 1e-12 < cfg.dt * static_cast<double>(cfg.n_steps))
        throw std::invalid_argument("integrate: control not defined on the full horizon");

    const double cfl = cfg.dt * b.eigenvalues[b.n_modes - 1];
    if (cfl > 1.0)
        std::fprintf(stderr,
                     "sllg: warning: dt*lambda_max = %.3g exceeds the explicit-scheme limit\n",
                     cfl);

    Trajectory traj;
    traj.path = path;
    traj.scheme = cfg.scheme;
    traj.times.push_back(0.0);
    traj.states.push_back(cfg.m0);

    const VectorField zero_u(b.node_count());
    GalerkinState m = cfg.m0;
    for (std::size_t i = 0; i < cfg.n_steps; ++i) {
        const double t = static_cast<double>(i) * cfg.dt;
        const VectorField& u = control.empty() ? zero_u : control.slice_at(t);
        const double dW = path.increments[i];
        GalerkinState next = (cfg.scheme == Scheme::ito)
                                 ? step_ito(m, u, dW, cfg.dt, cfg.params)
                                 : step_heun_stratonovich(m, u, dW, cfg.dt, cfg.params);
        if (!finite(next) || norm_l2(next) > cfg.blowup_threshold) {
            traj.blown_up = true;
            traj.blowup_step = i;
            break;
        }
        if (cfg.renormalize) renormalize_state(next, b);
        m = std::move(next);
        if ((i + 1) % cfg.save_stride == 0 || i + 1 == cfg.n_steps) {
            traj.times.push_back(static_cast<double>(i + 1) * cfg.dt);
            traj.states.push_back(m);
        }
    }
    return traj;
}

}  // namespace sllg
