#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sllg/dynamics.hpp"
#include "sllg/ensemble.hpp"
#include "sllg/integrator.hpp"

namespace sllg {

/// One block of default pass thresholds; every acceptance number references these.
struct Thresholds {
    double l2_drift = 1e-2;
    double sphere_dev = 0.5;
    double h1_sup_sq = 1e3;
    double grad_l4_integral = 1e4;
    double a1_integral = 1e7;
    double identity_residual = 10.0;
};

struct InvariantReport {
    double l2_drift = 0.0;
    double sphere_dev = 0.0;
    double h1_sup_sq = 0.0;
    double grad_l4_integral = 0.0;
    double a1_integral = 0.0;
    double initial_energy = 0.0;
    std::vector<double> energy;              // exchange energy per saved time
    std::vector<double> identity_residual;   // triple-product residual per saved time
    bool finite_ok = true;
    bool pass_l2 = false;
    bool pass_sphere = false;
    bool pass_h1 = false;
    bool pass_regularity = false;
    bool pass_identity = false;
    Thresholds thresholds;

    bool all_pass() const {
        return finite_ok && pass_l2 && pass_sphere && pass_h1 && pass_regularity &&
               pass_identity;
    }
};

/// Pure function of (trajectory, thresholds); never throws on a breach, only flags it.
inline InvariantReport check_trajectory(const Trajectory& traj, const Basis& b,
                                        const Thresholds& thr = Thresholds{}) {
    InvariantReport rep;
    rep.thresholds = thr;
    rep.finite_ok = !traj.blown_up;
    const PathStats s = summarize_path(traj, b);
    rep.l2_drift = s.l2_drift;
    rep.sphere_dev = s.max_sphere_dev;
    rep.h1_sup_sq = s.sup_h1_sq;
    rep.grad_l4_integral = s.int_grad_l4;
    rep.a1_integral = s.int_a1_sq;
    rep.energy.reserve(traj.states.size());
    rep.identity_residual.reserve(traj.states.size());
    double max_res = 0.0;
    for (const GalerkinState& m : traj.states) {
        rep.energy.push_back(exchange_energy(m, b));
        rep.identity_residual.push_back(triple_product_residual(m, b));
        max_res = std::max(max_res, rep.identity_residual.back());
    }
    rep.initial_energy = rep.energy.front();
    rep.pass_l2 = rep.l2_drift <= thr.l2_drift;
    rep.pass_sphere = rep.sphere_dev <= thr.sphere_dev;
    rep.pass_h1 = rep.h1_sup_sq <= thr.h1_sup_sq;
    rep.pass_regularity =
        rep.grad_l4_integral <= thr.grad_l4_integral && rep.a1_integral <= thr.a1_integral;
    rep.pass_identity = max_res <= thr.identity_residual;
    return rep;
}

struct SweepRow {
    double value = 0.0;
    double error = 0.0;
    double est_order = 0.0;  // NaN where undefined (first row, zero errors, blow-ups)
    bool blown_up = false;
};

using SweepTable = std::vector<SweepRow>;

/// Log-ratio order estimates between consecutive finite rows. `refining_down`
/// is true for dt-like axes (smaller value = finer run) and false for n-like
/// axes (larger value = finer run).
inline void estimate_orders(SweepTable& table, bool refining_down) {
    for (SweepRow& r : table) r.est_order = std::nan("");
    for (std::size_t i = 1; i < table.size(); ++i) {
        const SweepRow& prev = table[i - 1];
        SweepRow& cur = table[i];
        if (prev.blown_up || cur.blown_up) continue;
        if (!(prev.error > 0.0) || !(cur.error > 0.0)) continue;
        if (prev.value == cur.value) continue;
        const double ratio = refining_down ? prev.value / cur.value : cur.value / prev.value;
        cur.est_order = std::log(prev.error / cur.error) / std::log(ratio);
    }
}

/// What a dt sweep measures per run.
enum class SweepMetric {
    reference_distance,  // max_t L^2 distance to the finest run
    l2_drift,            // max_t | |m(t)|^2_{L2} - |m(0)|^2_{L2} | of the run itself
    scheme_distance,     // max_t L^2 distance between Heun and Ito runs on the same path
};

/// dt sweep on one shared Wiener path: the path is generated at the finest
/// step and block-summed upward, so every run sees the same noise. Each dt
/// must be an integer multiple of the finest. Blown-up runs are flagged and
/// excluded from order estimates.
inline SweepTable dt_sweep(const SimConfig& base, const ControlSchedule& control,
                           const std::vector<double>& dts, std::uint64_t seed, double horizon,
                           SweepMetric metric = SweepMetric::reference_distance) {
    if (dts.size() < 2) throw std::invalid_argument("dt_sweep: need at least 2 values");
    double dt_min = dts.front();
    for (double dt : dts) {
        if (!(dt > 0.0)) throw std::invalid_argument("dt_sweep: dt values must be positive");
        dt_min = std::min(dt_min, dt);
    }
    const auto fine_steps = static_cast<std::size_t>(std::llround(horizon / dt_min));
    if (fine_steps == 0 ||
        std::abs(static_cast<double>(fine_steps) * dt_min - horizon) > 1e-9)
        throw std::invalid_argument("dt_sweep: horizon is not a multiple of the finest dt");
    const WienerPath fine = generate_wiener(seed, fine_steps, dt_min);

    auto run = [&](double dt, Scheme scheme) {
        const double ratio = dt / dt_min;
        const auto factor = static_cast<std::size_t>(std::llround(ratio));
        if (std::abs(ratio - static_cast<double>(factor)) > 1e-9 || factor == 0 ||
            fine_steps % factor != 0)
            throw std::invalid_argument("dt_sweep: inconsistent path refinement for dt value");
        SimConfig cfg = base;
        cfg.scheme = scheme;
        cfg.dt = dt;
        cfg.n_steps = fine_steps / factor;
        cfg.save_stride = 1;
        return integrate(cfg, control, coarsen(fine, factor));
    };

    Trajectory ref;
    if (metric == SweepMetric::reference_distance) ref = run(dt_min, base.scheme);

    SweepTable table;
    for (double dt : dts) {
        SweepRow row;
        row.value = dt;
        switch (metric) {
            case SweepMetric::reference_distance: {
                const Trajectory traj = run(dt, base.scheme);
                row.blown_up = traj.blown_up || ref.blown_up;
                if (!row.blown_up) {
                    const auto factor = static_cast<std::size_t>(std::llround(dt / dt_min));
                    double err = 0.0;
                    for (std::size_t i = 0; i < traj.states.size(); ++i)
                        err = std::max(err, norm_l2(traj.states[i] - ref.states[i * factor]));
                    row.error = err;
                }
                break;
            }
            case SweepMetric::l2_drift: {
                const Trajectory traj = run(dt, base.scheme);
                row.blown_up = traj.blown_up;
                if (!row.blown_up) {
                    const double l2_sq_0 = norm_l2_sq(traj.states.front());
                    double drift = 0.0;
                    for (const GalerkinState& m : traj.states)
                        drift = std::max(drift, std::abs(norm_l2_sq(m) - l2_sq_0));
                    row.error = drift;
                }
                break;
            }
            case SweepMetric::scheme_distance: {
                const Trajectory th = run(dt, Scheme::heun);
                const Trajectory ti = run(dt, Scheme::ito);
                row.blown_up = th.blown_up || ti.blown_up;
                if (!row.blown_up) {
                    double err = 0.0;
                    for (std::size_t i = 0; i < th.states.size(); ++i)
                        err = std::max(err, norm_l2(th.states[i] - ti.states[i]));
                    row.error = err;
                }
                break;
            }
        }
        if (row.blown_up) row.error = std::nan("");
        table.push_back(row);
    }
    estimate_orders(table, /*refining_down=*/true);
    return table;
}

/// Resolution sweep on one Wiener path (the scalar increments are shared by
/// all n). Per-value metric: time-max sphere deviation, the quantity the
/// constraint recovers as n grows. grid_for_n fixes M per n (typically 4n).
struct NSweepSetup {
    double alpha = 0.1;
    Vec3 h = {0.0, 0.0, 1.0};
    bool cutoff = false;
    Scheme scheme = Scheme::heun;
    double dt = 1e-3;
    std::size_t n_steps = 0;
    std::function<int(int)> grid_for_n = [](int n) { return 4 * n; };
    std::function<VectorField(const Basis&)> m0_builder;
};

inline SweepTable n_sweep(const NSweepSetup& setup, const std::vector<int>& ns,
                          std::uint64_t seed) {
    if (ns.size() < 2) throw std::invalid_argument("n_sweep: need at least 2 values");
    const WienerPath path = generate_wiener(seed, setup.n_steps, setup.dt);
    SweepTable table;
    for (int n : ns) {
        const Basis b = build_basis(n, setup.grid_for_n(n));
        VectorField h(b.node_count());
        for (Vec3& p : h.v) p = setup.h;
        SimConfig cfg;
        cfg.basis = &b;
        cfg.params = LlgParams(setup.alpha, h, b, setup.cutoff);
        cfg.m0 = project(setup.m0_builder(b), b);
        cfg.scheme = setup.scheme;
        cfg.dt = setup.dt;
        cfg.n_steps = setup.n_steps;
        const Trajectory traj = integrate(cfg, ControlSchedule{}, path);
        SweepRow row;
        row.value = static_cast<double>(n);
        row.blown_up = traj.blown_up;
        if (!row.blown_up) {
            double dev = 0.0;
            for (const GalerkinState& m : traj.states)
                dev = std::max(dev, sphere_deviation(synthesize(m, b)));
            row.error = dev;
        } else {
            row.error = std::nan("");
        }
        table.push_back(row);
    }
    estimate_orders(table, /*refining_down=*/false);
    return table;
}

}  // namespace sllg
