#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "sllg/ensemble.hpp"
#include "sllg/integrator.hpp"
#include "sllg/norms.hpp"

namespace sllg {

/// Finite control family u(t,x) = sum_{jk} c_jk phi_j(t) e_k(x), with phi_j the
/// indicators of J_t equal time windows. `radius` is the admissibility bound K
/// on int_0^T |u|^2_{L2} dt.
struct ControlParam {
    int time_windows = 4;
    int space_modes = 2;
    double radius = 10.0;
    std::vector<Vec3> coeff;  // [j * space_modes + k]

    ControlParam() = default;
    ControlParam(int jt, int jx, double K)
        : time_windows(jt), space_modes(jx), radius(K),
          coeff(static_cast<std::size_t>(jt) * static_cast<std::size_t>(jx)) {
        if (jt < 1 || jx < 1) throw std::invalid_argument("ControlParam: need J_t, J_x >= 1");
        if (!(K > 0.0)) throw std::invalid_argument("ControlParam: need K > 0");
    }

    Vec3& at(int j, int k) { return coeff[static_cast<std::size_t>(j) * space_modes + k]; }
    const Vec3& at(int j, int k) const {
        return coeff[static_cast<std::size_t>(j) * space_modes + k];
    }
};

/// int_0^T |u|^2_{L2} dt in closed form: the e_k are orthonormal, so each
/// window contributes (T/J_t) sum_k |c_jk|^2.
inline double control_energy(const ControlParam& p, double horizon) {
    double s = 0.0;
    for (const Vec3& c : p.coeff) s += norm_sq(c);
    return s * horizon / static_cast<double>(p.time_windows);
}

/// Scale the whole coefficient tensor so the control energy fits under the
/// admissibility radius; identity when already admissible.
inline ControlParam admissibility_project(const ControlParam& p, double horizon) {
    const double e = control_energy(p, horizon);
    if (e <= p.radius) return p;
    ControlParam out = p;
    const double s = std::sqrt(p.radius / e);
    for (Vec3& c : out.coeff) c *= s;
    return out;
}

/// Sample the control family on the grid, one field per time window.
inline ControlSchedule realize_control(const ControlParam& p, const Basis& b, double horizon) {
    if (p.space_modes > b.n_modes)
        throw std::invalid_argument("realize_control: more space modes than basis modes");
    std::vector<VectorField> windows;
    windows.reserve(p.time_windows);
    for (int j = 0; j < p.time_windows; ++j) {
        GalerkinState s(b.n_modes);
        for (int k = 0; k < p.space_modes; ++k) s.c[k] = p.at(j, k);
        windows.push_back(synthesize(s, b));
    }
    return ControlSchedule(std::move(windows), horizon);
}

/// Target and terminal cost. The desired state is a fixed sphere-valued field,
/// constant in time; the terminal cost is the squared L^2 distance to it.
struct CostSpec {
    VectorField target;
    double sphere_tolerance = 1e-8;
};

inline CostSpec make_cost_spec(const VectorField& target, double tol = 1e-8) {
    if (sphere_deviation(target) > tol)
        throw std::invalid_argument("CostSpec: target must be sphere-valued");
    return CostSpec{target, tol};
}

struct CostReport {
    double total = 0.0;      // tracking + control + terminal
    double tracking = 0.0;   // E int |m - mbar|^2_{H1} dt
    double control = 0.0;    // int |u|^2_{L2} dt
    double terminal = 0.0;   // E |m(T) - mbar|^2_{L2}
    std::size_t n_paths = 0;
    std::size_t failures = 0;
    std::uint64_t master_seed = 0;

    bool valid() const { return failures < n_paths && std::isfinite(total); }
};

/// Monte-Carlo estimate of the cost functional over seeded paths; path i uses
/// path_seed(master_seed, i), so candidates compared under one master seed see
/// common random numbers. Blown-up paths are dropped from the average and
/// counted.
inline CostReport evaluate_cost(const ControlParam& p, const CostSpec& spec,
                                const SimConfig& sim, std::size_t n_paths,
                                std::uint64_t master_seed) {
    const Basis& b = *sim.basis;
    const double horizon = sim.dt * static_cast<double>(sim.n_steps);
    const ControlSchedule schedule = realize_control(p, b, horizon);
    const GalerkinState target = project(spec.target, b);

    struct PathCost {
        double tracking = 0.0;
        double terminal = 0.0;
        bool blown_up = false;
    };
    std::vector<PathCost> costs(n_paths);
    parallel_for_index(n_paths, [&](std::size_t i) {
        const WienerPath path = generate_wiener(path_seed(master_seed, i), sim.n_steps, sim.dt);
        const Trajectory traj = integrate(sim, schedule, path);
        PathCost pc;
        pc.blown_up = traj.blown_up;
        if (!pc.blown_up) {
            std::vector<double> h1(traj.states.size());
            for (std::size_t s = 0; s < traj.states.size(); ++s)
                h1[s] = h1_norm_sq(traj.states[s] - target, b);
            for (std::size_t s = 0; s + 1 < traj.states.size(); ++s)
                pc.tracking += 0.5 * (traj.times[s + 1] - traj.times[s]) * (h1[s] + h1[s + 1]);
            pc.terminal = norm_l2_sq(traj.final_state() - target);
        }
        costs[i] = pc;
    });

    CostReport rep;
    rep.n_paths = n_paths;
    rep.master_seed = master_seed;
    std::size_t ok = 0;
    for (const PathCost& pc : costs) {
        if (pc.blown_up) {
            ++rep.failures;
            continue;
        }
        ++ok;
        rep.tracking += pc.tracking;
        rep.terminal += pc.terminal;
    }
    if (ok > 0) {
        rep.tracking /= static_cast<double>(ok);
        rep.terminal /= static_cast<double>(ok);
    } else {
        rep.tracking = rep.terminal = std::nan("");
    }
    rep.control = control_energy(p, horizon);
    rep.total = rep.tracking + rep.control + rep.terminal;
    return rep;
}

struct SpsaConfig {
    int iterations = 60;
    double a = 0.4;          // step-size gain
    double c = 0.4;          // perturbation gain
    double A = 10.0;         // step-size stability offset
    double alpha_exp = 0.602;
    double gamma_exp = 0.101;
    bool crn = true;         // reuse one master seed for every evaluation
    std::uint64_t perturbation_seed = 1;
    std::size_t n_paths = 16;
    std::uint64_t master_seed = 0;
    // Scalar degrees of freedom the search may move, one flag per coefficient
    // component in (x,y,z)-major order; empty means all of them. Lets the
    // optimizer be confined to a low-dimensional sub-family.
    std::vector<std::uint8_t> component_mask;
};

struct SpsaIterate {
    int iteration = 0;
    double best_cost = 0.0;
    double step_gain = 0.0;
    double perturbation = 0.0;
};

struct SpsaResult {
    ControlParam best;
    CostReport best_report;
    std::vector<SpsaIterate> history;
    bool failed = false;  // no finite evaluation at all
};

/// Simultaneous-perturbation search with greedy acceptance: candidate steps
/// are taken from a two-sided Bernoulli gradient estimate, projected into the
/// admissible ball, and kept only when the (common-random-number) cost
/// improves, so the accepted-cost sequence is non-increasing. An iterate whose
/// evaluations all blow up is rejected and the perturbation scale halved.
inline SpsaResult optimize_spsa(const ControlParam& p0, const CostSpec& spec,
                                const SimConfig& sim, const SpsaConfig& opt) {
    const double horizon = sim.dt * static_cast<double>(sim.n_steps);
    std::mt19937_64 gen(opt.perturbation_seed);
    std::bernoulli_distribution coin(0.5);

    auto eval = [&](const ControlParam& p, int iter) {
        const std::uint64_t seed =
            opt.crn ? opt.master_seed
                    : splitmix64(opt.master_seed ^ static_cast<std::uint64_t>(iter));
        return evaluate_cost(p, spec, sim, opt.n_paths, seed);
    };

    SpsaResult res;
    res.best = admissibility_project(p0, horizon);
    res.best_report = eval(res.best, 0);
    res.failed = !res.best_report.valid();
    res.history.push_back({0, res.best_report.total, 0.0, 0.0});

    double c_base = opt.c;
    const std::size_t dim = res.best.coeff.size() * 3;
    if (!opt.component_mask.empty() && opt.component_mask.size() != dim)
        throw std::invalid_argument("optimize_spsa: component mask size mismatch");
    auto movable = [&](std::size_t i) {
        return opt.component_mask.empty() || opt.component_mask[i] != 0;
    };
    std::vector<double> delta(dim);

    for (int it = 1; it <= opt.iterations; ++it) {
        const double ak = opt.a / std::pow(static_cast<double>(it) + opt.A, opt.alpha_exp);
        const double ck = c_base / std::pow(static_cast<double>(it), opt.gamma_exp);
        for (std::size_t i = 0; i < dim; ++i)
            delta[i] = movable(i) ? (coin(gen) ? 1.0 : -1.0) : 0.0;

        auto shifted = [&](double sign) {
            ControlParam q = res.best;
            for (std::size_t i = 0; i < q.coeff.size(); ++i) {
                q.coeff[i].x += sign * ck * delta[3 * i];
                q.coeff[i].y += sign * ck * delta[3 * i + 1];
                q.coeff[i].z += sign * ck * delta[3 * i + 2];
            }
            return admissibility_project(q, horizon);
        };
        const CostReport plus = eval(shifted(+1.0), it);
        const CostReport minus = eval(shifted(-1.0), it);
        if (!plus.valid() || !minus.valid()) {
            c_base *= 0.5;
            res.history.push_back({it, res.best_report.total, ak, ck});
            continue;
        }

        const double diff = plus.total - minus.total;
        ControlParam cand = res.best;
        auto update = [&](double& coord, std::size_t i) {
            if (movable(i)) coord -= ak * diff / (2.0 * ck * delta[i]);
        };
        for (std::size_t i = 0; i < cand.coeff.size(); ++i) {
            update(cand.coeff[i].x, 3 * i);
            update(cand.coeff[i].y, 3 * i + 1);
            update(cand.coeff[i].z, 3 * i + 2);
        }
        cand = admissibility_project(cand, horizon);
        const CostReport cand_report = eval(cand, it);
        if (cand_report.valid() &&
            (res.failed || cand_report.total <= res.best_report.total)) {
            res.best = cand;
            res.best_report = cand_report;
            res.failed = false;
        }
        res.history.push_back({it, res.best_report.total, ak, ck});
    }
    return res;
}

}  // namespace sllg
