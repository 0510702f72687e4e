#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "sllg/integrator.hpp"
#include "sllg/norms.hpp"

namespace sllg {

/// Worker cap: LLG_THREADS when set, hardware concurrency otherwise, never
/// more than one worker per job. The reduction order is fixed by path index,
/// so results do not depend on the cap.
inline std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LLG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

template <typename Fn>
inline void parallel_for_index(std::size_t jobs, Fn&& fn) {
    const std::size_t workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn] {
            for (std::size_t i = w; i < jobs; i += workers) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

/// Trajectory summary tracked per ensemble member.
struct PathStats {
    std::uint64_t seed = 0;
    bool blown_up = false;
    double l2_drift = 0.0;          // max_t | |m(t)|^2_{L2} - |m(0)|^2_{L2} |
    double sup_h1_sq = 0.0;         // sup_t |m(t)|^2_{H1}
    double max_sphere_dev = 0.0;    // max_t max_x | |m| - 1 |
    double int_mxlap_sq = 0.0;      // int |m x Dm|^2_{L2} dt
    double int_grad_l4 = 0.0;       // int |grad m|^4_{L4} dt
    double int_a1_sq = 0.0;         // int |(I - D) m|^2_{L2} dt
};

struct EnsembleStats {
    std::size_t n_paths = 0;
    std::size_t failures = 0;
    std::uint64_t master_seed = 0;
    double mean_l2_drift = 0.0;
    double mean_sup_h1_sq = 0.0;
    double mean_sphere_dev = 0.0;
    double mean_int_mxlap_sq = 0.0;
    double mean_int_grad_l4 = 0.0;
    double mean_int_a1_sq = 0.0;
    std::vector<PathStats> per_path;
};

inline PathStats summarize_path(const Trajectory& traj, const Basis& b) {
    PathStats s;
    s.seed = traj.path.seed;
    s.blown_up = traj.blown_up;
    const double l2_sq_0 = norm_l2_sq(traj.states.front());

    std::vector<double> mxlap_sq(traj.states.size());
    std::vector<double> grad_l4(traj.states.size());
    std::vector<double> a1_sq(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const GalerkinState& m = traj.states[i];
        s.l2_drift = std::max(s.l2_drift, std::abs(norm_l2_sq(m) - l2_sq_0));
        s.sup_h1_sq = std::max(s.sup_h1_sq, h1_norm_sq(m, b));
        const VectorField mg = synthesize(m, b);
        s.max_sphere_dev = std::max(s.max_sphere_dev, sphere_deviation(mg));
        const VectorField lap = synthesize(laplacian(m, b), b);
        mxlap_sq[i] = inner_l2(b, cross(mg, lap), cross(mg, lap));
        const VectorField grad = spatial_derivative(m, b);
        std::vector<double> g4(grad.nodes());
        for (std::size_t j = 0; j < grad.nodes(); ++j) {
            const double g2 = norm_sq(grad.v[j]);
            g4[j] = g2 * g2;
        }
        grad_l4[i] = integrate(b, g4);
        a1_sq[i] = a1_norm_sq(m, b);
    }
    // trapezoid in time over the saved instants
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
        const double w = 0.5 * (traj.times[i + 1] - traj.times[i]);
        s.int_mxlap_sq += w * (mxlap_sq[i] + mxlap_sq[i + 1]);
        s.int_grad_l4 += w * (grad_l4[i] + grad_l4[i + 1]);
        s.int_a1_sq += w * (a1_sq[i] + a1_sq[i + 1]);
    }
    return s;
}

/// Seeded ensemble run: path i uses path_seed(master_seed, i). Blown-up paths
/// are excluded from the means and counted in `failures`.
inline EnsembleStats monte_carlo(const SimConfig& cfg, const ControlSchedule& control,
                                 std::size_t n_paths, std::uint64_t master_seed) {
    if (n_paths < 1) throw std::invalid_argument("monte_carlo: need n_paths >= 1");
    EnsembleStats stats;
    stats.n_paths = n_paths;
    stats.master_seed = master_seed;
    stats.per_path.resize(n_paths);

    const Basis& b = *cfg.basis;
    parallel_for_index(n_paths, [&](std::size_t i) {
        const WienerPath path = generate_wiener(path_seed(master_seed, i), cfg.n_steps, cfg.dt);
        stats.per_path[i] = summarize_path(integrate(cfg, control, path), b);
    });

    std::size_t ok = 0;
    for (const PathStats& p : stats.per_path) {
        if (p.blown_up) {
            ++stats.failures;
            continue;
        }
        ++ok;
        stats.mean_l2_drift += p.l2_drift;
        stats.mean_sup_h1_sq += p.sup_h1_sq;
        stats.mean_sphere_dev += p.max_sphere_dev;
        stats.mean_int_mxlap_sq += p.int_mxlap_sq;
        stats.mean_int_grad_l4 += p.int_grad_l4;
        stats.mean_int_a1_sq += p.int_a1_sq;
    }
    if (ok > 0) {
        const double inv = 1.0 / static_cast<double>(ok);
        stats.mean_l2_drift *= inv;
        stats.mean_sup_h1_sq *= inv;
        stats.mean_sphere_dev *= inv;
        stats.mean_int_mxlap_sq *= inv;
        stats.mean_int_grad_l4 *= inv;
        stats.mean_int_a1_sq *= inv;
    }
    return stats;
}

}  // namespace sllg
