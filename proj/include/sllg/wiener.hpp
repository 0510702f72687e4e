#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace sllg {

/// SplitMix64 finalizer; the documented mixing function behind per-path seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of path i in an ensemble driven by master_seed. Common random numbers
/// across control candidates come from reusing the same master seed.
inline std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path_index) {
    return splitmix64(master_seed ^ splitmix64(path_index + 1));
}

/// Sampled increments of a scalar Wiener process: dW_i ~ N(0, dt), i.i.d.
struct WienerPath {
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> increments;

    std::size_t steps() const { return increments.size(); }
    double horizon() const { return dt * static_cast<double>(increments.size()); }
};

/// Deterministic generation from (seed, n_steps, dt) via mt19937_64.
inline WienerPath generate_wiener(std::uint64_t seed, std::size_t n_steps, double dt) {
    if (n_steps < 1) throw std::invalid_argument("generate_wiener: need n_steps >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("generate_wiener: need dt > 0");
    WienerPath p;
    p.dt = dt;
    p.seed = seed;
    p.increments.resize(n_steps);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(dt));
    for (double& dw : p.increments) dw = gauss(gen);
    return p;
}

/// Sum consecutive blocks of `factor` increments: the same Brownian path seen
/// on a grid `factor` times coarser. Used to run dt sweeps on one noise sample.
inline WienerPath coarsen(const WienerPath& fine, std::size_t factor) {
    if (factor == 0 || fine.steps() % factor != 0)
        throw std::invalid_argument("coarsen: refinement factor must divide the step count");
    WienerPath c;
    c.dt = fine.dt * static_cast<double>(factor);
    c.seed = fine.seed;
    c.increments.resize(fine.steps() / factor);
    for (std::size_t i = 0; i < c.increments.size(); ++i) {
        double s = 0.0;
        for (std::size_t r = 0; r < factor; ++r) s += fine.increments[i * factor + r];
        c.increments[i] = s;
    }
    return c;
}

}  // namespace sllg
