#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sllg/basis.hpp"
#include "sllg/control.hpp"
#include "sllg/integrator.hpp"

namespace sllg {

inline VectorField make_constant_field(const Basis& b, const Vec3& value) {
    VectorField f(b.node_count());
    for (Vec3& p : f.v) p = value;
    return f;
}

/// m0 preset "constant-up": (0,0,1) everywhere.
inline VectorField make_constant_up(const Basis& b) {
    return make_constant_field(b, {0.0, 0.0, 1.0});
}

/// m0 preset "winding": (cos f, sin f, 0) with f = a cos(q pi x); exactly
/// sphere-valued and Neumann-compatible for every amplitude and wavenumber.
inline VectorField make_winding(const Basis& b, double amplitude, int wavenumber = 1) {
    VectorField f(b.node_count());
    for (std::size_t j = 0; j < f.nodes(); ++j) {
        const double phase =
            amplitude * std::cos(wavenumber * std::numbers::pi * b.nodes[j]);
        f.v[j] = {std::cos(phase), std::sin(phase), 0.0};
    }
    return f;
}

struct OptimizeSection {
    int iterations = 60;
    int time_windows = 4;
    int space_modes = 2;
    double radius = 10.0;
    double a = 0.4;
    double c = 0.4;
    double A = 10.0;
    bool crn = true;
    int n_paths = 16;
    Vec3 target = {0.0, 0.0, 1.0};
};

struct SweepSection {
    std::string axis = "dt";                  // dt | n_modes
    std::vector<double> dt_values = {4e-3, 2e-3, 1e-3, 5e-4};
    std::vector<int> n_values = {4, 8, 16, 32};
    std::string metric = "reference";         // reference | drift | scheme
};

/// Everything a run needs; loadable from one JSON document, flag-overridable.
struct RunConfig {
    int n_modes = 8;
    int grid_points = 64;
    double T = 1.0;
    double dt = 1e-3;
    double alpha = 0.1;
    Vec3 h = {0.0, 0.0, 1.0};
    std::string m0_preset = "winding";  // constant-up | winding
    double m0_amplitude = std::numbers::pi / 2.0;
    int m0_wavenumber = 1;
    std::string scheme = "heun";  // ito | heun
    bool renormalize = false;
    bool cutoff = false;
    int n_paths = 1;
    std::uint64_t master_seed = 42;
    std::string out_dir = "out";
    int save_stride = 1;
    SweepSection sweep;
    OptimizeSection opt;
};

inline void validate(const RunConfig& c) {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("config: " + what);
    };
    if (c.n_modes < 1) fail("n_modes must be >= 1");
    if (c.grid_points < 4 * c.n_modes) fail("grid_points must be >= 4*n_modes");
    if (!(c.T >= 0.0)) fail("T must be >= 0");
    if (!(c.dt > 0.0)) fail("dt must be > 0");
    if (!(c.alpha > 0.0)) fail("alpha must be > 0");
    if (c.m0_preset != "constant-up" && c.m0_preset != "winding")
        fail("m0 preset must be constant-up or winding");
    if (c.scheme != "ito" && c.scheme != "heun") fail("scheme must be ito or heun");
    if (c.n_paths < 1) fail("paths must be >= 1");
    if (c.save_stride < 1) fail("save_stride must be >= 1");
    const double steps = c.T / c.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9) fail("T must be a multiple of dt");
    if (c.sweep.axis != "dt" && c.sweep.axis != "n_modes")
        fail("sweep axis must be dt or n_modes");
    if (c.opt.iterations < 0) fail("optimize.iterations must be >= 0");
    if (c.opt.time_windows < 1 || c.opt.space_modes < 1)
        fail("optimize windows/modes must be >= 1");
    if (c.opt.space_modes > c.n_modes) fail("optimize.space_modes must be <= n_modes");
    if (!(c.opt.radius > 0.0)) fail("optimize.radius must be > 0");
    if (c.opt.n_paths < 1) fail("optimize.paths must be >= 1");
}

inline std::size_t step_count(const RunConfig& c) {
    return static_cast<std::size_t>(std::llround(c.T / c.dt));
}

inline VectorField build_m0_field(const RunConfig& c, const Basis& b) {
    if (c.m0_preset == "constant-up") return make_constant_up(b);
    return make_winding(b, c.m0_amplitude, c.m0_wavenumber);
}

inline Vec3 vec3_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("config: vector values must be 3-element arrays");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json vec3_to_json(const Vec3& v) {
    return nlohmann::json::array({v.x, v.y, v.z});
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.n_modes = j.value("n_modes", c.n_modes);
    c.grid_points = j.value("grid_points", c.grid_points);
    c.T = j.value("T", c.T);
    c.dt = j.value("dt", c.dt);
    c.alpha = j.value("alpha", c.alpha);
    if (j.contains("h")) c.h = vec3_from_json(j.at("h"));
    if (j.contains("m0")) {
        const auto& m0 = j.at("m0");
        c.m0_preset = m0.value("preset", c.m0_preset);
        c.m0_amplitude = m0.value("amplitude", c.m0_amplitude);
        c.m0_wavenumber = m0.value("wavenumber", c.m0_wavenumber);
    }
    c.scheme = j.value("scheme", c.scheme);
    c.renormalize = j.value("renormalize", c.renormalize);
    c.cutoff = j.value("cutoff", c.cutoff);
    c.n_paths = j.value("paths", c.n_paths);
    c.master_seed = j.value("seed", c.master_seed);
    c.out_dir = j.value("out", c.out_dir);
    c.save_stride = j.value("save_stride", c.save_stride);
    if (j.contains("invariants")) {
        const auto& s = j.at("invariants");
        c.sweep.axis = s.value("axis", c.sweep.axis);
        c.sweep.metric = s.value("metric", c.sweep.metric);
        if (s.contains("dt_values"))
            c.sweep.dt_values = s.at("dt_values").get<std::vector<double>>();
        if (s.contains("n_values"))
            c.sweep.n_values = s.at("n_values").get<std::vector<int>>();
    }
    if (j.contains("optimize")) {
        const auto& o = j.at("optimize");
        c.opt.iterations = o.value("iterations", c.opt.iterations);
        c.opt.time_windows = o.value("time_windows", c.opt.time_windows);
        c.opt.space_modes = o.value("space_modes", c.opt.space_modes);
        c.opt.radius = o.value("radius", c.opt.radius);
        c.opt.a = o.value("a", c.opt.a);
        c.opt.c = o.value("c", c.opt.c);
        c.opt.A = o.value("A", c.opt.A);
        c.opt.crn = o.value("crn", c.opt.crn);
        c.opt.n_paths = o.value("paths", c.opt.n_paths);
        if (o.contains("target")) c.opt.target = vec3_from_json(o.at("target"));
    }
    return c;
}

inline nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["n_modes"] = c.n_modes;
    j["grid_points"] = c.grid_points;
    j["T"] = c.T;
    j["dt"] = c.dt;
    j["alpha"] = c.alpha;
    j["h"] = vec3_to_json(c.h);
    j["m0"] = {{"preset", c.m0_preset},
               {"amplitude", c.m0_amplitude},
               {"wavenumber", c.m0_wavenumber}};
    j["scheme"] = c.scheme;
    j["renormalize"] = c.renormalize;
    j["cutoff"] = c.cutoff;
    j["paths"] = c.n_paths;
    j["seed"] = c.master_seed;
    j["out"] = c.out_dir;
    j["save_stride"] = c.save_stride;
    j["invariants"] = {{"axis", c.sweep.axis},
                       {"metric", c.sweep.metric},
                       {"dt_values", c.sweep.dt_values},
                       {"n_values", c.sweep.n_values}};
    j["optimize"] = {{"iterations", c.opt.iterations},
                     {"time_windows", c.opt.time_windows},
                     {"space_modes", c.opt.space_modes},
                     {"radius", c.opt.radius},
                     {"a", c.opt.a},
                     {"c", c.opt.c},
                     {"A", c.opt.A},
                     {"crn", c.opt.crn},
                     {"paths", c.opt.n_paths},
                     {"target", vec3_to_json(c.opt.target)}};
    return j;
}

/// Assemble the simulation pieces a config describes. The basis must be the
/// one built from the same config and must outlive the result.
inline SimConfig build_sim_config(const RunConfig& c, const Basis& b) {
    SimConfig sim;
    sim.basis = &b;
    sim.params = LlgParams(c.alpha, make_constant_field(b, c.h), b, c.cutoff);
    sim.m0 = project(build_m0_field(c, b), b);
    sim.scheme = (c.scheme == "ito") ? Scheme::ito : Scheme::heun;
    sim.dt = c.dt;
    sim.n_steps = step_count(c);
    sim.renormalize = c.renormalize;
    sim.save_stride = static_cast<std::size_t>(c.save_stride);
    return sim;
}

}  // namespace sllg
