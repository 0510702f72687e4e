#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sllg/control.hpp"
#include "sllg/diagnostics.hpp"
#include "sllg/ensemble.hpp"
#include "sllg/integrator.hpp"

namespace sllg {

/// Shortest round-trippable decimal form; used for every CSV number so that
/// identical runs produce byte-identical files.
inline std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Rows (t, grid values of m) at the saved instants; 3(M+1) value columns.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Basis& b) {
    os << "t";
    for (std::size_t j = 0; j < b.node_count(); ++j)
        os << ",mx_" << j << ",my_" << j << ",mz_" << j;
    os << "\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        os << fmt_double(traj.times[i]);
        const VectorField f = synthesize(traj.states[i], b);
        for (const Vec3& p : f.v)
            os << "," << fmt_double(p.x) << "," << fmt_double(p.y) << "," << fmt_double(p.z);
        os << "\n";
    }
}

inline void write_sweep_csv(std::ostream& os, const SweepTable& table) {
    os << "value,error,est_order\n";
    for (const SweepRow& r : table)
        os << fmt_double(r.value) << "," << (r.blown_up ? "blow-up" : fmt_double(r.error))
           << "," << fmt_double(r.est_order) << "\n";
}

inline void write_trace_csv(std::ostream& os, const std::vector<SpsaIterate>& history) {
    os << "iteration,J,step_gain,perturbation\n";
    for (const SpsaIterate& it : history)
        os << it.iteration << "," << fmt_double(it.best_cost) << ","
           << fmt_double(it.step_gain) << "," << fmt_double(it.perturbation) << "\n";
}

inline nlohmann::json report_to_json(const InvariantReport& rep) {
    nlohmann::json j;
    j["l2_drift"] = rep.l2_drift;
    j["sphere_dev"] = rep.sphere_dev;
    j["h1_sup_sq"] = rep.h1_sup_sq;
    j["grad_l4_integral"] = rep.grad_l4_integral;
    j["a1_integral"] = rep.a1_integral;
    j["initial_energy"] = rep.initial_energy;
    j["energy"] = rep.energy;
    j["identity_residual"] = rep.identity_residual;
    j["finite"] = rep.finite_ok;
    j["pass"] = {{"l2", rep.pass_l2},
                 {"sphere", rep.pass_sphere},
                 {"h1", rep.pass_h1},
                 {"regularity", rep.pass_regularity},
                 {"identity", rep.pass_identity}};
    j["thresholds"] = {{"l2_drift", rep.thresholds.l2_drift},
                       {"sphere_dev", rep.thresholds.sphere_dev},
                       {"h1_sup_sq", rep.thresholds.h1_sup_sq},
                       {"grad_l4_integral", rep.thresholds.grad_l4_integral},
                       {"a1_integral", rep.thresholds.a1_integral},
                       {"identity_residual", rep.thresholds.identity_residual}};
    return j;
}

inline nlohmann::json stats_to_json(const EnsembleStats& st) {
    nlohmann::json j;
    j["paths"] = st.n_paths;
    j["failures"] = st.failures;
    j["seed"] = st.master_seed;
    j["mean_l2_drift"] = st.mean_l2_drift;
    j["mean_sup_h1_sq"] = st.mean_sup_h1_sq;
    j["mean_sphere_dev"] = st.mean_sphere_dev;
    j["mean_int_mxlap_sq"] = st.mean_int_mxlap_sq;
    j["mean_int_grad_l4"] = st.mean_int_grad_l4;
    j["mean_int_a1_sq"] = st.mean_int_a1_sq;
    nlohmann::json per = nlohmann::json::array();
    for (const PathStats& p : st.per_path) {
        per.push_back({{"seed", p.seed},
                       {"blown_up", p.blown_up},
                       {"l2_drift", p.l2_drift},
                       {"sup_h1_sq", p.sup_h1_sq},
                       {"max_sphere_dev", p.max_sphere_dev},
                       {"int_mxlap_sq", p.int_mxlap_sq},
                       {"int_grad_l4", p.int_grad_l4},
                       {"int_a1_sq", p.int_a1_sq}});
    }
    j["per_path"] = per;
    return j;
}

inline nlohmann::json control_to_json(const ControlParam& p) {
    nlohmann::json j;
    j["time_windows"] = p.time_windows;
    j["space_modes"] = p.space_modes;
    j["radius"] = p.radius;
    nlohmann::json coeff = nlohmann::json::array();
    for (const Vec3& c : p.coeff) coeff.push_back({c.x, c.y, c.z});
    j["coeff"] = coeff;
    return j;
}

inline ControlParam control_from_json(const nlohmann::json& j) {
    ControlParam p(j.at("time_windows").get<int>(), j.at("space_modes").get<int>(),
                   j.at("radius").get<double>());
    const auto& coeff = j.at("coeff");
    if (coeff.size() != p.coeff.size())
        throw std::invalid_argument("control: coefficient count mismatch");
    for (std::size_t i = 0; i < p.coeff.size(); ++i)
        p.coeff[i] = {coeff[i][0].get<double>(), coeff[i][1].get<double>(),
                      coeff[i][2].get<double>()};
    return p;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << content;
}

}  // namespace sllg
