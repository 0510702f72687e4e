// Command-line front end: run one seeded simulation, a convergence sweep, or
// the cost-functional optimizer, and emit plot-ready CSV/JSON files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sllg/sllg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitBlowUp = 2;
constexpr int kExitOptimizerFailure = 3;

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> paths;
    std::optional<std::string> scheme;
};

sllg::RunConfig load_config(const CliOverrides& cli) {
    sllg::RunConfig cfg;
    if (!cli.config_path.empty()) {
        std::ifstream is(cli.config_path);
        if (!is) throw std::invalid_argument("config: cannot open " + cli.config_path);
        nlohmann::json j;
        is >> j;
        cfg = sllg::config_from_json(j);
    }
    if (cli.seed) cfg.master_seed = *cli.seed;
    if (cli.out) cfg.out_dir = *cli.out;
    if (cli.paths) cfg.n_paths = *cli.paths;
    if (cli.scheme) cfg.scheme = *cli.scheme;
    sllg::validate(cfg);
    return cfg;
}

void write_snapshot(const sllg::RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    sllg::write_text_file(cfg.out_dir + "/config.json",
                          sllg::config_to_json(cfg).dump(2) + "\n");
}

int cmd_simulate(const sllg::RunConfig& cfg) {
    write_snapshot(cfg);
    const sllg::Basis basis = sllg::build_basis(cfg.n_modes, cfg.grid_points);
    const sllg::SimConfig sim = sllg::build_sim_config(cfg, basis);

    const sllg::WienerPath path =
        sllg::generate_wiener(sllg::path_seed(cfg.master_seed, 0), sim.n_steps, cfg.dt);
    const sllg::Trajectory traj = sllg::integrate(sim, sllg::ControlSchedule{}, path);

    std::ostringstream csv;
    sllg::write_trajectory_csv(csv, traj, basis);
    sllg::write_text_file(cfg.out_dir + "/trajectory.csv", csv.str());

    const sllg::InvariantReport report = sllg::check_trajectory(traj, basis);
    sllg::write_text_file(cfg.out_dir + "/report.json",
                          sllg::report_to_json(report).dump(2) + "\n");

    if (cfg.n_paths > 1) {
        const sllg::EnsembleStats stats = sllg::monte_carlo(
            sim, sllg::ControlSchedule{}, static_cast<std::size_t>(cfg.n_paths),
            cfg.master_seed);
        sllg::write_text_file(cfg.out_dir + "/stats.json",
                              sllg::stats_to_json(stats).dump(2) + "\n");
        if (stats.failures > 0) {
            std::cerr << "simulate: " << stats.failures << " of " << stats.n_paths
                      << " paths blew up\n";
            return kExitBlowUp;
        }
    }
    if (traj.blown_up) {
        std::cerr << "simulate: blow-up at step " << traj.blowup_step << "\n";
        return kExitBlowUp;
    }
    std::cout << "simulate: wrote " << cfg.out_dir << "/trajectory.csv ("
              << traj.states.size() << " rows)\n";
    return kExitOk;
}

int cmd_invariants(const sllg::RunConfig& cfg) {
    write_snapshot(cfg);
    sllg::SweepTable table;
    if (cfg.sweep.axis == "dt") {
        const sllg::Basis basis = sllg::build_basis(cfg.n_modes, cfg.grid_points);
        const sllg::SimConfig sim = sllg::build_sim_config(cfg, basis);
        auto metric = sllg::SweepMetric::reference_distance;
        if (cfg.sweep.metric == "drift") metric = sllg::SweepMetric::l2_drift;
        if (cfg.sweep.metric == "scheme") metric = sllg::SweepMetric::scheme_distance;
        table = sllg::dt_sweep(sim, sllg::ControlSchedule{}, cfg.sweep.dt_values,
                               sllg::path_seed(cfg.master_seed, 0), cfg.T, metric);
    } else {
        sllg::NSweepSetup setup;
        setup.alpha = cfg.alpha;
        setup.h = cfg.h;
        setup.cutoff = cfg.cutoff;
        setup.scheme = (cfg.scheme == "ito") ? sllg::Scheme::ito : sllg::Scheme::heun;
        setup.dt = cfg.dt;
        setup.n_steps = sllg::step_count(cfg);
        setup.m0_builder = [&cfg](const sllg::Basis& b) {
            return sllg::build_m0_field(cfg, b);
        };
        table = sllg::n_sweep(setup, cfg.sweep.n_values, sllg::path_seed(cfg.master_seed, 0));
    }
    std::ostringstream csv;
    sllg::write_sweep_csv(csv, table);
    sllg::write_text_file(cfg.out_dir + "/sweep.csv", csv.str());

    bool any_blow_up = false;
    for (const sllg::SweepRow& r : table) any_blow_up = any_blow_up || r.blown_up;
    std::cout << "invariants: wrote " << cfg.out_dir << "/sweep.csv (" << table.size()
              << " rows)\n";
    return any_blow_up ? kExitBlowUp : kExitOk;
}

int cmd_optimize(const sllg::RunConfig& cfg) {
    write_snapshot(cfg);
    const sllg::Basis basis = sllg::build_basis(cfg.n_modes, cfg.grid_points);
    sllg::SimConfig sim = sllg::build_sim_config(cfg, basis);
    sim.save_stride = 1;

    const sllg::CostSpec spec =
        sllg::make_cost_spec(sllg::make_constant_field(basis, cfg.opt.target));
    sllg::ControlParam p0(cfg.opt.time_windows, cfg.opt.space_modes, cfg.opt.radius);

    sllg::SpsaConfig opt;
    opt.iterations = cfg.opt.iterations;
    opt.a = cfg.opt.a;
    opt.c = cfg.opt.c;
    opt.A = cfg.opt.A;
    opt.crn = cfg.opt.crn;
    opt.n_paths = static_cast<std::size_t>(cfg.opt.n_paths);
    opt.master_seed = cfg.master_seed;
    opt.perturbation_seed = sllg::splitmix64(cfg.master_seed ^ 0x0b5e55ULL);

    const sllg::SpsaResult result = sllg::optimize_spsa(p0, spec, sim, opt);

    std::ostringstream csv;
    sllg::write_trace_csv(csv, result.history);
    sllg::write_text_file(cfg.out_dir + "/trace.csv", csv.str());
    nlohmann::json best = sllg::control_to_json(result.best);
    best["J"] = result.best_report.total;
    best["tracking"] = result.best_report.tracking;
    best["control"] = result.best_report.control;
    best["terminal"] = result.best_report.terminal;
    sllg::write_text_file(cfg.out_dir + "/best_control.json", best.dump(2) + "\n");

    if (result.failed) {
        std::cerr << "optimize: no finite cost evaluation\n";
        return kExitOptimizerFailure;
    }
    std::cout << "optimize: best J = " << result.best_report.total << " after "
              << cfg.opt.iterations << " iterations\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-Galerkin simulator and control optimizer for the stochastic "
                 "Landau-Lifshitz-Gilbert equation on (0,1)"};
    app.require_subcommand(1);

    CliOverrides cli;
    app.add_option("--config", cli.config_path, "JSON config file");
    app.add_option("--seed", cli.seed, "master seed override");
    app.add_option("--out", cli.out, "output directory override");
    app.add_option("--paths", cli.paths, "Monte-Carlo path count override");
    app.add_option("--scheme", cli.scheme, "time stepper: ito | heun")
        ->check(CLI::IsMember({"ito", "heun"}));

    auto* sim = app.add_subcommand("simulate", "integrate one seeded trajectory");
    auto* inv = app.add_subcommand("invariants", "run a dt or n_modes convergence sweep");
    auto* opt = app.add_subcommand("optimize", "minimize the tracking cost with SPSA");

    CLI11_PARSE(app, argc, argv);

    try {
        const sllg::RunConfig cfg = load_config(cli);
        if (sim->parsed()) return cmd_simulate(cfg);
        if (inv->parsed()) return cmd_invariants(cfg);
        if (opt->parsed()) return cmd_optimize(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOptimizerFailure;
    }
    return kExitConfigError;
}
