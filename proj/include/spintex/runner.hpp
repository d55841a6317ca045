#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "spintex/config.hpp"
#include "spintex/experiment.hpp"
#include "spintex/export.hpp"
#include "spintex/integrator.hpp"
#include "spintex/observables.hpp"
#include "spintex/oracle.hpp"

namespace spintex {

enum class Command { simulate, texture, experiment, converge };

inline const char* command_name(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::texture: return "texture";
        case Command::experiment: return "experiment";
        default: return "converge";
    }
}

namespace detail {

struct EvolvedRun {
    SpinorField initial;
    SpinorField final;
    StepReport report;
};

inline EvolvedRun evolve_from_config(const SimulationConfig& cfg) {
    const SpatialGrid grid = make_grid(cfg.grid.z_min, cfg.grid.z_max, cfg.grid.n_points);
    EvolvedRun run{initial_state(grid), {}, {}};
    auto [fin, report] =
        evolve(run.initial, cfg.t_final, cfg.dt, cfg.gradient_strength, cfg.method);
    run.final = std::move(fin);
    run.report = report;
    return run;
}

inline nlohmann::json report_json(const StepReport& r) {
    // wall time intentionally excluded (byte-identical reruns)
    return {{"steps_taken", r.steps_taken},
            {"final_time", r.final_time},
            {"max_norm_drift", r.max_norm_drift}};
}

// L2 distance between the numerical plus component and the closed-form
// solution, rectangle rule over the grid.
inline double l2_error_vs_oracle(const SpinorField& state, double g) {
    double acc = 0.0;
    for (std::size_t k = 0; k < state.grid.n_points; ++k) {
        const Complex ref =
            oracle::exact_component(state.grid.z(k), state.time, g, oracle::Branch::plus);
        acc += std::norm(state.psi_plus[k] - ref);
    }
    return std::sqrt(acc * state.grid.dz);
}

inline std::vector<double> scan_centers(const ExperimentSpec& e) {
    std::vector<double> centers;
    for (double z = e.scan_min; z <= e.scan_max + 1e-12; z += e.scan_step) {
        centers.push_back(z);
    }
    return centers;
}

}  // namespace detail

/// Execute one CLI command: evolve per the config and write the exports for
/// that command into cfg.out_dir. Returns 0 on success; failures throw.
inline int run(const SimulationConfig& cfg, Command command) {
    validate(cfg);
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    nlohmann::json results;

    if (command == Command::converge) {
        std::vector<ConvergenceRow> rows;
        for (Method method : {Method::implicit, Method::spectral}) {
            for (int r = 0; r < cfg.converge.rungs; ++r) {
                const double dt = cfg.converge.dt_base / static_cast<double>(1 << r);
                const SpatialGrid grid = make_grid(cfg.grid.z_min, cfg.grid.z_max,
                                                   cfg.grid.n_points << r);
                auto [fin, report] =
                    evolve(initial_state(grid), cfg.t_final, dt, cfg.gradient_strength, method);
                rows.push_back({method_name(method), dt, grid.dz,
                                detail::l2_error_vs_oracle(fin, cfg.gradient_strength)});
            }
        }
        // ascending in the leading column; dt ascending within a method
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.method != b.method ? a.method < b.method : a.dt < b.dt;
        });
        write_convergence_csv(dir / "convergence.csv", rows);
        results["rungs_per_method"] = cfg.converge.rungs;
        write_metadata_json(dir / "metadata.json", cfg, command_name(command), results);
        return 0;
    }

    const detail::EvolvedRun run = detail::evolve_from_config(cfg);
    results["step_report"] = detail::report_json(run.report);

    if (command == Command::simulate || command == Command::texture) {
        write_wavefunction_csv(dir / "wavefunction_t0.csv", run.initial);
        write_wavefunction_csv(dir / "wavefunction_final.csv", run.final);
        results["observables_t0"] = observables_json(observables(run.initial, cfg.gradient_strength));
        results["observables_final"] =
            observables_json(observables(run.final, cfg.gradient_strength));
    }
    if (command == Command::texture) {
        const std::vector<BlochSample> samples = texture(run.final, cfg.texture_epsilon);
        write_texture_csv(dir / "texture.csv", samples);
        write_twist_csv(dir / "twist_profile.csv", twist_profile(samples));
    }
    if (command == Command::experiment) {
        const std::vector<double> centers = detail::scan_centers(cfg.experiment);
        const std::vector<ScanRow> rows =
            scan_hole(run.final, centers, cfg.experiment.half_width);
        write_scan_csv(dir / "scan.csv", rows);
        if (cfg.experiment.n_samples > 0) {
            std::mt19937_64 rng(cfg.experiment.seed);
            std::vector<ClicksRow> clicks;
            for (const ScanRow& row : rows) {
                if (!row.valid) continue;
                ConditionalState cond;
                cond.bloch = row.bloch;
                clicks.push_back({row.z_center, cfg.experiment.axis, cfg.experiment.n_samples,
                                  sample_clicks(cond, cfg.experiment.axis,
                                                cfg.experiment.n_samples, rng)});
            }
            write_clicks_csv(dir / "clicks.csv", clicks);
        }
        results["scan_rows"] = rows.size();
    }

    write_metadata_json(dir / "metadata.json", cfg, command_name(command), results);
    return 0;
}

}  // namespace spintex
