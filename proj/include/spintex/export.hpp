#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spintex/bloch.hpp"
#include "spintex/config.hpp"
#include "spintex/experiment.hpp"
#include "spintex/integrator.hpp"
#include "spintex/observables.hpp"
#include "spintex/spinor_field.hpp"
#include "spintex/version.hpp"

namespace spintex {

// Column schemas; tests pin these strings, keep them in sync with the README.
inline constexpr const char* kWavefunctionHeader =
    "z,re_plus,im_plus,abs2_plus,re_minus,im_minus,abs2_minus";
inline constexpr const char* kTextureHeader = "z,s1,s2,s3,weight,reliable";
inline constexpr const char* kTwistHeader = "z,phi,theta";
inline constexpr const char* kScanHeader = "z_center,passage_probability,s1,s2,s3,purity";
inline constexpr const char* kClicksHeader = "z_center,axis1,axis2,axis3,n_samples,n_up";
inline constexpr const char* kConvergenceHeader = "method,dt,dz,l2_error_vs_oracle";

/// 17 significant digits: lossless round-trip for IEEE doubles.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file " + path.string());
    }
    return out;
}

}  // namespace detail

inline void write_wavefunction_csv(const std::filesystem::path& path, const SpinorField& state) {
    auto out = detail::open_out(path);
    out << kWavefunctionHeader << '\n';
    for (std::size_t k = 0; k < state.grid.n_points; ++k) {
        const Complex p = state.psi_plus[k];
        const Complex m = state.psi_minus[k];
        out << format_real(state.grid.z(k)) << ',' << format_real(p.real()) << ','
            << format_real(p.imag()) << ',' << format_real(std::norm(p)) << ','
            << format_real(m.real()) << ',' << format_real(m.imag()) << ','
            << format_real(std::norm(m)) << '\n';
    }
}

inline void write_texture_csv(const std::filesystem::path& path,
                              const std::vector<BlochSample>& samples) {
    auto out = detail::open_out(path);
    out << kTextureHeader << '\n';
    for (const BlochSample& s : samples) {
        out << format_real(s.z) << ',' << format_real(s.s[0]) << ',' << format_real(s.s[1]) << ','
            << format_real(s.s[2]) << ',' << format_real(s.weight) << ',' << (s.reliable ? 1 : 0)
            << '\n';
    }
}

inline void write_twist_csv(const std::filesystem::path& path, const TwistProfile& profile) {
    auto out = detail::open_out(path);
    out << kTwistHeader << '\n';
    for (std::size_t i = 0; i < profile.z.size(); ++i) {
        out << format_real(profile.z[i]) << ',' << format_real(profile.azimuth[i]) << ','
            << format_real(profile.polar[i]) << '\n';
    }
}

inline void write_scan_csv(const std::filesystem::path& path, const std::vector<ScanRow>& rows) {
    auto out = detail::open_out(path);
    out << kScanHeader << '\n';
    for (const ScanRow& r : rows) {
        out << format_real(r.z_center) << ',';
        if (r.valid) {
            out << format_real(r.passage_probability) << ',' << format_real(r.bloch[0]) << ','
                << format_real(r.bloch[1]) << ',' << format_real(r.bloch[2]) << ','
                << format_real(r.purity);
        } else {
            out << ",,,,";  // undefined conditional state: empty, not fabricated
        }
        out << '\n';
    }
}

struct ClicksRow {
    double z_center;
    Vec3 axis;
    std::int64_t n_samples;
    std::int64_t n_up;
};

inline void write_clicks_csv(const std::filesystem::path& path,
                             const std::vector<ClicksRow>& rows) {
    auto out = detail::open_out(path);
    out << kClicksHeader << '\n';
    for (const ClicksRow& r : rows) {
        out << format_real(r.z_center) << ',' << format_real(r.axis[0]) << ','
            << format_real(r.axis[1]) << ',' << format_real(r.axis[2]) << ',' << r.n_samples << ','
            << r.n_up << '\n';
    }
}

struct ConvergenceRow {
    std::string method;
    double dt;
    double dz;
    double l2_error_vs_oracle;
};

inline void write_convergence_csv(const std::filesystem::path& path,
                                  const std::vector<ConvergenceRow>& rows) {
    auto out = detail::open_out(path);
    out << kConvergenceHeader << '\n';
    for (const ConvergenceRow& r : rows) {
        out << r.method << ',' << format_real(r.dt) << ',' << format_real(r.dz) << ','
            << format_real(r.l2_error_vs_oracle) << '\n';
    }
}

inline nlohmann::json config_json(const SimulationConfig& cfg) {
    // out_dir is deliberately omitted: metadata must be byte-identical for
    // identical physics configs regardless of where the run lands.
    nlohmann::json j;
    j["grid"] = {{"z_min", cfg.grid.z_min},
                 {"z_max", cfg.grid.z_max},
                 {"n_points", cfg.grid.n_points}};
    j["dt"] = cfg.dt;
    j["t_final"] = cfg.t_final;
    j["gradient_strength"] = cfg.gradient_strength;
    j["method"] = method_name(cfg.method);
    j["texture_epsilon"] = cfg.texture_epsilon;
    j["experiment"] = {{"scan_min", cfg.experiment.scan_min},
                       {"scan_max", cfg.experiment.scan_max},
                       {"scan_step", cfg.experiment.scan_step},
                       {"half_width", cfg.experiment.half_width},
                       {"axis", cfg.experiment.axis},
                       {"n_samples", cfg.experiment.n_samples},
                       {"seed", cfg.experiment.seed}};
    j["converge"] = {{"dt_base", cfg.converge.dt_base}, {"rungs", cfg.converge.rungs}};
    return j;
}

inline nlohmann::json observables_json(const Observables& o) {
    return {{"mean_z_plus", o.mean_z_plus},   {"mean_z_minus", o.mean_z_minus},
            {"mean_p_plus", o.mean_p_plus},   {"mean_p_minus", o.mean_p_minus},
            {"energy_plus", o.energy_plus},   {"energy_minus", o.energy_minus},
            {"norm_plus", o.norm_plus},       {"norm_minus", o.norm_minus}};
}

/// Sidecar metadata: config echo, scheme description, versions, plus
/// command-specific results. No timestamps or wall times, so repeated runs
/// with one config produce identical bytes.
inline void write_metadata_json(const std::filesystem::path& path, const SimulationConfig& cfg,
                                const std::string& command, const nlohmann::json& results) {
    nlohmann::json j;
    j["tool"] = {{"name", "spintex"}, {"version", kVersion}};
    j["format_version"] = kExportFormatVersion;
    j["command"] = command;
    j["config"] = config_json(cfg);
    j["scheme"] = {
        {"spectral", "Strang splitting (potential half-step, exact kinetic phase in "
                     "transform space, potential half-step), periodic boundaries"},
        {"implicit", "Crank-Nicolson with second-order central differences, Dirichlet-zero "
                     "boundaries, prefactored Thomas solves"},
        {"wavenumber_layout", "k_j = 2*pi*j/(N*dz) for j < N/2, then negative frequencies"}};
    j["results"] = results;
    auto out = detail::open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace spintex
