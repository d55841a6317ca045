#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spintex/bloch.hpp"
#include "spintex/grid.hpp"
#include "spintex/integrator.hpp"

namespace spintex {

struct GridSpec {
    double z_min = -16.0;
    double z_max = 16.0;
    std::uint64_t n_points = 8192;
};

struct ExperimentSpec {
    double scan_min = -6.0;
    double scan_max = 6.0;
    double scan_step = 0.5;
    double half_width = 0.25;
    Vec3 axis{0.0, 0.0, 1.0};
    std::int64_t n_samples = 0;  // 0 disables the click sampler
    std::uint64_t seed = 1;
};

struct ConvergeSpec {
    double dt_base = 4e-3;
    int rungs = 3;  // rung r: dt_base/2^r with n_points*2^r
};

struct SimulationConfig {
    GridSpec grid;
    double dt = 1e-4;
    double t_final = 1.0;
    double gradient_strength = 3.0;
    Method method = Method::spectral;
    double texture_epsilon = 1e-6;
    ExperimentSpec experiment;
    ConvergeSpec converge;
    std::string out_dir = "out";  // set by the CLI, never echoed into metadata
};

inline SimulationConfig default_config() { return {}; }

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

using Json = nlohmann::json;

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                                const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(prefix + key + ": unknown key");
        }
    }
}

inline double get_number(const Json& obj, const std::string& key, double fallback,
                         const std::string& prefix) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
        throw ConfigError(prefix + key + ": expected a number");
    }
    return obj[key].get<double>();
}

inline std::int64_t get_integer(const Json& obj, const std::string& key, std::int64_t fallback,
                                const std::string& prefix) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) {
        throw ConfigError(prefix + key + ": expected an integer");
    }
    return obj[key].get<std::int64_t>();
}

inline std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

}  // namespace detail

inline void validate(const SimulationConfig& cfg) {
    try {
        make_grid(cfg.grid.z_min, cfg.grid.z_max, cfg.grid.n_points);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    if (!(cfg.dt > 0.0)) throw ConfigError("dt: must be > 0");
    if (!(cfg.t_final >= 0.0)) throw ConfigError("t_final: must be >= 0");
    if (!(cfg.texture_epsilon > 0.0)) throw ConfigError("texture_epsilon: must be > 0");
    if (!(cfg.experiment.half_width > 0.0)) throw ConfigError("experiment.half_width: must be > 0");
    if (!(cfg.experiment.scan_step > 0.0)) throw ConfigError("experiment.scan_step: must be > 0");
    if (cfg.experiment.scan_min > cfg.experiment.scan_max) {
        throw ConfigError("experiment.scan_min: must not exceed experiment.scan_max");
    }
    if (cfg.experiment.n_samples < 0) throw ConfigError("experiment.n_samples: must be >= 0");
    if (std::abs(norm(cfg.experiment.axis) - 1.0) > 1e-9) {
        throw ConfigError("experiment.axis: must be a unit vector");
    }
    if (!(cfg.converge.dt_base > 0.0)) throw ConfigError("converge.dt_base: must be > 0");
    if (cfg.converge.rungs < 1 || cfg.converge.rungs > 8) {
        throw ConfigError("converge.rungs: must be between 1 and 8");
    }
}

/// Parse a JSON config document. Absent keys take defaults; unknown keys and
/// type mismatches are rejected with the offending field named.
inline SimulationConfig parse_config(const std::string& text) {
    using detail::Json;
    SimulationConfig cfg;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return cfg;  // empty document: full defaults
    }
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config parse error at line " +
                          std::to_string(detail::line_of_byte(text, e.byte)) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    detail::reject_unknown_keys(
        doc,
        {"grid", "dt", "t_final", "gradient_strength", "method", "texture_epsilon", "experiment",
         "converge"},
        "");

    if (doc.contains("grid")) {
        const Json& g = doc["grid"];
        if (!g.is_object()) throw ConfigError("grid: expected an object");
        detail::reject_unknown_keys(g, {"z_min", "z_max", "n_points"}, "grid.");
        cfg.grid.z_min = detail::get_number(g, "z_min", cfg.grid.z_min, "grid.");
        cfg.grid.z_max = detail::get_number(g, "z_max", cfg.grid.z_max, "grid.");
        const std::int64_t n = detail::get_integer(
            g, "n_points", static_cast<std::int64_t>(cfg.grid.n_points), "grid.");
        if (n <= 0) throw ConfigError("grid.n_points: must be positive");
        cfg.grid.n_points = static_cast<std::uint64_t>(n);
    }
    cfg.dt = detail::get_number(doc, "dt", cfg.dt, "");
    cfg.t_final = detail::get_number(doc, "t_final", cfg.t_final, "");
    cfg.gradient_strength = detail::get_number(doc, "gradient_strength", cfg.gradient_strength, "");
    cfg.texture_epsilon = detail::get_number(doc, "texture_epsilon", cfg.texture_epsilon, "");
    if (doc.contains("method")) {
        if (!doc["method"].is_string()) throw ConfigError("method: expected a string");
        const std::string m = doc["method"].get<std::string>();
        if (m == "spectral") {
            cfg.method = Method::spectral;
        } else if (m == "implicit") {
            cfg.method = Method::implicit;
        } else {
            throw ConfigError("method: must be \"spectral\" or \"implicit\", got \"" + m + "\"");
        }
    }
    if (doc.contains("experiment")) {
        const Json& e = doc["experiment"];
        if (!e.is_object()) throw ConfigError("experiment: expected an object");
        detail::reject_unknown_keys(
            e, {"scan_min", "scan_max", "scan_step", "half_width", "axis", "n_samples", "seed"},
            "experiment.");
        cfg.experiment.scan_min =
            detail::get_number(e, "scan_min", cfg.experiment.scan_min, "experiment.");
        cfg.experiment.scan_max =
            detail::get_number(e, "scan_max", cfg.experiment.scan_max, "experiment.");
        cfg.experiment.scan_step =
            detail::get_number(e, "scan_step", cfg.experiment.scan_step, "experiment.");
        cfg.experiment.half_width =
            detail::get_number(e, "half_width", cfg.experiment.half_width, "experiment.");
        cfg.experiment.n_samples =
            detail::get_integer(e, "n_samples", cfg.experiment.n_samples, "experiment.");
        if (e.contains("seed")) {
            if (!e["seed"].is_number_unsigned() && !e["seed"].is_number_integer()) {
                throw ConfigError("experiment.seed: expected an integer");
            }
            cfg.experiment.seed = e["seed"].get<std::uint64_t>();
        }
        if (e.contains("axis")) {
            if (!e["axis"].is_array() || e["axis"].size() != 3) {
                throw ConfigError("experiment.axis: expected an array of 3 numbers");
            }
            for (int i = 0; i < 3; ++i) {
                if (!e["axis"][i].is_number()) {
                    throw ConfigError("experiment.axis: expected an array of 3 numbers");
                }
                cfg.experiment.axis[static_cast<std::size_t>(i)] = e["axis"][i].get<double>();
            }
        }
    }
    if (doc.contains("converge")) {
        const Json& c = doc["converge"];
        if (!c.is_object()) throw ConfigError("converge: expected an object");
        detail::reject_unknown_keys(c, {"dt_base", "rungs"}, "converge.");
        cfg.converge.dt_base = detail::get_number(c, "dt_base", cfg.converge.dt_base, "converge.");
        const std::int64_t rungs =
            detail::get_integer(c, "rungs", cfg.converge.rungs, "converge.");
        cfg.converge.rungs = static_cast<int>(rungs);
    }
    validate(cfg);
    return cfg;
}

}  // namespace spintex
