#pragma once

// Run configuration. The file format is JSON:
//
//   {
//     "system":  {"kind": "HO", "omega": 1.0},
//     "initial": {"rep": "xp", "x0": 1.0, "p0": 0.0, "r": 0.0, "theta": 0.0},
//     "time":    {"tau_max": 6.283185307179586, "dt_output": 0.05},
//     "oracle":  {"enabled": false, "grid_n": 4096, "domain": 30.0, "dt": 0.001},
//     "output":  {"path": "run", "format": "csv", "plot": false}
//   }
//
// A custom system gives "g2" (and optionally "g1", "g0") as expressions in t,
// plus "C1_0"/"C2_0" when the driving constants are needed. "numeric": true
// forces the integrated basis for a catalog system.

#include "sqz/model.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace sqz::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class InitialStyle { xp, alpha_z, z_alpha };

std::string_view to_string(InitialStyle style);
InitialStyle parse_initial_style(std::string_view name);

struct SystemBlock {
    SystemKind kind = SystemKind::HO;
    SystemParams params;
    std::optional<IntegrationConstants> constants;
    bool numeric = false;
};

// Keys a style does not use must stay unset; validate() enforces it.
struct InitialBlock {
    std::optional<InitialStyle> rep;
    std::optional<double> x0, p0, alpha, delta;
    double r = 0.0;
    double theta = 0.0;

    InitialStyle style() const;
};

struct TimeBlock {
    double tau_max = 10.0;
    double dt_output = 0.1;
};

struct OracleBlock {
    bool enabled = false;
    std::size_t grid_n = 4096;
    double domain = 30.0;  // half width
    double dt = 1e-3;
};

enum class Format { csv, json };

struct OutputBlock {
    std::string path = "trajectory";
    Format format = Format::csv;
    bool plot = false;
};

struct RunConfig {
    SystemBlock system;
    InitialBlock initial;
    TimeBlock time;
    OracleBlock oracle;
    OutputBlock output;

    // Throws ConfigError.
    void validate() const;
};

RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

SystemSpec build_system(const SystemBlock& block);
Model build_model(const RunConfig& config);

// Initial phase point and squeeze described by the initial block.
struct ResolvedInitial {
    InitialPhasePoint point;
    Squeeze z;
    // Absent when the driving constants are unknown (custom systems).
    std::optional<SqueezeParameters> params;
};
ResolvedInitial resolve_initial(const InitialBlock& block, const Model& model);

} // namespace sqz::cli
