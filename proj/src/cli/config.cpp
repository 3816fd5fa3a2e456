#include "sqz/cli/config.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace sqz::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& block, const std::string& name, const std::set<std::string>& keys) {
    if (!block.is_object()) throw ConfigError("block '" + name + "' must be an object");
    for (const auto& [k, _] : block.items())
        if (!keys.count(k)) throw ConfigError("unknown key '" + k + "' in block '" + name + "'");
}

double number(const json& block, const std::string& block_name, const std::string& key) {
    const auto& v = block.at(key);
    if (!v.is_number()) throw ConfigError(block_name + "." + key + " must be a number");
    return v.get<double>();
}

template <class T>
void read(const json& block, const std::string& block_name, const std::string& key, T& out) {
    if (!block.contains(key)) return;
    if constexpr (std::is_same_v<T, double>) {
        out = number(block, block_name, key);
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
        out = number(block, block_name, key);
    } else if constexpr (std::is_same_v<T, bool>) {
        if (!block.at(key).is_boolean()) throw ConfigError(block_name + "." + key + " must be a boolean");
        out = block.at(key).get<bool>();
    } else if constexpr (std::is_same_v<T, std::size_t>) {
        if (!block.at(key).is_number_unsigned())
            throw ConfigError(block_name + "." + key + " must be a positive integer");
        out = block.at(key).get<std::size_t>();
    } else {
        if (!block.at(key).is_string()) throw ConfigError(block_name + "." + key + " must be a string");
        out = block.at(key).get<std::string>();
    }
}

} // namespace

std::string_view to_string(InitialStyle style) {
    switch (style) {
    case InitialStyle::xp: return "xp";
    case InitialStyle::alpha_z: return "alpha-z";
    case InitialStyle::z_alpha: return "z-alpha";
    }
    return "?";
}

InitialStyle parse_initial_style(std::string_view name) {
    if (name == "xp") return InitialStyle::xp;
    if (name == "alpha-z") return InitialStyle::alpha_z;
    if (name == "z-alpha") return InitialStyle::z_alpha;
    throw ConfigError("unknown representation '" + std::string(name) +
                      "' (expected xp, alpha-z or z-alpha)");
}

InitialStyle InitialBlock::style() const {
    if (rep) return *rep;
    return alpha || delta ? InitialStyle::alpha_z : InitialStyle::xp;
}

void RunConfig::validate() const {
    const auto st = initial.style();
    const bool has_xp = initial.x0 || initial.p0;
    const bool has_alpha = initial.alpha || initial.delta;
    if (has_xp && has_alpha)
        throw ConfigError("exactly one initial-condition style allowed: got both (x0, p0) and (alpha, delta)");
    if (st == InitialStyle::alpha_z && has_xp)
        throw ConfigError("alpha-z initial conditions take alpha, delta, r, theta (not x0/p0)");
    if (st != InitialStyle::alpha_z && has_alpha)
        throw ConfigError(std::string(to_string(st)) + " initial conditions take x0, p0, r, theta (not alpha/delta)");
    if (initial.alpha && *initial.alpha < 0.0) throw ConfigError("alpha is a modulus and must be >= 0");
    if (!(initial.r >= 0.0) || !std::isfinite(initial.r)) throw ConfigError("r must be >= 0");
    if (!std::isfinite(initial.theta)) throw ConfigError("theta must be finite");
    for (auto v : {initial.x0, initial.p0, initial.alpha, initial.delta})
        if (v && !std::isfinite(*v)) throw ConfigError("initial values must be finite");
    if (!(time.tau_max > 0.0) || !std::isfinite(time.tau_max)) throw ConfigError("tau_max must be > 0");
    if (!(time.dt_output > 0.0)) throw ConfigError("dt_output must be > 0");
    if (oracle.enabled) {
        if (oracle.grid_n < 64 || (oracle.grid_n & (oracle.grid_n - 1)))
            throw ConfigError("oracle grid_n must be a power of two >= 64");
        if (!(oracle.domain > 0.0)) throw ConfigError("oracle domain must be > 0");
        if (!(oracle.dt > 0.0)) throw ConfigError("oracle dt must be > 0");
    }
    if (output.path.empty()) throw ConfigError("output path must not be empty");
}

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown(doc, "<root>", {"system", "initial", "time", "oracle", "output"});
    RunConfig cfg;

    if (doc.contains("system")) {
        const auto& s = doc["system"];
        reject_unknown(s, "system",
                       {"kind", "omega", "Omega", "kappa", "g2", "g1", "g0", "C1_0", "C2_0", "numeric"});
        std::string kind = "HO";
        read(s, "system", "kind", kind);
        try {
            cfg.system.kind = parse_system_kind(kind);
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
        auto& p = cfg.system.params;
        read(s, "system", "omega", p.omega);
        read(s, "system", "Omega", p.Omega);
        read(s, "system", "kappa", p.kappa);
        for (const char* key : {"g2", "g1", "g0"}) {
            if (!s.contains(key)) continue;
            std::string v;
            read(s, "system", key, v);
            (key[1] == '2' ? p.g2 : key[1] == '1' ? p.g1 : p.g0) = v;
        }
        if (s.contains("C1_0") || s.contains("C2_0")) {
            IntegrationConstants c;
            read(s, "system", "C1_0", c.C1_0);
            read(s, "system", "C2_0", c.C2_0);
            cfg.system.constants = c;
        }
        read(s, "system", "numeric", cfg.system.numeric);
    }
    if (doc.contains("initial")) {
        const auto& s = doc["initial"];
        reject_unknown(s, "initial", {"rep", "x0", "p0", "alpha", "delta", "r", "theta"});
        if (s.contains("rep")) {
            std::string rep;
            read(s, "initial", "rep", rep);
            cfg.initial.rep = parse_initial_style(rep);
        }
        read(s, "initial", "x0", cfg.initial.x0);
        read(s, "initial", "p0", cfg.initial.p0);
        read(s, "initial", "alpha", cfg.initial.alpha);
        read(s, "initial", "delta", cfg.initial.delta);
        read(s, "initial", "r", cfg.initial.r);
        read(s, "initial", "theta", cfg.initial.theta);
    }
    if (doc.contains("time")) {
        const auto& s = doc["time"];
        reject_unknown(s, "time", {"tau_max", "dt_output"});
        read(s, "time", "tau_max", cfg.time.tau_max);
        read(s, "time", "dt_output", cfg.time.dt_output);
    }
    if (doc.contains("oracle")) {
        const auto& s = doc["oracle"];
        reject_unknown(s, "oracle", {"enabled", "grid_n", "domain", "dt"});
        read(s, "oracle", "enabled", cfg.oracle.enabled);
        read(s, "oracle", "grid_n", cfg.oracle.grid_n);
        read(s, "oracle", "domain", cfg.oracle.domain);
        read(s, "oracle", "dt", cfg.oracle.dt);
    }
    if (doc.contains("output")) {
        const auto& s = doc["output"];
        reject_unknown(s, "output", {"path", "format", "plot"});
        read(s, "output", "path", cfg.output.path);
        std::string fmt = "csv";
        read(s, "output", "format", fmt);
        if (fmt == "csv") cfg.output.format = Format::csv;
        else if (fmt == "json") cfg.output.format = Format::json;
        else throw ConfigError("output.format must be csv or json");
        read(s, "output", "plot", cfg.output.plot);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return config_from_json(doc);
}

json to_json(const RunConfig& c) {
    json sys = {{"kind", std::string(to_string(c.system.kind))}};
    const auto& p = c.system.params;
    if (p.omega) sys["omega"] = *p.omega;
    if (p.Omega) sys["Omega"] = *p.Omega;
    if (p.kappa) sys["kappa"] = *p.kappa;
    if (p.g2) sys["g2"] = *p.g2;
    if (p.g1) sys["g1"] = *p.g1;
    if (p.g0) sys["g0"] = *p.g0;
    if (c.system.constants) {
        sys["C1_0"] = c.system.constants->C1_0;
        sys["C2_0"] = c.system.constants->C2_0;
    }
    if (c.system.numeric) sys["numeric"] = true;
    json init = {{"rep", std::string(to_string(c.initial.style()))}, {"r", c.initial.r},
                 {"theta", c.initial.theta}};
    if (c.initial.x0) init["x0"] = *c.initial.x0;
    if (c.initial.p0) init["p0"] = *c.initial.p0;
    if (c.initial.alpha) init["alpha"] = *c.initial.alpha;
    if (c.initial.delta) init["delta"] = *c.initial.delta;
    return {{"system", sys},
            {"initial", init},
            {"time", {{"tau_max", c.time.tau_max}, {"dt_output", c.time.dt_output}}},
            {"oracle",
             {{"enabled", c.oracle.enabled},
              {"grid_n", c.oracle.grid_n},
              {"domain", c.oracle.domain},
              {"dt", c.oracle.dt}}},
            {"output",
             {{"path", c.output.path},
              {"format", c.output.format == Format::csv ? "csv" : "json"},
              {"plot", c.output.plot}}}};
}

SystemSpec build_system(const SystemBlock& block) { return make_system(block.kind, block.params); }

Model build_model(const RunConfig& config) {
    ModelOptions opt;
    opt.force_numeric = config.system.numeric;
    opt.tau_max = config.time.tau_max;
    opt.constants = config.system.constants;
    return sqz::build_model(build_system(config.system), opt);
}

ResolvedInitial resolve_initial(const InitialBlock& block, const Model& model) {
    ResolvedInitial out;
    out.z = {block.r, block.theta};
    switch (block.style()) {
    case InitialStyle::xp:
        out.point = {block.x0.value_or(0.0), block.p0.value_or(0.0)};
        if (model.driving.has_constants())
            out.params = params_alpha_z(out.point, model.basis, model.driving, out.z);
        break;
    case InitialStyle::alpha_z: {
        SqueezeParameters sp;
        sp.alpha_abs = block.alpha.value_or(0.0);
        sp.delta = block.delta.value_or(0.0);
        sp.r = block.r;
        sp.theta = block.theta;
        sp.rep = Representation::alpha_z;
        sp.degenerate = sp.alpha_abs == 0.0;
        out.point = initial_point(sp, model.basis, model.driving);
        out.params = sp;
        break;
    }
    case InitialStyle::z_alpha:
        out.point = {block.x0.value_or(0.0), block.p0.value_or(0.0)};
        if (model.driving.has_constants())
            out.params = solve_alpha_given_z(out.point, out.z, model.basis, model.driving);
        break;
    }
    return out;
}

} // namespace sqz::cli
