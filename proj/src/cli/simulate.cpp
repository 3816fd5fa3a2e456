#include "sqz/cli/commands.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <exception>
#include <ostream>

namespace sqz::cli {

int report_exception(std::ostream& err) {
    try {
        throw;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return numerical;
    } catch (const EvalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return numerical;
    } catch (const ConfigError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return validation;
    } catch (const ParseError& e) {
        err << "invalid expression: " << e.what() << '\n';
        return validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation;
    }
}

std::vector<double> output_times(double tau_max, double dt) {
    std::vector<double> times;
    const auto n = static_cast<std::size_t>(std::floor(tau_max / dt * (1.0 + 1e-12)));
    for (std::size_t k = 0; k <= n; ++k) times.push_back(std::min(tau_max, dt * static_cast<double>(k)));
    if (tau_max - times.back() > 1e-12 * tau_max) times.push_back(tau_max);
    return times;
}

Trajectory analytic_trajectory(const RunConfig& config) {
    config.validate();
    const Model model = build_model(config);
    const auto init = resolve_initial(config.initial, model);
    Trajectory rows;
    for (double tau : output_times(config.time.tau_max, config.time.dt_output)) {
        const auto m = model.expect(init.point, tau);
        const auto c = model.cov(init.z, tau);
        rows.push_back({tau, m.x, m.p, c.var_x, c.var_p, c.cov_xp, uncertainty_product(c)});
    }
    return rows;
}

namespace {

// Advances psi through each requested time, choosing the largest step <= dt
// that lands on it exactly.
template <class Visit>
void walk_oracle(const SystemSpec& system, oracle::GridWavefunction& psi, double dt,
                 const std::vector<double>& times, Visit&& visit) {
    std::unique_ptr<oracle::Propagator> prop;
    for (double tau : times) {
        const double span = tau - psi.tau;
        if (span > 1e-14) {
            const auto steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
            const double h = span / static_cast<double>(steps);
            if (!prop || std::abs(prop->dt() - h) > 1e-15 * h)
                prop = std::make_unique<oracle::Propagator>(system, psi.grid, h);
            prop->advance(psi, steps);
            psi.tau = tau;
        }
        visit(tau, oracle::moments(psi));
    }
}

} // namespace

void oracle_trajectory(const RunConfig& config, Trajectory& rows) {
    config.validate();
    const Model model = build_model(config);
    const auto init = resolve_initial(config.initial, model);
    const auto b0 = model.basis.evaluate(0.0);
    const auto grid = oracle::SpatialGrid::symmetric(config.oracle.domain, config.oracle.grid_n);
    auto psi = oracle::init_squeezed_wavefunction(init.point, init.z, b0.xi, b0.xidot, grid);
    walk_oracle(model.system, psi, config.oracle.dt,
                output_times(config.time.tau_max, config.time.dt_output),
                [&](double tau, const oracle::Moments& m) {
                    rows.push_back({tau, m.x, m.p, m.var_x, m.var_p, m.cov_xp, m.product()});
                });
}

OracleDeviation oracle_deviation(const Model& model, InitialPhasePoint point, Squeeze z,
                                 const oracle::SpatialGrid& grid, double dt,
                                 const std::vector<double>& times) {
    const auto b0 = model.basis.evaluate(0.0);
    auto psi = oracle::init_squeezed_wavefunction(point, z, b0.xi, b0.xidot, grid);
    OracleDeviation dev;
    walk_oracle(model.system, psi, dt, times, [&](double tau, const oracle::Moments& m) {
        const auto mean = model.expect(point, tau);
        const auto c = model.cov(z, tau);
        dev.x_abs = std::max(dev.x_abs, std::abs(m.x - mean.x));
        dev.p_abs = std::max(dev.p_abs, std::abs(m.p - mean.p));
        dev.var_x_rel = std::max(dev.var_x_rel, std::abs(m.var_x - c.var_x) / c.var_x);
        dev.var_p_rel = std::max(dev.var_p_rel, std::abs(m.var_p - c.var_p) / c.var_p);
    });
    return dev;
}

bool oracle_admissible(const Model& model, InitialPhasePoint point, Squeeze z,
                       const oracle::SpatialGrid& grid, const std::vector<double>& times) {
    for (double tau : times)
        if (!oracle::resolves(grid, model.expect(point, tau), model.cov(z, tau))) return false;
    return true;
}

SimulateResult cmd_simulate(const RunConfig& config, std::ostream& log) {
    config.validate();
    SimulateResult result;
    const auto rows = analytic_trajectory(config);
    const std::string base = strip_extension(config.output.path);

    const Model model = build_model(config);
    const auto init = resolve_initial(config.initial, model);
    nlohmann::json meta = {{"config", to_json(config)},
                           {"system", model.system.describe()},
                           {"x0", init.point.x},
                           {"p0", init.point.p}};
    if (init.params) {
        meta["alpha_abs"] = init.params->alpha_abs;
        meta["delta"] = init.params->delta;
    }

    auto emit = [&](const std::string& stem, const Trajectory& t) {
        const std::string path =
            stem + (config.output.format == Format::csv ? ".csv" : ".json");
        if (config.output.format == Format::csv) write_trajectory_csv(path, t);
        else write_trajectory_json(path, t, meta);
        result.files.push_back(path);
    };
    emit(base, rows);

    if (config.output.plot) {
        std::vector<double> tau, x, product;
        for (const auto& r : rows) {
            tau.push_back(r.tau);
            x.push_back(r.x);
            product.push_back(r.product);
        }
        write_svg_plot(base + ".x.svg", model.system.describe() + ": <x>", "tau", "<x>", tau, x);
        write_svg_plot(base + ".product.svg", model.system.describe() + ": uncertainty product",
                       "tau", "var_x var_p", tau, product);
        result.files.push_back(base + ".x.svg");
        result.files.push_back(base + ".product.svg");
    }

    if (config.oracle.enabled) {
        Trajectory grid_rows;
        try {
            oracle_trajectory(config, grid_rows);
        } catch (const DomainEscapeError&) {
            emit(base + ".oracle", grid_rows);
            throw;
        }
        emit(base + ".oracle", grid_rows);
    }
    for (const auto& f : result.files) log << "wrote " << f << '\n';
    return result;
}

} // namespace sqz::cli
