#include "sqz/cli/commands.hpp"
#include "sqz/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace sqz;
using namespace sqz::cli;

namespace {

// Flags shared by simulate and sweep; every one overrides the config file.
struct RunFlags {
    std::string config;
    std::optional<std::string> system, rep, format, out, g2, g1, g0;
    std::optional<double> omega, Omega, kappa, x0, p0, r, theta, alpha, delta, tau_max, dt_out,
        grid_domain, oracle_dt, C1_0, C2_0;
    std::optional<std::size_t> grid_n;
    bool oracle = false, plot = false, numeric = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "JSON run configuration");
        app->add_option("--system", system, "HO, FP, LP, DHO, RO or custom");
        app->add_option("--omega", omega, "oscillator frequency (HO, DHO)");
        app->add_option("--Omega", Omega, "repulsive rate (RO)");
        app->add_option("--kappa", kappa, "linear drive strength (LP, DHO)");
        app->add_option("--g2", g2, "custom g2(t) expression");
        app->add_option("--g1", g1, "custom g1(t) expression");
        app->add_option("--g0", g0, "custom g0(t) expression");
        app->add_option("--C1-0", C1_0, "custom driving constant C1(0)");
        app->add_option("--C2-0", C2_0, "custom driving constant C2(0)");
        app->add_flag("--numeric", numeric, "integrate the auxiliary equation numerically");
        app->add_option("--rep", rep, "initial-condition style: xp, alpha-z or z-alpha");
        app->add_option("--x0", x0, "initial <x>");
        app->add_option("--p0", p0, "initial <p>");
        app->add_option("--r", r, "squeeze magnitude");
        app->add_option("--theta", theta, "squeeze phase");
        app->add_option("--alpha", alpha, "|alpha| (alpha-z)");
        app->add_option("--delta", delta, "arg alpha (alpha-z)");
        app->add_option("--tau-max", tau_max, "end time");
        app->add_option("--dt-out", dt_out, "output spacing");
        app->add_flag("--oracle", oracle, "also run the grid oracle");
        app->add_option("--grid-n", grid_n, "oracle grid points (power of two)");
        app->add_option("--grid-domain", grid_domain, "oracle half width");
        app->add_option("--oracle-dt", oracle_dt, "oracle time step");
        app->add_option("--out", out, "output path stem");
        app->add_option("--format", format, "csv or json");
        app->add_flag("--plot", plot, "write SVG plots");
    }

    RunConfig resolve() const {
        RunConfig cfg = config.empty() ? RunConfig{} : load_config(config);
        auto& sys = cfg.system;
        if (system) {
            try {
                sys.kind = parse_system_kind(*system);
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
        }
        if (omega) sys.params.omega = omega;
        if (Omega) sys.params.Omega = Omega;
        if (kappa) sys.params.kappa = kappa;
        if (g2) sys.params.g2 = g2;
        if (g1) sys.params.g1 = g1;
        if (g0) sys.params.g0 = g0;
        if (C1_0 || C2_0) {
            auto c = sys.constants.value_or(IntegrationConstants{});
            if (C1_0) c.C1_0 = *C1_0;
            if (C2_0) c.C2_0 = *C2_0;
            sys.constants = c;
        }
        if (numeric) sys.numeric = true;
        auto& in = cfg.initial;
        if (rep) in.rep = parse_initial_style(*rep);
        if (x0) in.x0 = x0;
        if (p0) in.p0 = p0;
        if (alpha) in.alpha = alpha;
        if (delta) in.delta = delta;
        if (r) in.r = *r;
        if (theta) in.theta = *theta;
        if (tau_max) cfg.time.tau_max = *tau_max;
        if (dt_out) cfg.time.dt_output = *dt_out;
        if (oracle) cfg.oracle.enabled = true;
        if (grid_n) cfg.oracle.grid_n = *grid_n;
        if (grid_domain) cfg.oracle.domain = *grid_domain;
        if (oracle_dt) cfg.oracle.dt = *oracle_dt;
        if (out) cfg.output.path = *out;
        if (format) {
            if (*format == "csv") cfg.output.format = Format::csv;
            else if (*format == "json") cfg.output.format = Format::json;
            else throw ConfigError("--format must be csv or json");
        }
        if (plot) cfg.output.plot = true;
        cfg.validate();
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squeezed-state dynamics in time-dependent quadratic potentials"};
    app.require_subcommand(1);

    RunFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "write <x>, <p> and the covariance over time");
    sim_flags.attach(simulate);

    RunFlags sweep_flags;
    std::vector<std::string> sweep_specs;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "uncertainty products over a parameter grid");
    sweep_flags.attach(sweep);
    sweep->add_option("--sweep", sweep_specs, "name=a:b:n or name=v1,v2 (at most twice)");
    sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

    VerifyOptions vopt;
    std::string fault;
    auto* verify = app.add_subcommand("verify", "run the invariant suite and print a pass/fail matrix");
    verify->add_flag("--skip-oracle", vopt.skip_oracle, "skip the grid simulations");
    verify->add_option("--tol", vopt.tol, "tolerance for analytic identities");
    verify->add_option("--ehrenfest-tol", vopt.ehrenfest_tol);
    verify->add_option("--oracle-abs-tol", vopt.oracle_abs_tol, "oracle tolerance on <x>, <p>");
    verify->add_option("--oracle-rel-tol", vopt.oracle_rel_tol, "oracle relative tolerance on variances");
    verify->add_option("--samples", vopt.samples, "random draws per check and system");
    verify->add_option("--seed", vopt.seed);
    verify->add_option("--inject-fault", fault)->group("")->check(CLI::IsMember({"sign-flip"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : validation;
    }

    try {
        if (*simulate) {
            cmd_simulate(sim_flags.resolve(), std::cout);
        } else if (*sweep) {
            std::vector<SweepAxis> axes;
            for (const auto& s : sweep_specs) axes.push_back(parse_sweep_axis(s));
            RunConfig cfg = sweep_flags.resolve();
            const auto rows = run_sweep(cfg, axes, threads);
            const std::string path = with_extension(cfg.output.path, ".csv");
            write_sweep_csv(path, axes, rows);
            std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
        } else if (*verify) {
            if (fault == "sign-flip") {
                vopt.transfer = [](const AuxiliaryBasis& b, double tau) {
                    auto m = transfer_matrix(b, tau);
                    m.m12 = -m.m12;
                    m.m21 = -m.m21;
                    return m;
                };
            }
            return cmd_verify(vopt, std::cout);
        }
    } catch (...) {
        return report_exception(std::cerr);
    }
    return ok;
}
