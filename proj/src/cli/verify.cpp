#include "sqz/cli/commands.hpp"

#include "sqz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace sqz::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr SystemKind kSystems[] = {SystemKind::HO, SystemKind::FP, SystemKind::LP, SystemKind::DHO,
                                   SystemKind::RO};

// Relative error for large references, absolute otherwise.
double scaled(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Context {
    const VerifyOptions& opt;
    std::mt19937_64& rng;
    SystemKind kind;

    Model model(double lo = 0.5, double hi = 3.0) const {
        return sqz::build_model(draw_system(kind, rng, lo, hi));
    }
    Symplectic2 transfer(const AuxiliaryBasis& b, double tau) const {
        return opt.transfer ? opt.transfer(b, tau) : transfer_matrix(b, tau);
    }
};

using CheckFn = CheckResult (*)(const Context&);

CheckResult make(const Context& c, double err, double tol, std::string note = {}) {
    return {"", std::string(to_string(c.kind)), err <= tol, err, std::move(note)};
}

CheckResult check_wronskian(const Context& c) {
    double err = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const auto b = m.basis.evaluate(uniform(c.rng, 0.0, 10.0));
        // W is a difference of products that grow like cosh^2 for RO.
        err = std::max(err, std::abs(wronskian(b) - 1.0) / std::max(1.0, std::abs(b.chi1 * b.chi2dot)));
    }
    return make(c, err, c.opt.tol);
}

CheckResult check_symplectic(const Context& c) {
    double err = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const double tau = uniform(c.rng, 0.0, 5.0);
        const auto M = c.transfer(m.basis, tau);
        err = std::max(err, std::abs(M.det() - 1.0) / std::max(1.0, std::abs(M.m11 * M.m22)));
        const Squeeze z{uniform(c.rng, 0.0, 2.0), uniform(c.rng, 0.0, kTwoPi)};
        const auto a = covariance(m.basis, z, tau);
        const auto b = covariance_propagated(m.basis, z, tau);
        err = std::max({err, scaled(b.var_x, a.var_x), scaled(b.var_p, a.var_p),
                        scaled(b.cov_xp, a.cov_xp), scaled(a.determinant(), 0.25) / std::max(1.0, a.var_x * a.var_p)});
    }
    return make(c, err, c.opt.tol);
}

CheckResult check_representation(const Context& c) {
    double err = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const PhasePoint pt{uniform(c.rng, -3.0, 3.0), uniform(c.rng, -3.0, 3.0)};
        const Squeeze z{uniform(c.rng, 0.0, 2.0), uniform(c.rng, 0.0, kTwoPi)};
        const double tau = uniform(c.rng, 0.0, 10.0);
        const auto az = params_alpha_z(pt, m.basis, m.driving, z);
        const auto za = solve_alpha_given_z(pt, z, m.basis, m.driving);
        const auto r1 = m.expect(pt, tau);
        const auto r2 = expect_xp_alpha_z(az, m.basis, m.driving, tau);
        const auto r3 = expect_xp_z_alpha(za, m.basis, m.driving, tau);
        const auto back_az = initial_point(az, m.basis, m.driving);
        const auto back_za = initial_point(za, m.basis, m.driving);
        err = std::max({err, scaled(r2.x, r1.x), scaled(r2.p, r1.p), scaled(r3.x, r1.x),
                        scaled(r3.p, r1.p), scaled(r3.x, r2.x), scaled(r3.p, r2.p),
                        scaled(back_az.x, pt.x), scaled(back_az.p, pt.p), scaled(back_za.x, pt.x),
                        scaled(back_za.p, pt.p)});
    }
    return make(c, err, c.opt.tol);
}

CheckResult check_ehrenfest(const Context& c) {
    constexpr double h = 1e-4;
    double err = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const PhasePoint pt{uniform(c.rng, -3.0, 3.0), uniform(c.rng, -3.0, 3.0)};
        const double tau = uniform(c.rng, h, 10.0);
        auto mean = [&](double t) {
            const auto hom = c.transfer(m.basis, t).apply(pt);
            const auto off = driven_offset(m.basis.evaluate(t), m.driving.c(t));
            return PhasePoint{hom.x + off.x, hom.p + off.p};
        };
        const auto lo = mean(tau - h), mid = mean(tau), hi = mean(tau + h);
        const double dx = (hi.x - lo.x) / (2 * h), dp = (hi.p - lo.p) / (2 * h);
        const double force = -2.0 * m.system.g2().eval(tau) * mid.x - m.system.g1().eval(tau);
        err = std::max({err, scaled(dx, mid.p), scaled(dp, force)});
    }
    return make(c, err, c.opt.ehrenfest_tol);
}

CheckResult check_uncertainty(const Context& c) {
    double err = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const Squeeze z{uniform(c.rng, 0.0, 2.0), uniform(c.rng, 0.0, kTwoPi)};
        const double tau = uniform(c.rng, 0.0, 5.0);
        err = std::max(err, scaled(uncertainty_product(m.cov(z, tau)),
                                   reference_uncertainty_product(m.system, z, tau)));
    }
    return make(c, err, c.opt.tol);
}

CheckResult check_floor(const Context& c) {
    double below = 0.0, coherent = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const Squeeze z{uniform(c.rng, 0.0, 2.0), uniform(c.rng, 0.0, kTwoPi)};
        const double tau = uniform(c.rng, 0.0, 10.0);
        below = std::max(below, 0.25 - uncertainty_product(m.cov(z, tau)));
        double expected = 0.25;
        if (c.kind == SystemKind::FP || c.kind == SystemKind::LP) expected = 0.25 * (1 + tau * tau);
        if (c.kind == SystemKind::RO) {
            const double s = std::sinh(2.0 * m.system.Omega() * tau);
            expected = 0.25 * (1 + s * s);
        }
        coherent = std::max(coherent, scaled(uncertainty_product(m.cov({0.0, z.theta}, tau)), expected));
    }
    CheckResult r = make(c, std::max(below, coherent), 1e-10);
    r.passed = below <= 1e-12 && coherent <= 1e-10;
    return r;
}

CheckResult check_generic(const Context& c) {
    double err = 0.0;
    const std::size_t draws = std::max<std::size_t>(1, c.opt.samples / 40);
    for (std::size_t i = 0; i < draws; ++i) {
        const Model ref = c.model();
        SystemParams p;
        p.g2 = ref.system.g2().to_string();
        p.g1 = ref.system.g1().to_string();
        p.g0 = ref.system.g0().to_string();
        ModelOptions opt;
        opt.tau_max = 10.0;
        opt.ics = ref.basis.ics();
        opt.constants = integration_constants(ref.system);
        const Model gen = sqz::build_model(make_system(SystemKind::custom, p), opt);
        for (int k = 0; k < 10; ++k) {
            const PhasePoint pt{uniform(c.rng, -3.0, 3.0), uniform(c.rng, -3.0, 3.0)};
            const Squeeze z{uniform(c.rng, 0.0, 2.0), uniform(c.rng, 0.0, kTwoPi)};
            const double tau = uniform(c.rng, 0.0, 10.0);
            const auto a = ref.expect(pt, tau), b = gen.expect(pt, tau);
            const double t5 = std::min(tau, 5.0);
            const auto az = params_alpha_z(pt, gen.basis, gen.driving, z);
            const auto r2 = expect_xp_alpha_z(az, gen.basis, gen.driving, tau);
            err = std::max({err, scaled(b.x, a.x), scaled(b.p, a.p), scaled(r2.x, a.x),
                            scaled(r2.p, a.p),
                            scaled(uncertainty_product(gen.cov(z, t5)),
                                   reference_uncertainty_product(ref.system, z, t5))});
        }
    }
    return make(c, err, 1e-7, "numeric basis + quadrature");
}

CheckResult check_oracle(const Context& c) {
    const auto grid = oracle::SpatialGrid::symmetric(30.0, 4096);
    const double tau_max = c.kind == SystemKind::RO ? 1.5 : 2.0;
    const auto times = output_times(tau_max, 0.25);
    double xp = 0.0, var = 0.0;
    int done = 0;
    for (int attempt = 0; attempt < 200 && done < 2; ++attempt) {
        const Model m = c.model(0.5, 1.5);
        const PhasePoint pt{uniform(c.rng, -3.0, 3.0), uniform(c.rng, -3.0, 3.0)};
        const Squeeze z{uniform(c.rng, 0.0, 1.5), uniform(c.rng, 0.0, kTwoPi)};
        if (!oracle_admissible(m, pt, z, grid, times)) continue;
        const auto d = oracle_deviation(m, pt, z, grid, 5e-4, times);
        xp = std::max({xp, d.x_abs, d.p_abs});
        var = std::max({var, d.var_x_rel, d.var_p_rel});
        ++done;
    }
    CheckResult r = make(c, std::max(xp, var), c.opt.oracle_abs_tol);
    r.passed = done > 0 && xp <= c.opt.oracle_abs_tol && var <= c.opt.oracle_rel_tol;
    r.note = "means abs " + format_number(xp) + ", variances rel " + format_number(var);
    return r;
}

// The printed closed form must disagree with the covariance where the
// corrected one agrees.
CheckResult check_typos(const Context& c) {
    double printed = 0.0, corrected = 0.0;
    for (std::size_t i = 0; i < c.opt.samples; ++i) {
        const Model m = c.model();
        const Squeeze z{uniform(c.rng, 0.3, 2.0), uniform(c.rng, 0.0, kTwoPi)};
        const double tau = uniform(c.rng, 0.0, 5.0);
        const auto cov = m.cov(z, tau);
        namespace cf = closed_form;
        switch (c.kind) {
        case SystemKind::HO:
        case SystemKind::DHO: {
            const double w = m.system.omega();
            const auto v = cf::oscillator_variances(w, z, tau);
            corrected = std::max({corrected, scaled(v.var_x, cov.var_x), scaled(v.var_p, cov.var_p)});
            printed = std::max(printed, scaled(cf::uncorrected::oscillator_var_p(w, z, tau), cov.var_p));
            break;
        }
        case SystemKind::FP:
        case SystemKind::LP:
            corrected = std::max(corrected, scaled(cf::free_particle_product(z, tau), uncertainty_product(cov)));
            printed = std::max(printed, scaled(cf::uncorrected::free_particle_product(z, tau),
                                               uncertainty_product(cov)));
            break;
        case SystemKind::RO: {
            const double W = m.system.Omega();
            corrected = std::max(corrected, scaled(cf::repulsive_product(W, z, tau), uncertainty_product(cov)));
            printed = std::max(printed, scaled(cf::uncorrected::repulsive_product(W, z, tau),
                                               uncertainty_product(cov)));
            break;
        }
        case SystemKind::custom: break;
        }
    }
    CheckResult r = make(c, corrected, c.opt.tol);
    r.passed = corrected <= c.opt.tol && printed > 1e-3;
    r.note = "printed form deviates by " + format_number(printed);
    return r;
}

struct NamedCheck {
    const char* name;
    CheckFn fn;
    bool oracle;
};

constexpr NamedCheck kChecks[] = {
    {"wronskian", check_wronskian, false},   {"symplectic", check_symplectic, false},
    {"representation", check_representation, false}, {"ehrenfest", check_ehrenfest, false},
    {"uncertainty", check_uncertainty, false}, {"floor", check_floor, false},
    {"generic", check_generic, false},       {"typos", check_typos, false},
    {"oracle", check_oracle, true},
};

} // namespace

SystemSpec draw_system(SystemKind kind, std::mt19937_64& rng, double lo, double hi) {
    SystemParams p;
    switch (kind) {
    case SystemKind::HO: p.omega = uniform(rng, lo, hi); break;
    case SystemKind::FP: break;
    case SystemKind::LP: p.kappa = uniform(rng, lo, hi); break;
    case SystemKind::DHO:
        p.omega = uniform(rng, lo, hi);
        p.kappa = uniform(rng, lo, hi);
        break;
    case SystemKind::RO: p.Omega = uniform(rng, lo, hi); break;
    case SystemKind::custom: throw DomainError("draw_system needs a catalog system");
    }
    return make_system(kind, p);
}

bool VerifyReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

void VerifyReport::print(std::ostream& out) const {
    std::vector<std::string> checks;
    for (const auto& r : results)
        if (std::find(checks.begin(), checks.end(), r.check) == checks.end()) checks.push_back(r.check);
    out << std::left << std::setw(16) << "check";
    for (auto k : kSystems) out << std::setw(6) << to_string(k);
    out << '\n';
    for (const auto& name : checks) {
        out << std::setw(16) << name;
        for (auto k : kSystems) {
            std::string cell = "skip";
            for (const auto& r : results)
                if (r.check == name && r.system == to_string(k)) cell = r.passed ? "PASS" : "FAIL";
            out << std::setw(6) << cell;
        }
        out << '\n';
    }
    std::size_t failed = 0;
    for (const auto& r : results) {
        if (r.passed) continue;
        ++failed;
        out << "FAIL " << r.check << '/' << r.system << ": max error " << format_number(r.max_error);
        if (!r.note.empty()) out << " (" << r.note << ')';
        out << '\n';
    }
    out << (failed ? std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed"
                   : "all " + std::to_string(results.size()) + " checks passed")
        << '\n';
}

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;
    std::mt19937_64 rng(options.seed);
    for (const auto& check : kChecks) {
        if (check.oracle && options.skip_oracle) continue;
        for (auto kind : kSystems) {
            const Context ctx{options, rng, kind};
            CheckResult r;
            try {
                r = check.fn(ctx);
            } catch (const std::exception& e) {
                r = {"", std::string(to_string(kind)), false, std::nan(""), e.what()};
            }
            r.check = check.name;
            report.results.push_back(std::move(r));
        }
    }
    return report;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
    const auto report = run_verification(options);
    report.print(out);
    return report.all_passed() ? ok : verification;
}

} // namespace sqz::cli
