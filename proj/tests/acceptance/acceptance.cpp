// Acceptance gate: one PASS/FAIL line per criterion. Every tolerance, sample
// count and time limit used for a verdict is a constant in this file.

#include "sqz/cli/commands.hpp"
#include "sqz/model.hpp"
#include "sqz/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sqz;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr SystemKind kAll[] = {SystemKind::HO, SystemKind::FP, SystemKind::LP, SystemKind::DHO,
                               SystemKind::RO};
constexpr SystemKind kLadderSystems[] = {SystemKind::HO, SystemKind::FP, SystemKind::LP,
                                         SystemKind::DHO};

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::mt19937_64& rng() {
    static std::mt19937_64 r(20240601);
    return r;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// |a - b| / max(1, |b|)
double scaled(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
double scaled(PhasePoint a, PhasePoint b) { return std::max(scaled(a.x, b.x), scaled(a.p, b.p)); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Model random_model(SystemKind kind, double lo = 0.5, double hi = 3.0) {
    return build_model(cli::draw_system(kind, rng(), lo, hi));
}

Model model_of(SystemKind kind, SystemParams p) { return build_model(make_system(kind, p)); }

// Same system given as parsed coefficient expressions on the integrated basis.
Model generic_twin(const Model& ref) {
    SystemParams p;
    p.g2 = ref.system.g2().to_string();
    p.g1 = ref.system.g1().to_string();
    p.g0 = ref.system.g0().to_string();
    ModelOptions opt;
    opt.tau_max = 10.0;
    opt.ics = ref.basis.ics();
    opt.constants = integration_constants(ref.system);
    return build_model(make_system(SystemKind::custom, p), opt);
}

double coherent_product(const SystemSpec& s, double tau) {
    switch (s.kind()) {
    case SystemKind::FP:
    case SystemKind::LP: return 0.25 * (1.0 + tau * tau);
    case SystemKind::RO: return 0.25 * (1.0 + std::pow(std::sinh(2.0 * s.Omega() * tau), 2));
    default: return 0.25;
    }
}

// Largest pairwise disagreement of the three expectation routes, plus the
// parameter -> point round trips.
double route_error(const Model& m, PhasePoint pt, Squeeze z, double tau) {
    const auto direct = m.expect(pt, tau);
    const auto az = params_alpha_z(pt, m.basis, m.driving, z);
    const auto za = solve_alpha_given_z(pt, z, m.basis, m.driving);
    const auto via_az = expect_xp_alpha_z(az, m.basis, m.driving, tau);
    const auto via_za = expect_xp_z_alpha(za, m.basis, m.driving, tau);
    return std::max({scaled(via_az, direct), scaled(via_za, direct), scaled(via_za, via_az),
                     scaled(initial_point(az, m.basis, m.driving), pt),
                     scaled(initial_point(za, m.basis, m.driving), pt)});
}

// ---- 1 -------------------------------------------------------------------

Verdict catalog_reproduction() {
    constexpr int kDraws = 1000;
    constexpr double kTol = 1e-9;
    double worst = 0.0;
    for (auto kind : kAll) {
        for (int i = 0; i < kDraws; ++i) {
            const auto m = random_model(kind);
            const PhasePoint pt{uniform(-5, 5), uniform(-5, 5)};
            const double tau = uniform(0, 10);
            worst = std::max(worst, scaled(m.expect(pt, tau), reference_expectations(m.system, pt, tau)));
        }
    }
    return {worst <= kTol, "max err " + fmt(worst) + " over " + std::to_string(kDraws) + " draws/system, tol 1e-9"};
}

// ---- 2 -------------------------------------------------------------------

Verdict representation_equivalence() {
    constexpr int kDraws = 500;
    constexpr double kTol = 1e-9;
    double worst = 0.0;
    for (auto kind : kAll) {
        for (int i = 0; i < kDraws; ++i) {
            const auto m = random_model(kind);
            const PhasePoint pt{uniform(-5, 5), uniform(-5, 5)};
            const Squeeze z{uniform(0, 2), uniform(0, 2 * kPi)};
            worst = std::max(worst, route_error(m, pt, z, uniform(0, 10)));
        }
    }
    return {worst <= kTol, "max err " + fmt(worst) + " over " + std::to_string(kDraws) + " draws/system, tol 1e-9"};
}

// ---- 3 -------------------------------------------------------------------

struct TypoCheck {
    std::string name;
    double oracle_vs_corrected;
    double oracle_vs_printed;
};

Verdict uncertainty_regression() {
    constexpr int kDraws = 2000;
    constexpr double kTol = 1e-9;
    // Oracle-based typo checks: the corrected form agrees within the oracle
    // tolerance, the printed one misses by more than 100 times that.
    constexpr double kAgree = 1e-4, kDisagree = 1e-2;
    double worst = 0.0;
    for (auto kind : kAll) {
        for (int i = 0; i < kDraws; ++i) {
            const auto m = random_model(kind);
            const Squeeze z{uniform(0, 2), uniform(0, 2 * kPi)};
            const double tau = uniform(0, 5);
            worst = std::max(worst, scaled(uncertainty_product(m.cov(z, tau)),
                                           reference_uncertainty_product(m.system, z, tau)));
        }
    }

    const auto grid = oracle::SpatialGrid::symmetric(30.0, 4096);
    const Squeeze z{0.6, 1.0};
    const double tau = 1.0;
    auto grid_moments = [&](const Model& m) {
        const auto b0 = m.basis.evaluate(0.0);
        auto psi = oracle::init_squeezed_wavefunction({0.0, 0.0}, z, b0.xi, b0.xidot, grid);
        return oracle::moments(oracle::propagate(psi, m.system, 5e-4, 2000));
    };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    std::vector<TypoCheck> typos;
    {
        const auto m = model_of(SystemKind::HO, {.omega = 1.0});
        const double got = grid_moments(m).var_p;
        typos.push_back({"HO var_p sign", rel(closed_form::oscillator_variances(1.0, z, tau).var_p, got),
                         rel(closed_form::uncorrected::oscillator_var_p(1.0, z, tau), got)});
    }
    {
        const auto m = model_of(SystemKind::FP, {});
        const double got = grid_moments(m).product();
        typos.push_back({"FP 1/4 factor", rel(closed_form::free_particle_product(z, tau), got),
                         rel(closed_form::uncorrected::free_particle_product(z, tau), got)});
    }
    {
        const auto m = model_of(SystemKind::RO, {.Omega = 1.0});
        const double got = grid_moments(m).product();
        typos.push_back({"RO product", rel(closed_form::repulsive_product(1.0, z, tau), got),
                         rel(closed_form::uncorrected::repulsive_product(1.0, z, tau), got)});
    }
    bool ok = worst <= kTol;
    std::ostringstream os;
    os << "max err " << fmt(worst) << ", tol 1e-9;";
    for (const auto& t : typos) {
        ok = ok && t.oracle_vs_corrected <= kAgree && t.oracle_vs_printed > kDisagree;
        os << " " << t.name << ": corrected " << fmt(t.oracle_vs_corrected) << ", printed "
           << fmt(t.oracle_vs_printed) << ";";
    }
    auto s = os.str();
    s.pop_back();
    return {ok, s};
}

// ---- 4 -------------------------------------------------------------------

Verdict floor_and_limits() {
    constexpr int kDraws = 2000;
    constexpr double kFloorSlack = 1e-12, kTol = 1e-10;
    double floor_min = 1.0, worst = 0.0;
    for (auto kind : kAll) {
        for (int i = 0; i < kDraws; ++i) {
            const auto m = random_model(kind);
            const Squeeze z{uniform(0, 2), uniform(0, 2 * kPi)};
            const double tau = uniform(0, 10);
            floor_min = std::min(floor_min, uncertainty_product(m.cov(z, tau)));
            worst = std::max(worst, scaled(uncertainty_product(m.cov({0.0, z.theta}, tau)),
                                           coherent_product(m.system, tau)));
        }
    }
    return {floor_min >= 0.25 - kFloorSlack && worst <= kTol,
            "min product " + fmt(floor_min) + ", coherent-limit err " + fmt(worst) + ", tol 1e-10"};
}

// ---- 5 -------------------------------------------------------------------

Verdict oracle_agreement() {
    constexpr int kPerSystem = 3;
    constexpr double kAbsTol = 1e-5, kRelTol = 1e-4;
    constexpr double kDt = 5e-4;
    constexpr double kRmax = 1.5;
    const auto grid = oracle::SpatialGrid::symmetric(30.0, 4096);
    double xp = 0.0, var = 0.0, r_seen = 0.0;
    bool ok = true;
    std::ostringstream skipped;
    for (auto kind : kAll) {
        const double horizon = kind == SystemKind::RO ? 2.0 : 5.0;
        const auto times = cli::output_times(horizon, 0.5);
        int done = 0, attempts = 0;
        for (; attempts < 2000 && done < kPerSystem; ++attempts) {
            const auto m = kind == SystemKind::RO ? random_model(kind, 0.5, 1.5) : random_model(kind, 0.5, 2.0);
            const PhasePoint pt{uniform(-3, 3), uniform(-3, 3)};
            const Squeeze z{uniform(0, kRmax), uniform(0, 2 * kPi)};
            if (!cli::oracle_admissible(m, pt, z, grid, times)) continue;
            const auto d = cli::oracle_deviation(m, pt, z, grid, kDt, times);
            xp = std::max({xp, d.x_abs, d.p_abs});
            var = std::max({var, d.var_x_rel, d.var_p_rel});
            r_seen = std::max(r_seen, z.r);
            ++done;
        }
        if (done < kPerSystem) {
            ok = false;
            skipped << " " << to_string(kind) << " only " << done << " admissible;";
        }
    }
    // Edge of the squeeze range. Only the oscillators keep an r = 1.5 packet
    // resolved on this grid over the whole horizon; e^{2r} = 20 in width.
    const auto times = cli::output_times(5.0, 0.5);
    for (const auto& m : {model_of(SystemKind::HO, {.omega = 1.8}),
                          model_of(SystemKind::DHO, {.omega = 1.8, .kappa = 0.5})}) {
        const PhasePoint pt{0.5, 0.0};
        const Squeeze z{kRmax, 0.7};
        if (!cli::oracle_admissible(m, pt, z, grid, times)) {
            ok = false;
            skipped << " edge case " << to_string(m.system.kind()) << " not admissible;";
            continue;
        }
        const auto d = cli::oracle_deviation(m, pt, z, grid, kDt, times);
        xp = std::max({xp, d.x_abs, d.p_abs});
        var = std::max({var, d.var_x_rel, d.var_p_rel});
        r_seen = std::max(r_seen, z.r);
    }
    ok = ok && xp <= kAbsTol && var <= kRelTol;
    return {ok, "means abs " + fmt(xp) + " (tol 1e-5), variances rel " + fmt(var) +
                    " (tol 1e-4), largest r " + fmt(r_seen) + skipped.str()};
}

// ---- 6 -------------------------------------------------------------------

Verdict generic_path() {
    constexpr int kModels = 12, kPoints = 25;
    constexpr double kTol = 1e-7;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, floor_min = 1.0;
    for (auto kind : kAll) {
        for (int i = 0; i < kModels; ++i) {
            const auto ref = random_model(kind);
            const auto gen = generic_twin(ref);
            for (int k = 0; k < kPoints; ++k) {
                const PhasePoint pt{uniform(-5, 5), uniform(-5, 5)};
                const Squeeze z{uniform(0, 2), uniform(0, 2 * kPi)};
                const double tau = uniform(0, 10), t5 = uniform(0, 5);
                e1 = std::max(e1, scaled(gen.expect(pt, tau), reference_expectations(ref.system, pt, tau)));
                e2 = std::max(e2, route_error(gen, pt, z, tau));
                e3 = std::max(e3, scaled(uncertainty_product(gen.cov(z, t5)),
                                         reference_uncertainty_product(ref.system, z, t5)));
                floor_min = std::min(floor_min, uncertainty_product(gen.cov(z, tau)));
                e4 = std::max(e4, scaled(uncertainty_product(gen.cov({0.0, z.theta}, tau)),
                                         coherent_product(ref.system, tau)));
            }
        }
    }
    const bool ok = std::max({e1, e2, e3, e4}) <= kTol && floor_min >= 0.25 - kTol;
    return {ok, "expectations " + fmt(e1) + ", routes " + fmt(e2) + ", products " + fmt(e3) +
                    ", coherent " + fmt(e4) + ", min product " + fmt(floor_min) + ", tol 1e-7"};
}

// ---- 7 -------------------------------------------------------------------

SystemParams ladder_params(SystemKind kind) {
    switch (kind) {
    case SystemKind::HO: return {.omega = 1.3};
    case SystemKind::LP: return {.kappa = 1.5};
    case SystemKind::DHO: return {.omega = 0.8, .kappa = 2.0};
    default: return {};
    }
}

Verdict algebraic_structure() {
    constexpr double kTol = 1e-6;
    constexpr double kDt = 5e-4;
    const auto grid = oracle::SpatialGrid::symmetric(30.0, 4096);
    using oracle::Ladder;
    double annihilate = 0.0, commutator = 0.0;
    for (auto kind : kLadderSystems) {
        const auto m = model_of(kind, ladder_params(kind));
        // Extremal state: alpha = 0, no squeeze.
        const auto start = initial_point(SqueezeParameters{}, m.basis, m.driving);
        const auto b0 = m.basis.evaluate(0.0);
        auto psi = oracle::init_squeezed_wavefunction(start, {}, b0.xi, b0.xidot, grid);
        for (double tau : {0.0, 1.0, 2.5}) {
            const auto steps = static_cast<std::size_t>(std::llround((tau - psi.tau) / kDt));
            if (steps) psi = oracle::propagate(psi, m.system, kDt, steps);
            annihilate = std::max(annihilate, oracle::l2_norm(oracle::ladder_apply(psi, m.basis, m.driving, tau, Ladder::lower)));
        }
        for (int i = 0; i < 4; ++i) {
            const double tau = uniform(0, 3);
            const double vx = uniform(0.5, 2), c = uniform(-0.5, 0.5);
            const auto f = oracle::gaussian_wavefunction({uniform(-2, 2), uniform(-2, 2)},
                                                         {vx, (0.25 + c * c) / vx, c}, grid);
            auto apply = [&](const oracle::GridWavefunction& g, Ladder a, Ladder b) {
                return oracle::ladder_apply(oracle::ladder_apply(g, m.basis, m.driving, tau, a), m.basis,
                                            m.driving, tau, b);
            };
            const auto lr = apply(f, Ladder::raise, Ladder::lower);
            const auto rl = apply(f, Ladder::lower, Ladder::raise);
            auto comm = f;
            for (std::size_t j = 0; j < f.psi.size(); ++j) comm.psi[j] = lr.psi[j] - rl.psi[j];
            commutator = std::max(commutator, oracle::l2_distance(comm, f));
        }
    }
    return {annihilate <= kTol && commutator <= kTol,
            "max |J- psi_ext| " + fmt(annihilate) + ", max |[J-,J+]f - f| " + fmt(commutator) + ", tol 1e-6"};
}

// ---- 8 -------------------------------------------------------------------

Verdict ehrenfest() {
    constexpr int kDraws = 500;
    constexpr double kH = 1e-4, kTol = 1e-6;
    double worst = 0.0;
    for (auto kind : kAll) {
        for (int i = 0; i < kDraws; ++i) {
            const auto m = random_model(kind);
            const PhasePoint pt{uniform(-5, 5), uniform(-5, 5)};
            const double tau = uniform(kH, 10);
            const auto lo = m.expect(pt, tau - kH), mid = m.expect(pt, tau), hi = m.expect(pt, tau + kH);
            const double force = -2.0 * m.system.g2().eval(tau) * mid.x - m.system.g1().eval(tau);
            worst = std::max({worst, scaled((hi.x - lo.x) / (2 * kH), mid.p),
                              scaled((hi.p - lo.p) / (2 * kH), force)});
        }
    }
    return {worst <= kTol, "max err " + fmt(worst) + " at h=1e-4, tol 1e-6"};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double time_limit;  // seconds; 0 = none
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "catalog reproduction", catalog_reproduction, 5.0},
        {2, "representation equivalence", representation_equivalence, 5.0},
        {3, "uncertainty regression", uncertainty_regression, 0.0},
        {4, "uncertainty floor and coherent limits", floor_and_limits, 0.0},
        {5, "oracle agreement", oracle_agreement, 60.0},
        {6, "generic-coefficient path", generic_path, 0.0},
        {7, "algebraic structure", algebraic_structure, 0.0},
        {8, "Ehrenfest property", ehrenfest, 0.0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = v.pass;
        std::string timing = fmt(secs) + " s";
        if (c.time_limit > 0.0) {
            timing += " (limit " + fmt(c.time_limit) + " s)";
            pass = pass && secs < c.time_limit;
        }
        if (!pass) ++failed;
        std::printf("%s  %d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
