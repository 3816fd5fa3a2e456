#include "support.hpp"

#include "sqz/errors.hpp"
#include "sqz/model.hpp"

using namespace sqz;

namespace {

constexpr SystemKind kAll[] = {SystemKind::HO, SystemKind::FP, SystemKind::LP, SystemKind::DHO, SystemKind::RO};

Model random_model(SystemKind kind, std::mt19937_64& rng, double lo = 0.5, double hi = 3.0) {
    SystemParams p;
    if (kind == SystemKind::HO || kind == SystemKind::DHO) p.omega = test::uniform(rng, lo, hi);
    if (kind == SystemKind::LP || kind == SystemKind::DHO) p.kappa = test::uniform(rng, lo, hi);
    if (kind == SystemKind::RO) p.Omega = test::uniform(rng, lo, hi);
    return build_model(make_system(kind, p));
}

Model model_of(SystemKind kind, SystemParams p = {}) { return build_model(make_system(kind, p)); }

} // namespace

TEST_SUITE("phase_space") {

TEST_CASE("transfer matrix examples") {
    auto m = transfer_matrix(model_of(SystemKind::FP).basis, 3.0);
    CHECK(m.m11 == 1.0);
    CHECK(m.m12 == 3.0);
    CHECK(m.m21 == 0.0);
    CHECK(m.m22 == 1.0);

    m = transfer_matrix(model_of(SystemKind::HO, {.omega = 1.0}).basis, test::pi / 2);
    CHECK_NEAR(m.m11, 0.0, 1e-15);
    CHECK_NEAR(m.m12, 1.0, 1e-15);
    CHECK_NEAR(m.m21, -1.0, 1e-15);
    CHECK_NEAR(m.m22, 0.0, 1e-15);

    m = transfer_matrix(model_of(SystemKind::RO, {.Omega = 1.0}).basis, 1.0);
    CHECK_NEAR(m.m11, std::cosh(1.0), 1e-15);
    CHECK_NEAR(m.m12, std::sinh(1.0), 1e-15);
    CHECK_NEAR(m.m21, std::sinh(1.0), 1e-15);
    CHECK_NEAR(m.m22, std::cosh(1.0), 1e-15);
}

TEST_CASE("symplecticity over 1000 random times") {
    std::mt19937_64 rng(1);
    for (auto kind : kAll) {
        const auto m = random_model(kind, rng);
        for (int i = 0; i < 1000; ++i) {
            const auto M = transfer_matrix(m.basis, test::uniform(rng, 0, 10));
            CHECK(std::abs(M.det() - 1.0) <= 1e-10 * std::max(1.0, std::abs(M.m11 * M.m22)));
        }
    }
}

TEST_CASE("expectation examples") {
    auto e = model_of(SystemKind::LP, {.kappa = 2.0}).expect({0, 0}, 2.0);
    CHECK_NEAR(e.x, -2.0, 1e-14);
    CHECK_NEAR(e.p, -2.0, 1e-14);

    e = model_of(SystemKind::DHO, {.omega = 1.0, .kappa = 2.0}).expect({0, 0}, test::pi);
    CHECK_NEAR(e.x, -2.0, 1e-14);
    CHECK_NEAR(e.p, 0.0, 1e-14);

    e = model_of(SystemKind::HO, {.omega = 1.0}).expect({1, 0}, test::pi / 2);
    CHECK_NEAR(e.x, 0.0, 1e-15);
    CHECK_NEAR(e.p, -1.0, 1e-15);
}

TEST_CASE("(alpha, z) parameters") {
    const auto ho = model_of(SystemKind::HO, {.omega = 1.0});
    auto a = params_alpha_z({1, 1}, ho.basis, ho.driving);
    CHECK_NEAR(a.alpha_abs * a.alpha_abs, 1.0, 1e-15);
    CHECK_NEAR(a.delta, test::pi / 4, 1e-15);
    CHECK(a.rep == Representation::alpha_z);

    const auto fp = model_of(SystemKind::FP);
    a = params_alpha_z({0, 0}, fp.basis, fp.driving);
    CHECK(a.alpha_abs == 0.0);
    CHECK(a.degenerate);
    CHECK(a.delta == 0.0);

    const auto lp = model_of(SystemKind::LP, {.kappa = 4.0});
    a = params_alpha_z({1, 0}, lp.basis, lp.driving);
    CHECK_NEAR(a.alpha_abs * a.alpha_abs, 0.5, 1e-15);
    CHECK_NEAR(a.delta, test::pi, 1e-15);

    a = params_alpha_z({1, 1}, ho.basis, ho.driving, {0.5, 7.0});
    CHECK(a.r == 0.5);
    CHECK(a.theta > -test::pi);
    CHECK(a.theta <= test::pi);
    CHECK_NEAR(a.s(), std::exp(0.5), 1e-15);
    CHECK_THROWS_AS(params_alpha_z({1, 1}, ho.basis, ho.driving, {-0.1, 0.0}), DomainError);
}

TEST_CASE("(z, alpha) parameters") {
    const auto ho = model_of(SystemKind::HO, {.omega = 1.0});
    const auto za = solve_alpha_given_z({1, 0}, {1.0, 0.0}, ho.basis, ho.driving);
    CHECK(za.rep == Representation::z_alpha);
    CHECK_NEAR(za.alpha_abs * std::cos(za.delta), std::exp(1.0) / std::sqrt(2.0), 1e-14);
    CHECK_NEAR(za.alpha_abs * std::sin(za.delta), 0.0, 1e-14);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const PhasePoint pt{test::uniform(rng, -3, 3), test::uniform(rng, -3, 3)};
        const Squeeze z{test::uniform(rng, 0, 2), test::uniform(rng, 0, 2 * test::pi)};
        const auto s = solve_alpha_given_z(pt, z, ho.basis, ho.driving);
        const double lhs = s.alpha_abs * s.alpha_abs *
                           (std::cosh(2 * z.r) - std::cos(z.theta - 2 * s.delta) * std::sinh(2 * z.r));
        CHECK_NEAR(lhs, 0.5 * (pt.p * pt.p + pt.x * pt.x), 1e-12);
    }

    // r = 0 reduces to the (alpha, z) parameters.
    const auto az = params_alpha_z({0.3, -1.2}, ho.basis, ho.driving);
    const auto z0 = solve_alpha_given_z({0.3, -1.2}, {0.0, 1.0}, ho.basis, ho.driving);
    CHECK(z0.alpha_abs == az.alpha_abs);
    CHECK(z0.delta == az.delta);
}

TEST_CASE("route examples") {
    std::mt19937_64 rng(8);
    const auto ho = model_of(SystemKind::HO, {.omega = 1.0});
    const auto dho = model_of(SystemKind::DHO, {.omega = 1.0, .kappa = 2.0});
    for (int i = 0; i < 20; ++i) {
        const PhasePoint pt{test::uniform(rng, -3, 3), test::uniform(rng, -3, 3)};
        const double tau = test::uniform(rng, 0, 10);
        auto a = params_alpha_z(pt, ho.basis, ho.driving);
        CHECK_NEAR(expect_xp_alpha_z(a, ho.basis, ho.driving, tau).x,
                   std::sqrt(2.0) * a.alpha_abs * std::cos(tau - a.delta), 1e-12);
        a = params_alpha_z(pt, dho.basis, dho.driving);
        CHECK_NEAR(expect_xp_alpha_z(a, dho.basis, dho.driving, tau).x,
                   std::sqrt(2.0) * a.alpha_abs * std::cos(tau - a.delta) - 1.0, 1e-12);
    }

    const auto fp = model_of(SystemKind::FP);
    const auto za = solve_alpha_given_z({1, 0}, {1.0, test::pi / 2}, fp.basis, fp.driving);
    for (double tau : {0.0, 1.0, 4.0}) {
        const auto e = expect_xp_z_alpha(za, fp.basis, fp.driving, tau);
        CHECK_NEAR(e.x, 1.0, 1e-14);
        CHECK_NEAR(e.p, 0.0, 1e-14);
    }

    // Same (|alpha|, delta) with r = 0: the two forms coincide.
    SqueezeParameters p{1.3, 0.4, 0.0, 2.0, Representation::alpha_z, false};
    auto q = p;
    q.rep = Representation::z_alpha;
    const auto r1 = expect_xp_alpha_z(p, ho.basis, ho.driving, 2.2);
    const auto r2 = expect_xp_z_alpha(q, ho.basis, ho.driving, 2.2);
    CHECK_NEAR(r1.x, r2.x, 1e-15);
    CHECK_NEAR(r1.p, r2.p, 1e-15);
    CHECK_THROWS_AS(expect_xp_alpha_z(q, ho.basis, ho.driving, 1.0), DomainError);
    CHECK_THROWS_AS(expect_xp_z_alpha(p, ho.basis, ho.driving, 1.0), DomainError);
}

TEST_CASE("representation equivalence and round trips") {
    std::mt19937_64 rng(12);
    for (auto kind : kAll) {
        for (int i = 0; i < 200; ++i) {
            const auto m = random_model(kind, rng);
            const PhasePoint pt{test::uniform(rng, -3, 3), test::uniform(rng, -3, 3)};
            const Squeeze z{test::uniform(rng, 0, 2), test::uniform(rng, 0, 2 * test::pi)};
            const double tau = test::uniform(rng, 0, 10);
            const auto az = params_alpha_z(pt, m.basis, m.driving, z);
            const auto za = solve_alpha_given_z(pt, z, m.basis, m.driving);
            const auto r1 = m.expect(pt, tau);
            const auto r2 = expect_xp_alpha_z(az, m.basis, m.driving, tau);
            const auto r3 = expect_xp_z_alpha(za, m.basis, m.driving, tau);
            CHECK_NEAR(r2.x, r1.x, 1e-10);
            CHECK_NEAR(r2.p, r1.p, 1e-10);
            CHECK_NEAR(r3.x, r1.x, 1e-10);
            CHECK_NEAR(r3.p, r1.p, 1e-10);
            const auto back = initial_point(za, m.basis, m.driving);
            CHECK_NEAR(back.x, pt.x, 1e-12);
            CHECK_NEAR(back.p, pt.p, 1e-12);
        }
    }
}

TEST_CASE("covariance examples") {
    const auto fp = model_of(SystemKind::FP);
    auto c = fp.cov({1.0, 0.0}, 0.0);
    CHECK_NEAR(c.var_x, std::exp(-2.0) / 2, 1e-15);
    CHECK_NEAR(c.var_p, std::exp(2.0) / 2, 1e-14);

    const auto ho = model_of(SystemKind::HO, {.omega = 1.0});
    const double sh2 = std::sinh(2.0);
    CHECK_NEAR(uncertainty_product(ho.cov({1.0, 0.0}, test::pi / 8)), 0.25 * (1 + 0.5 * sh2 * sh2), 1e-12);
    CHECK_NEAR(uncertainty_product(ho.cov({1.0, 0.0}, test::pi / 8)), 1.894, 1e-3);

    std::mt19937_64 rng(6);
    for (auto kind : kAll) {
        const auto m = random_model(kind, rng);
        for (int i = 0; i < 20; ++i) {
            const double tau = test::uniform(rng, 0, 5);
            const auto b = m.basis.evaluate(tau);
            c = m.cov({0.0, test::uniform(rng, 0, 6)}, tau);
            CHECK_NEAR(c.var_x, b.phi3 / 2, 1e-12);
            CHECK_NEAR(c.var_p, std::norm(b.xidot), 1e-12);
        }
    }
    // sigma: cov_xp(0) = -1/2 sin(theta) sinh(2r) for FP.
    const Squeeze z{0.8, 1.1};
    CHECK_NEAR(fp.cov(z, 0.0).cov_xp, -0.5 * std::sin(z.theta) * std::sinh(2 * z.r), 1e-15);
}

TEST_CASE("purity and the two covariance routes") {
    std::mt19937_64 rng(14);
    for (auto kind : kAll) {
        for (int i = 0; i < 200; ++i) {
            const auto m = random_model(kind, rng);
            const Squeeze z{test::uniform(rng, 0, 2), test::uniform(rng, 0, 2 * test::pi)};
            const double tau = test::uniform(rng, 0, 5);
            const auto a = covariance(m.basis, z, tau), b = covariance_propagated(m.basis, z, tau);
            const double scale = std::max(1.0, a.var_x * a.var_p);
            CHECK(std::abs(a.determinant() - 0.25) <= 1e-9 * scale);
            CHECK_NEAR(b.var_x, a.var_x, 1e-9);
            CHECK_NEAR(b.var_p, a.var_p, 1e-9);
            CHECK_NEAR(b.cov_xp, a.cov_xp, 1e-9);
        }
    }
}

TEST_CASE("reference products: examples") {
    CHECK(reference_uncertainty_product(make_system(SystemKind::HO, {.omega = 1.0}), {0.0, 1.0}, 2.0) == 0.25);
    CHECK(reference_uncertainty_product(make_system(SystemKind::FP), {0.0, 0.3}, 1.0) == 0.5);
    CHECK(reference_uncertainty_product(make_system(SystemKind::RO, {.Omega = 1.0}), {0.0, 0.3}, 0.0) == 0.25);
    CHECK_THROWS_AS(reference_uncertainty_product(make_system(SystemKind::custom, {.g2 = std::string("1")}), {}, 0.0),
                    NotDefinedError);
}

TEST_CASE("regression against the closed-form products") {
    std::mt19937_64 rng(15);
    for (auto kind : kAll) {
        for (int i = 0; i < 500; ++i) {
            const auto m = random_model(kind, rng);
            const Squeeze z{test::uniform(rng, 0, 2), test::uniform(rng, 0, 2 * test::pi)};
            const double tau = test::uniform(rng, 0, 5);
            CHECK_NEAR(uncertainty_product(m.cov(z, tau)), reference_uncertainty_product(m.system, z, tau), 1e-9);
        }
    }
}

TEST_CASE("closed-form variances in the oscillator and free-particle conventions") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 200; ++i) {
        const double w = test::uniform(rng, 0.5, 3);
        const auto ho = model_of(SystemKind::HO, {.omega = w});
        const auto fp = model_of(SystemKind::FP);
        const Squeeze z{test::uniform(rng, 0, 2), test::uniform(rng, 0, 2 * test::pi)};
        const double tau = test::uniform(rng, 0, 5);
        auto c = ho.cov(z, tau);
        auto v = closed_form::oscillator_variances(w, z, tau);
        CHECK_NEAR(v.var_x, c.var_x, 1e-10);
        CHECK_NEAR(v.var_p, c.var_p, 1e-10);
        c = fp.cov(z, tau);
        v = closed_form::free_particle_variances(z, tau);
        CHECK_NEAR(v.var_x, c.var_x, 1e-10);
        CHECK_NEAR(v.var_p, c.var_p, 1e-10);
    }
}

TEST_CASE("printed closed forms disagree with the covariance") {
    const Squeeze z{0.8, 0.9};
    const double tau = 0.6;
    const auto ho = model_of(SystemKind::HO, {.omega = 1.4});
    CHECK(std::abs(closed_form::uncorrected::oscillator_var_p(1.4, z, tau) - ho.cov(z, tau).var_p) > 0.1);
    const auto fp = model_of(SystemKind::FP);
    CHECK(std::abs(closed_form::uncorrected::free_particle_product(z, tau) - uncertainty_product(fp.cov(z, tau))) > 0.1);
    const auto ro = model_of(SystemKind::RO, {.Omega = 1.0});
    CHECK(std::abs(closed_form::uncorrected::repulsive_product(1.0, z, tau) - uncertainty_product(ro.cov(z, tau))) > 1e-2);
    // All three coincide with the corrected forms at r = 0.
    CHECK_NEAR(closed_form::uncorrected::free_particle_product({0, 1}, 2.0), closed_form::free_particle_product({0, 1}, 2.0), 1e-15);
    CHECK_NEAR(closed_form::uncorrected::repulsive_product(1.0, {0, 1}, 2.0), closed_form::repulsive_product(1.0, {0, 1}, 2.0), 1e-15);
}

TEST_CASE("uncertainty floor and coherent limits") {
    std::mt19937_64 rng(17);
    int n = 0;
    for (int i = 0; i < 2000; ++i) {
        for (auto kind : kAll) {
            const auto m = random_model(kind, rng);
            const Squeeze z{test::uniform(rng, 0, 2), test::uniform(rng, 0, 2 * test::pi)};
            const double tau = test::uniform(rng, 0, 10);
            CHECK(uncertainty_product(m.cov(z, tau)) >= 0.25 - 1e-12);
            ++n;
            const double p0 = uncertainty_product(m.cov({0.0, z.theta}, tau));
            double expected = 0.25;
            if (kind == SystemKind::FP || kind == SystemKind::LP) expected = 0.25 * (1 + tau * tau);
            if (kind == SystemKind::RO) expected = 0.25 * (1 + std::pow(std::sinh(2 * m.system.Omega() * tau), 2));
            CHECK_NEAR(p0, expected, 1e-10);
        }
    }
    CHECK(n == 10000);
}

TEST_CASE("Ehrenfest: means obey the classical equations") {
    std::mt19937_64 rng(18);
    const double h = 1e-4;
    for (auto kind : kAll) {
        for (int i = 0; i < 100; ++i) {
            const auto m = random_model(kind, rng);
            const PhasePoint pt{test::uniform(rng, -3, 3), test::uniform(rng, -3, 3)};
            const double tau = test::uniform(rng, h, 10);
            const auto lo = m.expect(pt, tau - h), mid = m.expect(pt, tau), hi = m.expect(pt, tau + h);
            const double force = -2 * m.system.g2().eval(tau) * mid.x - m.system.g1().eval(tau);
            CHECK_NEAR((hi.x - lo.x) / (2 * h), mid.p, 1e-6);
            CHECK_NEAR((hi.p - lo.p) / (2 * h), force, 1e-6);
        }
    }
}

TEST_CASE("phase-space trajectory shapes") {
    std::mt19937_64 rng(19);
    const PhasePoint pt{1.3, -0.4};
    const double w = 1.7, k = 1.2;
    const auto ho = model_of(SystemKind::HO, {.omega = w});
    const auto fp = model_of(SystemKind::FP);
    const auto lp = model_of(SystemKind::LP, {.kappa = k});
    const auto dho = model_of(SystemKind::DHO, {.omega = w, .kappa = k});
    const auto ro = model_of(SystemKind::RO, {.Omega = w});
    const double e_ho = w * w * pt.x * pt.x + pt.p * pt.p;
    const double shift = k / (2 * w * w);
    const double e_dho = w * w * (pt.x + shift) * (pt.x + shift) + pt.p * pt.p;
    for (int i = 0; i < 100; ++i) {
        const double t = test::uniform(rng, 0, 5);
        auto e = ho.expect(pt, t);
        CHECK_NEAR(w * w * e.x * e.x + e.p * e.p, e_ho, 1e-12);
        e = fp.expect(pt, t);
        CHECK(e.p == pt.p);
        CHECK_NEAR(e.x, pt.x + pt.p * t, 1e-14);
        e = dho.expect(pt, t);
        CHECK_NEAR(w * w * (e.x + shift) * (e.x + shift) + e.p * e.p, e_dho, 1e-12);
        e = ro.expect({pt.x, 0.0}, t);
        // Both terms grow like e^{2 w t}; compare relative to their size.
        const double big = w * w * e.x * e.x + e.p * e.p;
        CHECK(std::abs(w * w * e.x * e.x - e.p * e.p - w * w * pt.x * pt.x) <= 1e-12 * big);
    }
    // LP: <p> linear and <x> quadratic in tau (constant second differences).
    const double dt = 0.5;
    for (int i = 0; i < 10; ++i) {
        const double t = i * dt;
        const auto a = lp.expect(pt, t), b = lp.expect(pt, t + dt), c = lp.expect(pt, t + 2 * dt);
        CHECK_NEAR(c.p - 2 * b.p + a.p, 0.0, 1e-13);
        CHECK_NEAR((c.x - 2 * b.x + a.x) / (dt * dt), -0.5 * k, 1e-12);
    }
}

TEST_CASE("principal angle") {
    CHECK(principal_angle(test::pi) == test::pi);
    CHECK_NEAR(principal_angle(-test::pi), test::pi, 1e-15);
    CHECK_NEAR(principal_angle(3 * test::pi / 2), -test::pi / 2, 1e-15);
    CHECK_NEAR(principal_angle(7.0), 7.0 - 2 * test::pi, 1e-15);
}

}
