#include "sqz/phase_space.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <numbers>

namespace sqz {

namespace {

constexpr double kPi = std::numbers::pi;

void check_squeeze(Squeeze z) {
    if (!(z.r >= 0.0) || !std::isfinite(z.r)) throw DomainError("squeeze magnitude r must be >= 0");
    if (!std::isfinite(z.theta)) throw DomainError("squeeze phase must be finite");
}

// Components A, B with sqrt(2)|alpha| (cos delta, sin delta) = (A, B) in the (alpha, z) form.
std::array<double, 2> alpha_components(InitialPhasePoint pt, const BasisSample& b0,
                                       const DrivingIntegrals& d) {
    return {b0.chi2dot * pt.x - b0.chi2 * pt.p - d.C2_0(),
            b0.chi1 * pt.p - b0.chi1dot * pt.x + d.C1_0()};
}

SqueezeParameters from_cartesian(double u, double v, Squeeze z, Representation rep) {
    SqueezeParameters out;
    out.alpha_abs = std::hypot(u, v);
    out.degenerate = out.alpha_abs == 0.0;
    out.delta = out.degenerate ? 0.0 : principal_angle(std::atan2(v, u));
    out.r = z.r;
    out.theta = principal_angle(z.theta);
    out.rep = rep;
    return out;
}

cplx squeezed(cplx a, Squeeze z) {
    return a * std::cosh(z.r) - std::conj(a) * std::polar(1.0, z.theta) * std::sinh(z.r);
}

} // namespace

double principal_angle(double angle) {
    double a = std::remainder(angle, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

double SqueezeParameters::s() const { return std::exp(r); }

Symplectic2 transfer_matrix(const AuxiliaryBasis& basis, double tau) {
    const auto b0 = basis.evaluate(0.0);
    const auto b = basis.evaluate(tau);
    return {b.chi1 * b0.chi2dot - b.chi2 * b0.chi1dot, b.chi2 * b0.chi1 - b.chi1 * b0.chi2,
            b.chi1dot * b0.chi2dot - b.chi2dot * b0.chi1dot,
            b.chi2dot * b0.chi1 - b.chi1dot * b0.chi2};
}

PhasePoint driven_offset(const BasisSample& b, const std::array<double, 2>& c) {
    return {b.chi1 * c[1] - b.chi2 * c[0], b.chi1dot * c[1] - b.chi2dot * c[0]};
}

PhasePoint expect_xp_from_initial(const AuxiliaryBasis& basis, const DrivingIntegrals& driving,
                                  InitialPhasePoint point, double tau) {
    const auto hom = transfer_matrix(basis, tau).apply(point);
    const auto off = driven_offset(basis.evaluate(tau), driving.c(tau));
    return {hom.x + off.x, hom.p + off.p};
}

SqueezeParameters params_alpha_z(InitialPhasePoint point, const AuxiliaryBasis& basis,
                                 const DrivingIntegrals& driving, Squeeze z) {
    check_squeeze(z);
    const auto ab = alpha_components(point, basis.evaluate(0.0), driving);
    const double k = 1.0 / std::sqrt(2.0);
    return from_cartesian(k * ab[0], k * ab[1], z, Representation::alpha_z);
}

SqueezeParameters solve_alpha_given_z(InitialPhasePoint point, Squeeze z,
                                      const AuxiliaryBasis& basis,
                                      const DrivingIntegrals& driving) {
    check_squeeze(z);
    const auto ab = alpha_components(point, basis.evaluate(0.0), driving);
    const double k = 1.0 / std::sqrt(2.0);
    const double rhs1 = k * ab[0], rhs2 = k * ab[1];
    // [[ch - c sh, -s sh], [-s sh, ch + c sh]] (u, v) = (rhs1, rhs2); det = 1.
    const double ch = std::cosh(z.r), sh = std::sinh(z.r);
    const double c = std::cos(z.theta), s = std::sin(z.theta);
    const double u = (ch + c * sh) * rhs1 + s * sh * rhs2;
    const double v = s * sh * rhs1 + (ch - c * sh) * rhs2;
    return from_cartesian(u, v, z, Representation::z_alpha);
}

InitialPhasePoint initial_point(const SqueezeParameters& params, const AuxiliaryBasis& basis,
                                const DrivingIntegrals& driving) {
    check_squeeze(params.squeeze());
    const double a = std::sqrt(2.0) * params.alpha_abs;
    double u = a * std::cos(params.delta), v = a * std::sin(params.delta);
    if (params.rep == Representation::z_alpha) {
        const double ch = std::cosh(params.r), sh = std::sinh(params.r);
        const double c = std::cos(params.theta), s = std::sin(params.theta);
        const double uu = (ch - c * sh) * u - s * sh * v;
        const double vv = -s * sh * u + (ch + c * sh) * v;
        u = uu;
        v = vv;
    }
    // (u, v) = (A, B); invert the unit-Wronskian map (x0, p0) -> (A, B).
    const auto b0 = basis.evaluate(0.0);
    const double A = u + driving.C2_0(), B = v - driving.C1_0();
    return {b0.chi1 * A + b0.chi2 * B, b0.chi1dot * A + b0.chi2dot * B};
}

PhasePoint expect_xp_alpha_z(const SqueezeParameters& params, const AuxiliaryBasis& basis,
                             const DrivingIntegrals& driving, double tau) {
    if (params.rep != Representation::alpha_z)
        throw DomainError("expect_xp_alpha_z needs (alpha, z) parameters");
    const auto b = basis.evaluate(tau);
    const auto C = driving.C(tau);
    const double a = std::sqrt(2.0) * params.alpha_abs;
    const double cd = std::cos(params.delta), sd = std::sin(params.delta);
    return {a * (b.chi1 * cd + b.chi2 * sd) + b.chi1 * C[1] - b.chi2 * C[0],
            a * (b.chi1dot * cd + b.chi2dot * sd) + b.chi1dot * C[1] - b.chi2dot * C[0]};
}

PhasePoint expect_xp_z_alpha(const SqueezeParameters& params, const AuxiliaryBasis& basis,
                             const DrivingIntegrals& driving, double tau) {
    if (params.rep != Representation::z_alpha)
        throw DomainError("expect_xp_z_alpha needs (z, alpha) parameters");
    const auto b = basis.evaluate(tau);
    const auto C = driving.C(tau);
    const double a = std::sqrt(2.0) * params.alpha_abs;
    const double d = params.delta, th = params.theta;
    const double ch = std::cosh(params.r), sh = std::sinh(params.r);
    const double f1 = std::cos(d) * ch - std::cos(th - d) * sh;
    const double f2 = std::sin(d) * ch - std::sin(th - d) * sh;
    return {a * (b.chi1 * f1 + b.chi2 * f2) + b.chi1 * C[1] - b.chi2 * C[0],
            a * (b.chi1dot * f1 + b.chi2dot * f2) + b.chi1dot * C[1] - b.chi2dot * C[0]};
}

Covariance covariance(const AuxiliaryBasis& basis, Squeeze z, double tau) {
    check_squeeze(z);
    const auto b = basis.evaluate(tau);
    const cplx a = squeezed(b.xi, z);
    const cplx ad = squeezed(b.xidot, z);
    return {std::norm(a), std::norm(ad), (a * std::conj(ad)).real()};
}

Covariance covariance_propagated(const AuxiliaryBasis& basis, Squeeze z, double tau) {
    const Covariance s0 = covariance(basis, z, 0.0);
    const Symplectic2 m = transfer_matrix(basis, tau);
    // M S M^T with S = [[vx, c], [c, vp]].
    const double a11 = m.m11 * s0.var_x + m.m12 * s0.cov_xp;
    const double a12 = m.m11 * s0.cov_xp + m.m12 * s0.var_p;
    const double a21 = m.m21 * s0.var_x + m.m22 * s0.cov_xp;
    const double a22 = m.m21 * s0.cov_xp + m.m22 * s0.var_p;
    return {a11 * m.m11 + a12 * m.m12, a21 * m.m21 + a22 * m.m22, a11 * m.m21 + a12 * m.m22};
}

double uncertainty_product(const Covariance& cov) { return cov.var_x * cov.var_p; }

namespace closed_form {

Covariance oscillator_variances(double omega, Squeeze z, double tau) {
    const double theta_osc = z.theta + kPi;
    const double C = std::cosh(2.0 * z.r), S = std::sinh(2.0 * z.r);
    const double c = std::cos(2.0 * omega * tau - theta_osc);
    Covariance out;
    out.var_x = (C + c * S) / (2.0 * omega);
    out.var_p = 0.5 * omega * (C - c * S);
    out.cov_xp = std::nan("");
    return out;
}

double oscillator_product(double omega, Squeeze z, double tau) {
    const double s = std::sin(2.0 * omega * tau - z.theta), sh = std::sinh(2.0 * z.r);
    return 0.25 * (1.0 + s * s * sh * sh);
}

Covariance free_particle_variances(Squeeze z, double tau) {
    const double C = std::cosh(2.0 * z.r), S = std::sinh(2.0 * z.r);
    const double c = std::cos(z.theta), s = std::sin(z.theta);
    Covariance out;
    out.var_x = 0.5 * (1.0 + tau * tau) * C - 0.5 * ((1.0 - tau * tau) * c + 2.0 * tau * s) * S;
    out.var_p = 0.5 * (C + c * S);
    out.cov_xp = std::nan("");
    return out;
}

namespace {

double free_particle_product_impl(Squeeze z, double tau, double bracket_factor) {
    const double t2 = tau * tau;
    const double c = std::cos(z.theta), s = std::sin(z.theta);
    const double sh2 = std::sinh(2.0 * z.r);
    const double first = 0.25 * (1.0 + t2 + (t2 * c - tau * s) * std::sinh(4.0 * z.r));
    const double bracket =
        0.5 + 1.5 * t2 - 0.5 * (1.0 - t2) * std::cos(2.0 * z.theta) - tau * std::sin(2.0 * z.theta);
    return first + bracket_factor * bracket * sh2 * sh2;
}

double repulsive_product_impl(double Omega, Squeeze z, double tau, bool corrected) {
    const double s2 = std::sinh(2.0 * Omega * tau), c2 = std::cosh(2.0 * Omega * tau);
    const double sh2 = std::sinh(2.0 * z.r);
    const double cross = corrected ? s2 * c2 : s2 * s2;
    const double cos_sign = corrected ? -1.0 : 1.0;
    return 0.25 * (1.0 + s2 * s2) - 0.25 * cross * std::sin(z.theta) * std::sinh(4.0 * z.r) +
           0.125 * (1.0 + 3.0 * s2 * s2 + cos_sign * c2 * c2 * std::cos(2.0 * z.theta)) * sh2 * sh2;
}

} // namespace

double free_particle_product(Squeeze z, double tau) {
    return free_particle_product_impl(z, tau, 0.25);
}

double repulsive_product(double Omega, Squeeze z, double tau) {
    return repulsive_product_impl(Omega, z, tau, true);
}

namespace uncorrected {

double oscillator_var_p(double omega, Squeeze z, double tau) {
    const double theta_osc = z.theta + kPi;
    const double c = std::cos(2.0 * omega * tau - theta_osc);
    return 0.5 * omega * (std::cosh(2.0 * z.r) + c * std::sinh(2.0 * z.r));
}

double free_particle_product(Squeeze z, double tau) {
    return free_particle_product_impl(z, tau, 1.0);
}

double repulsive_product(double Omega, Squeeze z, double tau) {
    return repulsive_product_impl(Omega, z, tau, false);
}

} // namespace uncorrected
} // namespace closed_form

double reference_uncertainty_product(const SystemSpec& system, Squeeze z, double tau) {
    switch (system.kind()) {
    case SystemKind::HO:
    case SystemKind::DHO: return closed_form::oscillator_product(system.omega(), z, tau);
    case SystemKind::FP:
    case SystemKind::LP: return closed_form::free_particle_product(z, tau);
    case SystemKind::RO: return closed_form::repulsive_product(system.Omega(), z, tau);
    case SystemKind::custom: break;
    }
    throw NotDefinedError("no closed-form uncertainty product for custom systems");
}

} // namespace sqz
