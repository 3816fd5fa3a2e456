#include "sqz/driving.hpp"

#include "sqz/errors.hpp"
#include "sqz/quadrature.hpp"

#include <cmath>

namespace sqz {

IntegrationConstants integration_constants(const SystemSpec& system) {
    const double g0 = system.drive_at_origin();
    switch (system.kind()) {
    case SystemKind::HO:
    case SystemKind::FP:
    case SystemKind::RO: return {0.0, 0.0};
    case SystemKind::LP: return {0.0, g0};
    case SystemKind::DHO: return {0.0, -g0 / std::pow(system.omega(), 1.5)};
    case SystemKind::custom: break;
    }
    throw NotDefinedError(
        "integration constants are not defined for custom systems; supply C1_0 and C2_0");
}

DrivingIntegrals driving_integrals(const AuxiliaryBasis& basis, const CoefficientFn& g1,
                                   const SystemSpec& system, double tol,
                                   const DrivingOptions& options) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    DrivingIntegrals d(basis, g1);
    d.tol_ = tol;
    if (options.constants)
        d.constants_ = options.constants;
    else if (is_catalog(system.kind()))
        d.constants_ = integration_constants(system);
    const auto k = g1.constant_value();
    d.zero_ = k && *k == 0.0;
    if (k && basis.source() == AuxiliaryBasis::Source::analytic &&
        options.method == DrivingOptions::Method::automatic) {
        d.closed_ = true;
        d.g_const_ = *k;
    }
    return d;
}

std::array<double, 2> DrivingIntegrals::c(double tau) const {
    if (!(tau >= 0.0 && tau <= basis_.tau_max()))
        throw RangeError("driving integral requested outside the basis domain");
    if (zero_ || tau == 0.0) return {0.0, 0.0};
    if (closed_) {
        const double g = g_const_;
        switch (basis_.shape()) {
        case AuxiliaryBasis::Shape::free: return {g * tau, 0.5 * g * tau * tau};
        case AuxiliaryBasis::Shape::oscillator: {
            const double w = basis_.frequency(), scale = g / std::pow(w, 1.5);
            const double half = std::sin(0.5 * w * tau);
            return {scale * std::sin(w * tau), 2.0 * scale * half * half};
        }
        case AuxiliaryBasis::Shape::repulsive: {
            const double w = basis_.frequency(), scale = g / std::pow(w, 1.5);
            const double half = std::sinh(0.5 * w * tau);
            return {scale * std::sinh(w * tau), 2.0 * scale * half * half};
        }
        }
    }
    std::array<double, 2> out{};
    for (int nu = 0; nu < 2; ++nu) {
        auto integrand = [&](double s) {
            const auto b = basis_.evaluate(s);
            return (nu == 0 ? b.chi1 : b.chi2) * g1_.eval(s);
        };
        out[nu] = quad::integrate(integrand, 0.0, tau, tol_, tol_).value;
    }
    return out;
}

const IntegrationConstants& DrivingIntegrals::constants() const {
    if (!constants_)
        throw NotDefinedError(
            "integration constants are not defined for custom systems; supply C1_0 and C2_0");
    return *constants_;
}

std::array<double, 2> DrivingIntegrals::C(double tau) const {
    const auto& k = constants();
    const auto v = c(tau);
    return {v[0] + k.C1_0, v[1] + k.C2_0};
}

cplx DrivingIntegrals::complex_C(double tau) const {
    const auto v = C(tau);
    return cplx(v[0], v[1]) / std::sqrt(2.0);
}

} // namespace sqz
