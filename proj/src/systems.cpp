#include "sqz/systems.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <sstream>

namespace sqz {

std::string_view to_string(SystemKind kind) {
    switch (kind) {
    case SystemKind::HO: return "HO";
    case SystemKind::FP: return "FP";
    case SystemKind::LP: return "LP";
    case SystemKind::DHO: return "DHO";
    case SystemKind::RO: return "RO";
    case SystemKind::custom: return "custom";
    }
    return "?";
}

SystemKind parse_system_kind(std::string_view name) {
    for (auto k : {SystemKind::HO, SystemKind::FP, SystemKind::LP, SystemKind::DHO, SystemKind::RO,
                   SystemKind::custom})
        if (name == to_string(k)) return k;
    throw DomainError("unknown system kind '" + std::string(name) + "'");
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

double positive(const std::optional<double>& v, const char* name, SystemKind kind) {
    require(v.has_value(), std::string(to_string(kind)) + " requires " + name);
    require(std::isfinite(*v) && *v > 0.0, std::string(name) + " must be positive");
    return *v;
}

double finite(const std::optional<double>& v, const char* name, SystemKind kind) {
    require(v.has_value(), std::string(to_string(kind)) + " requires " + name);
    require(std::isfinite(*v), std::string(name) + " must be finite");
    return *v;
}

} // namespace

SystemSpec make_system(SystemKind kind, const SystemParams& params) {
    const bool wants_omega = kind == SystemKind::HO || kind == SystemKind::DHO;
    const bool wants_Omega = kind == SystemKind::RO;
    const bool wants_kappa = kind == SystemKind::LP || kind == SystemKind::DHO;
    const bool wants_expr = kind == SystemKind::custom;
    const std::string name(to_string(kind));
    require(wants_omega || !params.omega, name + " does not take omega");
    require(wants_Omega || !params.Omega, name + " does not take Omega");
    require(wants_kappa || !params.kappa, name + " does not take kappa");
    require(wants_expr || (!params.g2 && !params.g1 && !params.g0),
            name + " does not take coefficient expressions");

    SystemSpec s;
    s.kind_ = kind;
    switch (kind) {
    case SystemKind::HO:
        s.omega_ = positive(params.omega, "omega", kind);
        s.g2_ = CoefficientFn::constant(0.5 * s.omega_ * s.omega_);
        break;
    case SystemKind::FP: break;
    case SystemKind::LP:
        s.kappa_ = finite(params.kappa, "kappa", kind);
        s.g1_ = CoefficientFn::constant(0.5 * s.kappa_);
        break;
    case SystemKind::DHO:
        s.omega_ = positive(params.omega, "omega", kind);
        s.kappa_ = finite(params.kappa, "kappa", kind);
        s.g2_ = CoefficientFn::constant(0.5 * s.omega_ * s.omega_);
        s.g1_ = CoefficientFn::constant(0.5 * s.kappa_);
        break;
    case SystemKind::RO:
        s.Omega_ = positive(params.Omega, "Omega", kind);
        s.g2_ = CoefficientFn::constant(-0.5 * s.Omega_ * s.Omega_);
        break;
    case SystemKind::custom:
        require(params.g2.has_value(), "custom system requires a g2 expression");
        s.g2_ = expr::parse(*params.g2);
        if (params.g1) s.g1_ = expr::parse(*params.g1);
        if (params.g0) s.g0_ = expr::parse(*params.g0);
        break;
    }
    s.drive0_ = s.g1_.eval(0.0);
    return s;
}

std::string SystemSpec::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    switch (kind_) {
    case SystemKind::HO: os << "(omega=" << omega_ << ")"; break;
    case SystemKind::LP: os << "(kappa=" << kappa_ << ")"; break;
    case SystemKind::DHO: os << "(omega=" << omega_ << ", kappa=" << kappa_ << ")"; break;
    case SystemKind::RO: os << "(Omega=" << Omega_ << ")"; break;
    case SystemKind::custom:
        os << "(g2=" << g2_.to_string() << ", g1=" << g1_.to_string() << ", g0=" << g0_.to_string()
           << ")";
        break;
    case SystemKind::FP: break;
    }
    return os.str();
}

PhasePoint reference_expectations(const SystemSpec& system, PhasePoint init, double tau) {
    const double x0 = init.x, p0 = init.p;
    switch (system.kind()) {
    case SystemKind::HO: {
        const double w = system.omega(), c = std::cos(w * tau), s = std::sin(w * tau);
        return {(p0 * s + w * x0 * c) / w, p0 * c - w * x0 * s};
    }
    case SystemKind::FP: return {x0 + p0 * tau, p0};
    case SystemKind::LP: {
        const double k = system.kappa();
        return {x0 + p0 * tau - 0.25 * k * tau * tau, p0 - 0.5 * k * tau};
    }
    case SystemKind::DHO: {
        const double w = system.omega(), k = system.kappa();
        const double c = std::cos(w * tau), s = std::sin(w * tau);
        return {(p0 * s + w * x0 * c) / w + k / (2.0 * w * w) * (c - 1.0),
                p0 * c - w * x0 * s - k / (2.0 * w) * s};
    }
    case SystemKind::RO: {
        const double W = system.Omega(), c = std::cosh(W * tau), s = std::sinh(W * tau);
        return {(p0 * s + W * x0 * c) / W, p0 * c + W * x0 * s};
    }
    case SystemKind::custom: break;
    }
    throw NotDefinedError("no closed-form trajectory for custom systems");
}

} // namespace sqz
