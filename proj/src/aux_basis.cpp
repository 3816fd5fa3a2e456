#include "sqz/aux_basis.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <sstream>

namespace sqz {

void BasisInitialConditions::validate() const {
    const double w = chi1_0 * chi2dot_0 - chi2_0 * chi1dot_0;
    if (!(std::abs(w - 1.0) <= 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << "basis initial conditions must have unit Wronskian, got " << w;
        throw DomainError(os.str());
    }
}

BasisInitialConditions BasisInitialConditions::oscillator(double w) {
    if (!(w > 0.0)) throw DomainError("oscillator normalisation needs a positive frequency");
    const double r = std::sqrt(w);
    return {1.0 / r, 0.0, 0.0, r};
}

AuxiliaryBasis analytic_basis(const SystemSpec& system) {
    AuxiliaryBasis b;
    b.source_ = AuxiliaryBasis::Source::analytic;
    switch (system.kind()) {
    case SystemKind::HO:
    case SystemKind::DHO:
        b.shape_ = AuxiliaryBasis::Shape::oscillator;
        b.freq_ = system.omega();
        b.ics_ = BasisInitialConditions::oscillator(b.freq_);
        break;
    case SystemKind::FP:
    case SystemKind::LP:
        b.shape_ = AuxiliaryBasis::Shape::free;
        b.ics_ = {};
        break;
    case SystemKind::RO:
        b.shape_ = AuxiliaryBasis::Shape::repulsive;
        b.freq_ = system.Omega();
        b.ics_ = BasisInitialConditions::oscillator(b.freq_);
        break;
    case SystemKind::custom:
        throw DomainError("custom systems have no closed-form basis; use numeric_basis");
    }
    if (b.shape_ != AuxiliaryBasis::Shape::free && !(b.freq_ > 0.0))
        throw DomainError("basis frequency must be positive");
    return b;
}

AuxiliaryBasis numeric_basis(const CoefficientFn& g2, const BasisInitialConditions& ics,
                             double tau_max, double tol) {
    ics.validate();
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw DomainError("tau_max must be positive");
    ode::Options opt;
    opt.rtol = tol;
    opt.atol = tol;
    const ode::PairState init{{ics.chi1_0, ics.chi2_0}, {ics.chi1dot_0, ics.chi2dot_0}};
    auto sol = ode::integrate_auxiliary([&g2](double t) { return g2.eval(t); }, init, tau_max, opt);

    AuxiliaryBasis b;
    b.source_ = AuxiliaryBasis::Source::numeric;
    b.ics_ = ics;
    b.tau_max_ = tau_max;
    b.dense_ = std::make_shared<const ode::DenseSolution>(std::move(sol));
    return b;
}

BasisSample AuxiliaryBasis::evaluate(double tau) const {
    if (!(tau >= 0.0 && tau <= tau_max_)) {
        std::ostringstream os;
        os << "tau=" << tau << " outside basis domain [0, " << tau_max_ << "]";
        throw RangeError(os.str());
    }
    BasisSample s;
    s.tau = tau;
    if (source_ == Source::numeric) {
        const auto st = (*dense_)(tau);
        s.chi1 = st.a[0];
        s.chi2 = st.a[1];
        s.chi1dot = st.da[0];
        s.chi2dot = st.da[1];
    } else {
        switch (shape_) {
        case Shape::oscillator: {
            const double r = std::sqrt(freq_), c = std::cos(freq_ * tau), sn = std::sin(freq_ * tau);
            s.chi1 = c / r;
            s.chi2 = sn / r;
            s.chi1dot = -r * sn;
            s.chi2dot = r * c;
            break;
        }
        case Shape::free:
            s.chi1 = 1.0;
            s.chi2 = tau;
            s.chi1dot = 0.0;
            s.chi2dot = 1.0;
            break;
        case Shape::repulsive: {
            const double r = std::sqrt(freq_), c = std::cosh(freq_ * tau),
                         sn = std::sinh(freq_ * tau);
            s.chi1 = c / r;
            s.chi2 = sn / r;
            s.chi1dot = r * sn;
            s.chi2dot = r * c;
            break;
        }
        }
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    s.xi = cplx(s.chi1, s.chi2) * inv_sqrt2;
    s.xidot = cplx(s.chi1dot, s.chi2dot) * inv_sqrt2;
    s.phi1 = s.xi * s.xi;
    s.phi2 = std::conj(s.xi) * std::conj(s.xi);
    s.phi3 = s.chi1 * s.chi1 + s.chi2 * s.chi2;
    return s;
}

double wronskian(const BasisSample& s) { return s.chi1 * s.chi2dot - s.chi2 * s.chi1dot; }

} // namespace sqz
