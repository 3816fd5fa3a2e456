#pragma once

// Real solution pair (chi1, chi2) of  a'' + 2 g2(t) a = 0  with unit Wronskian,
// and the complex functions derived from it:
//   xi = (chi1 + i chi2)/sqrt(2),  phi1 = xi^2,  phi2 = conj(xi)^2,  phi3 = 2|xi|^2.

#include "sqz/ode.hpp"
#include "sqz/systems.hpp"

#include <complex>
#include <limits>
#include <memory>

namespace sqz {

using cplx = std::complex<double>;

struct BasisInitialConditions {
    double chi1_0 = 1.0;
    double chi1dot_0 = 0.0;
    double chi2_0 = 0.0;
    double chi2dot_0 = 1.0;

    // Throws DomainError unless chi1*chi2' - chi2*chi1' = 1 within 1e-12.
    void validate() const;

    // (1/sqrt(w), 0, 0, sqrt(w)): the normalisation of the oscillator-like catalog bases.
    static BasisInitialConditions oscillator(double w);
};

struct BasisSample {
    double tau = 0.0;
    double chi1 = 0.0, chi2 = 0.0;
    double chi1dot = 0.0, chi2dot = 0.0;
    cplx xi, xidot;
    cplx phi1, phi2;
    double phi3 = 0.0;
};

class AuxiliaryBasis {
public:
    enum class Source { analytic, numeric };
    enum class Shape { oscillator, free, repulsive };  // analytic only

    Source source() const { return source_; }
    const BasisInitialConditions& ics() const { return ics_; }
    double tau_max() const { return tau_max_; }

    // Throws RangeError for tau outside [0, tau_max].
    BasisSample evaluate(double tau) const;

    // Numeric bases only; null for analytic ones.
    const ode::DenseSolution* dense() const { return dense_.get(); }

    // Closed-form description (analytic only).
    Shape shape() const { return shape_; }
    double frequency() const { return freq_; }

private:
    friend AuxiliaryBasis analytic_basis(const SystemSpec& system);
    friend AuxiliaryBasis numeric_basis(const CoefficientFn& g2, const BasisInitialConditions& ics,
                                        double tau_max, double tol);
    AuxiliaryBasis() = default;

    Source source_ = Source::analytic;
    Shape shape_ = Shape::free;
    double freq_ = 0.0;
    BasisInitialConditions ics_;
    double tau_max_ = std::numeric_limits<double>::infinity();
    std::shared_ptr<const ode::DenseSolution> dense_;
};

// Closed forms: HO/DHO cos, sin(w t)/sqrt(w); FP/LP 1, t; RO cosh, sinh(W t)/sqrt(W).
// The domain is [0, inf). Custom systems throw DomainError.
AuxiliaryBasis analytic_basis(const SystemSpec& system);

// Adaptive integration on [0, tau_max] with relative and absolute tolerance tol.
AuxiliaryBasis numeric_basis(const CoefficientFn& g2, const BasisInitialConditions& ics,
                             double tau_max, double tol);

double wronskian(const BasisSample& sample);

} // namespace sqz
