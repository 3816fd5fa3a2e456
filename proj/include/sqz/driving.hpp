#pragma once

// Driving integrals  c_nu(t) = int_0^t chi_nu(s) g1(s) ds  (nu = 1, 2)
// and the shifted functions  C_nu(t) = c_nu(t) + C_nu^o.

#include "sqz/aux_basis.hpp"

#include <array>
#include <optional>

namespace sqz {

struct IntegrationConstants {
    double C1_0 = 0.0;
    double C2_0 = 0.0;
};

// HO, FP, RO: (0, 0).  LP: (0, g0).  DHO: (0, -g0/omega^{3/2}), with g0 = g1(0).
// Custom systems throw NotDefinedError.
IntegrationConstants integration_constants(const SystemSpec& system);

struct DrivingOptions {
    enum class Method {
        automatic,   // closed form for a constant drive on an analytic basis, else quadrature
        quadrature,  // always adaptive Gauss-Kronrod
    };
    Method method = Method::automatic;
    // Overrides integration_constants(system); required for custom systems.
    std::optional<IntegrationConstants> constants;
};

class DrivingIntegrals {
public:
    // (c1, c2) at tau; both vanish at tau = 0.
    std::array<double, 2> c(double tau) const;
    double c1(double tau) const { return c(tau)[0]; }
    double c2(double tau) const { return c(tau)[1]; }

    // The constants are absent for custom systems built without overrides;
    // every accessor below then throws NotDefinedError.
    bool has_constants() const { return constants_.has_value(); }
    const IntegrationConstants& constants() const;
    double C1_0() const { return constants().C1_0; }
    double C2_0() const { return constants().C2_0; }

    // (C1, C2) = (c1 + C1_0, c2 + C2_0).
    std::array<double, 2> C(double tau) const;
    // Complex C = (C1 + i C2)/sqrt(2).
    cplx complex_C(double tau) const;

    bool closed_form() const { return closed_; }

private:
    friend DrivingIntegrals driving_integrals(const AuxiliaryBasis&, const CoefficientFn&,
                                              const SystemSpec&, double, const DrivingOptions&);
    DrivingIntegrals(AuxiliaryBasis basis, CoefficientFn g1)
        : basis_(std::move(basis)), g1_(std::move(g1)) {}

    AuxiliaryBasis basis_;
    CoefficientFn g1_;
    std::optional<IntegrationConstants> constants_;
    double tol_ = 1e-10;
    bool closed_ = false;
    bool zero_ = false;
    double g_const_ = 0.0;
};

DrivingIntegrals driving_integrals(const AuxiliaryBasis& basis, const CoefficientFn& g1,
                                   const SystemSpec& system, double tol,
                                   const DrivingOptions& options = {});

} // namespace sqz
