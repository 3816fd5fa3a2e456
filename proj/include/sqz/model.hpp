#pragma once

#include "sqz/phase_space.hpp"

#include <optional>

namespace sqz {

struct ModelOptions {
    // Integrate the auxiliary equation even for catalog systems.
    bool force_numeric = false;
    // Domain of a numeric basis.
    double tau_max = 10.0;
    // ODE and quadrature tolerance.
    double tol = 1e-10;
    // Numeric basis start values. Catalog systems default to the closed-form
    // normalisation, custom systems to (1, 0, 0, 1).
    std::optional<BasisInitialConditions> ics;
    std::optional<IntegrationConstants> constants;
    DrivingOptions::Method driving_method = DrivingOptions::Method::automatic;
};

// A system together with its auxiliary basis and driving integrals.
struct Model {
    SystemSpec system;
    AuxiliaryBasis basis;
    DrivingIntegrals driving;

    PhasePoint expect(InitialPhasePoint point, double tau) const {
        return expect_xp_from_initial(basis, driving, point, tau);
    }
    Covariance cov(Squeeze z, double tau) const { return covariance(basis, z, tau); }
};

Model build_model(const SystemSpec& system, const ModelOptions& options = {});

} // namespace sqz
