#include "sqz/model.hpp"

namespace sqz {

namespace {

BasisInitialConditions default_ics(const SystemSpec& system) {
    switch (system.kind()) {
    case SystemKind::HO:
    case SystemKind::DHO: return BasisInitialConditions::oscillator(system.omega());
    case SystemKind::RO: return BasisInitialConditions::oscillator(system.Omega());
    default: return {};
    }
}

AuxiliaryBasis make_basis(const SystemSpec& system, const ModelOptions& opt) {
    if (is_catalog(system.kind()) && !opt.force_numeric) return analytic_basis(system);
    return numeric_basis(system.g2(), opt.ics ? *opt.ics : default_ics(system), opt.tau_max,
                         opt.tol);
}

} // namespace

Model build_model(const SystemSpec& system, const ModelOptions& options) {
    auto basis = make_basis(system, options);
    DrivingOptions dopt;
    dopt.method = options.driving_method;
    dopt.constants = options.constants;
    auto driving = driving_integrals(basis, system.g1(), system, options.tol, dopt);
    return Model{system, std::move(basis), std::move(driving)};
}

} // namespace sqz
