#pragma once

// First and second moments of squeezed states in a quadratic potential.
//
// Squeeze convention: the squeezed fluctuation amplitude is
//   xi_r(t) = xi(t) cosh r - conj(xi(t)) e^{i theta} sinh r,
// so var_x = |xi_r|^2, var_p = |xi_r'|^2, cov_xp = Re(xi_r conj(xi_r')).
// For the oscillator this differs from the (theta + pi) phase often quoted
// for the oscillator closed forms; products are unaffected.

#include "sqz/driving.hpp"

namespace sqz {

using InitialPhasePoint = PhasePoint;

struct Squeeze {
    double r = 0.0;
    double theta = 0.0;
};

// Reduces an angle to (-pi, pi].
double principal_angle(double angle);

struct Symplectic2 {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    double det() const { return m11 * m22 - m12 * m21; }
    PhasePoint apply(PhasePoint v) const { return {m11 * v.x + m12 * v.p, m21 * v.x + m22 * v.p}; }
};

struct Covariance {
    double var_x = 0.5;
    double var_p = 0.5;
    double cov_xp = 0.0;

    // var_x var_p - cov_xp^2; 1/4 for every pure Gaussian state.
    double determinant() const { return var_x * var_p - cov_xp * cov_xp; }
};

enum class Representation { alpha_z, z_alpha };

struct SqueezeParameters {
    double alpha_abs = 0.0;
    double delta = 0.0;
    double r = 0.0;
    double theta = 0.0;
    Representation rep = Representation::alpha_z;
    bool degenerate = false;  // |alpha| = 0, delta fixed to 0

    double s() const;  // e^r
    Squeeze squeeze() const { return {r, theta}; }
};

// Maps (x0, p0) to the homogeneous part of (<x>, <p>) at tau; unit determinant.
Symplectic2 transfer_matrix(const AuxiliaryBasis& basis, double tau);

// Inhomogeneous part (chi1 c2 - chi2 c1, chi1' c2 - chi2' c1).
PhasePoint driven_offset(const BasisSample& sample, const std::array<double, 2>& c);

PhasePoint expect_xp_from_initial(const AuxiliaryBasis& basis, const DrivingIntegrals& driving,
                                  InitialPhasePoint point, double tau);

// (alpha, z): alpha fixed by (x0, p0); (r, theta) are carried through unchanged.
SqueezeParameters params_alpha_z(InitialPhasePoint point, const AuxiliaryBasis& basis,
                                 const DrivingIntegrals& driving, Squeeze z = {});

// (z, alpha): solves the unimodular 2x2 system for (|alpha| cos delta, |alpha| sin delta).
SqueezeParameters solve_alpha_given_z(InitialPhasePoint point, Squeeze z,
                                      const AuxiliaryBasis& basis,
                                      const DrivingIntegrals& driving);

// Inverse maps back to the initial phase-space point.
InitialPhasePoint initial_point(const SqueezeParameters& params, const AuxiliaryBasis& basis,
                                const DrivingIntegrals& driving);

// Both throw DomainError on a representation mismatch.
PhasePoint expect_xp_alpha_z(const SqueezeParameters& params, const AuxiliaryBasis& basis,
                             const DrivingIntegrals& driving, double tau);
PhasePoint expect_xp_z_alpha(const SqueezeParameters& params, const AuxiliaryBasis& basis,
                             const DrivingIntegrals& driving, double tau);

Covariance covariance(const AuxiliaryBasis& basis, Squeeze z, double tau);

// Same quantity by propagating the tau = 0 covariance: M Sigma(0) M^T.
Covariance covariance_propagated(const AuxiliaryBasis& basis, Squeeze z, double tau);

double uncertainty_product(const Covariance& cov);

// Per-system closed forms of the uncertainty product. HO and DHO share the
// oscillator form, FP and LP the free-particle form.
double reference_uncertainty_product(const SystemSpec& system, Squeeze z, double tau);

namespace closed_form {

// Oscillator variances in the oscillator phase convention (theta_osc = theta + pi).
Covariance oscillator_variances(double omega, Squeeze z, double tau);
double oscillator_product(double omega, Squeeze z, double tau);

Covariance free_particle_variances(Squeeze z, double tau);
double free_particle_product(Squeeze z, double tau);

double repulsive_product(double Omega, Squeeze z, double tau);

// Uncorrected variants, kept to show they disagree with the propagated covariance:
//  - momentum variance with +cos(2 w t - theta_osc) sinh 2r,
//  - free-particle product missing the 1/4 on the sinh^2 2r bracket,
//  - repulsive product with sinh^2(2Wt) in the sinh 4r term and +cos 2theta.
namespace uncorrected {
double oscillator_var_p(double omega, Squeeze z, double tau);
double free_particle_product(Squeeze z, double tau);
double repulsive_product(double Omega, Squeeze z, double tau);
} // namespace uncorrected

} // namespace closed_form

} // namespace sqz
