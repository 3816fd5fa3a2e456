#pragma once

// Brute-force reference: the Schroedinger equation
//   i dpsi/dt = -1/2 psi'' + V(x, t) psi
// on a uniform periodic grid, advanced by Strang splitting with an exact
// spectral kinetic step.

#include "sqz/phase_space.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sqz::oracle {

struct SpatialGrid {
    double x_min = -30.0;
    double x_max = 30.0;
    std::size_t n = 4096;

    static SpatialGrid symmetric(double half_width, std::size_t n) {
        return {-half_width, half_width, n};
    }

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }
    double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
    // Angular wavenumber of FFT bin j.
    double k(std::size_t j) const;

    // n a power of two >= 64 and x_max > x_min; throws DomainError otherwise.
    void validate() const;
};

struct GridWavefunction {
    SpatialGrid grid;
    std::vector<cplx> psi;
    double tau = 0.0;

    double norm() const;  // integral of |psi|^2
};

struct Moments {
    double x = 0.0, p = 0.0;
    double var_x = 0.0, var_p = 0.0, cov_xp = 0.0;

    double product() const { return var_x * var_p; }
};

// True when the Gaussian (mean, cov) is resolved by >= samples_per_sigma grid
// points per position standard deviation and lies >= sigmas deviations from
// both edges, with the momentum spread likewise inside the grid's band.
bool resolves(const SpatialGrid& grid, PhasePoint mean, const Covariance& cov, double sigmas = 12.0,
              double samples_per_sigma = 8.0);

// Normalised Gaussian exp[-A (x-x0)^2/2 + i p0 (x-x0)] with
// A = 1/(2 var_x) - i cov_xp/var_x. Throws ResolutionError if !resolves(...).
GridWavefunction gaussian_wavefunction(PhasePoint mean, const Covariance& cov,
                                       const SpatialGrid& grid, double tau = 0.0);

// Squeezed state with mean (x0, p0) whose covariance is built from xi(0), xi'(0)
// and z the same way phase_space::covariance does.
GridWavefunction init_squeezed_wavefunction(InitialPhasePoint point, Squeeze z, cplx xi0,
                                            cplx xidot0, const SpatialGrid& grid);

// Reusable split-step stepper; holds FFT plans and the potential phases.
class Propagator {
public:
    Propagator(const SystemSpec& system, const SpatialGrid& grid, double dt);
    ~Propagator();
    Propagator(const Propagator&) = delete;
    Propagator& operator=(const Propagator&) = delete;

    // Advances psi by n_steps. Throws DomainEscapeError when the density
    // near either edge exceeds boundary_threshold.
    void advance(GridWavefunction& psi, std::size_t n_steps);

    double dt() const { return dt_; }
    double boundary_threshold = 1e-12;
    std::size_t check_every = 25;

private:
    void potential_phase(double tau_mid);
    void check_boundary(const GridWavefunction& psi) const;

    struct Plans;
    SystemSpec system_;
    SpatialGrid grid_;
    double dt_;
    bool static_potential_;
    std::vector<cplx> half_potential_;
    std::vector<cplx> kinetic_;
    std::vector<cplx> work_;
    std::unique_ptr<Plans> plans_;
};

GridWavefunction propagate(const GridWavefunction& psi, const SystemSpec& system, double dt,
                           std::size_t n_steps);

// psi' by FFT.
std::vector<cplx> spectral_derivative(const SpatialGrid& grid, std::span<const cplx> psi);

Moments moments(const GridWavefunction& psi);

enum class Ladder { lower, raise };

// J_- psi = xi psi' - i xi' x psi + i C psi,
// J_+ psi = -conj(xi) psi' + i conj(xi') x psi - i conj(C) psi,
// with xi, C evaluated at tau. The result is not normalised.
GridWavefunction ladder_apply(const GridWavefunction& psi, const AuxiliaryBasis& basis,
                              const DrivingIntegrals& driving, double tau, Ladder which);

// sqrt(integral |psi|^2)
double l2_norm(const GridWavefunction& psi);
double l2_distance(const GridWavefunction& a, const GridWavefunction& b);

} // namespace sqz::oracle
