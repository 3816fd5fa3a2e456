#include "sqz/oracle.hpp"

#include "sqz/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace sqz::oracle {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        std::vector<cplx> a(n), b(n);
        std::lock_guard lock(planner_mutex());
        const int ni = static_cast<int>(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd_ = fftw_plan_dft_1d(ni, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
        bwd_ = fftw_plan_dft_1d(ni, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
    }
    ~Fft() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(const cplx* in, cplx* out) const {
        fftw_execute_dft(fwd_, as_fftw(const_cast<cplx*>(in)), as_fftw(out));
    }
    // Unnormalised inverse.
    void backward(const cplx* in, cplx* out) const {
        fftw_execute_dft(bwd_, as_fftw(const_cast<cplx*>(in)), as_fftw(out));
    }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

double edge_density(const GridWavefunction& psi) {
    const std::size_t n = psi.psi.size();
    const std::size_t band = std::max<std::size_t>(4, n / 64);
    double worst = 0.0;
    for (std::size_t j = 0; j < band; ++j) {
        worst = std::max(worst, std::norm(psi.psi[j]));
        worst = std::max(worst, std::norm(psi.psi[n - 1 - j]));
    }
    return worst;
}

} // namespace

double SpatialGrid::k(std::size_t j) const {
    const double L = x_max - x_min;
    const auto sj = static_cast<double>(j);
    const auto sn = static_cast<double>(n);
    return 2.0 * std::numbers::pi / L * (j < n / 2 ? sj : sj - sn);
}

void SpatialGrid::validate() const {
    if (!(x_max > x_min)) throw DomainError("grid needs x_max > x_min");
    if (n < 64 || !is_power_of_two(n)) throw DomainError("grid size must be a power of two >= 64");
}

double GridWavefunction::norm() const {
    double s = 0.0;
    for (const auto& v : psi) s += std::norm(v);
    return s * grid.dx();
}

bool resolves(const SpatialGrid& grid, PhasePoint mean, const Covariance& cov, double sigmas,
              double samples_per_sigma) {
    if (!(cov.var_x > 0.0) || !(cov.var_p > 0.0)) return false;
    const double sx = std::sqrt(cov.var_x), sp = std::sqrt(cov.var_p);
    const double k_max = std::numbers::pi / grid.dx();
    return grid.dx() <= sx / samples_per_sigma && mean.x - sigmas * sx >= grid.x_min &&
           mean.x + sigmas * sx <= grid.x_max && std::abs(mean.p) + sigmas * sp <= k_max;
}

GridWavefunction gaussian_wavefunction(PhasePoint mean, const Covariance& cov,
                                       const SpatialGrid& grid, double tau) {
    grid.validate();
    if (!resolves(grid, mean, cov)) {
        std::ostringstream os;
        os << "grid does not resolve the packet: dx=" << grid.dx() << ", sigma_x="
           << std::sqrt(std::max(cov.var_x, 0.0)) << ", mean=" << mean.x << ", domain=["
           << grid.x_min << ", " << grid.x_max << "]";
        throw ResolutionError(os.str());
    }
    const cplx A(1.0 / (2.0 * cov.var_x), -cov.cov_xp / cov.var_x);
    GridWavefunction out{grid, std::vector<cplx>(grid.n), tau};
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double d = grid.x(j) - mean.x;
        out.psi[j] = std::exp(-0.5 * A * d * d + cplx(0.0, mean.p * d));
    }
    const double scale = 1.0 / std::sqrt(out.norm());
    for (auto& v : out.psi) v *= scale;
    return out;
}

GridWavefunction init_squeezed_wavefunction(InitialPhasePoint point, Squeeze z, cplx xi0,
                                            cplx xidot0, const SpatialGrid& grid) {
    const cplx rot = std::polar(1.0, z.theta);
    const cplx a = xi0 * std::cosh(z.r) - std::conj(xi0) * rot * std::sinh(z.r);
    const cplx ad = xidot0 * std::cosh(z.r) - std::conj(xidot0) * rot * std::sinh(z.r);
    const Covariance cov{std::norm(a), std::norm(ad), (a * std::conj(ad)).real()};
    return gaussian_wavefunction(point, cov, grid, 0.0);
}

struct Propagator::Plans {
    explicit Plans(std::size_t n) : fft(n) {}
    Fft fft;
};

Propagator::Propagator(const SystemSpec& system, const SpatialGrid& grid, double dt)
    : system_(system), grid_(grid), dt_(dt) {
    grid_.validate();
    if (!(dt > 0.0)) throw DomainError("time step must be positive");
    plans_ = std::make_unique<Plans>(grid_.n);
    static_potential_ = system.g2().constant_value() && system.g1().constant_value() &&
                        system.g0().constant_value();
    half_potential_.resize(grid_.n);
    kinetic_.resize(grid_.n);
    work_.resize(grid_.n);
    const double inv_n = 1.0 / static_cast<double>(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const double k = grid_.k(j);
        kinetic_[j] = std::polar(inv_n, -0.5 * k * k * dt_);
    }
    if (static_potential_) potential_phase(0.0);
}

Propagator::~Propagator() = default;

void Propagator::potential_phase(double tau_mid) {
    const double g2 = system_.g2().eval(tau_mid);
    const double g1 = system_.g1().eval(tau_mid);
    const double g0 = system_.g0().eval(tau_mid);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const double x = grid_.x(j);
        const double v = (g2 * x + g1) * x + g0;
        half_potential_[j] = std::polar(1.0, -0.5 * v * dt_);
    }
}

void Propagator::check_boundary(const GridWavefunction& psi) const {
    const double edge = edge_density(psi);
    if (edge > boundary_threshold) {
        std::ostringstream os;
        os << "wave packet reached the grid edge (density " << edge << ") at tau=" << psi.tau;
        throw DomainEscapeError(os.str(), psi.tau);
    }
}

void Propagator::advance(GridWavefunction& psi, std::size_t n_steps) {
    if (psi.psi.size() != grid_.n) throw DomainError("wavefunction does not match the grid");
    const double tau0 = psi.tau;
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t_start = tau0 + static_cast<double>(step) * dt_;
        if (!static_potential_) potential_phase(t_start + 0.5 * dt_);
        for (std::size_t j = 0; j < grid_.n; ++j) psi.psi[j] *= half_potential_[j];
        plans_->fft.forward(psi.psi.data(), work_.data());
        for (std::size_t j = 0; j < grid_.n; ++j) work_[j] *= kinetic_[j];
        plans_->fft.backward(work_.data(), psi.psi.data());
        for (std::size_t j = 0; j < grid_.n; ++j) psi.psi[j] *= half_potential_[j];
        psi.tau = tau0 + static_cast<double>(step + 1) * dt_;
        if ((step + 1) % check_every == 0) check_boundary(psi);
    }
    check_boundary(psi);
}

GridWavefunction propagate(const GridWavefunction& psi, const SystemSpec& system, double dt,
                           std::size_t n_steps) {
    GridWavefunction out = psi;
    Propagator prop(system, psi.grid, dt);
    prop.advance(out, n_steps);
    return out;
}

std::vector<cplx> spectral_derivative(const SpatialGrid& grid, std::span<const cplx> psi) {
    grid.validate();
    Fft fft(grid.n);
    std::vector<cplx> spec(grid.n), out(grid.n);
    fft.forward(psi.data(), spec.data());
    const double inv_n = 1.0 / static_cast<double>(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        // The Nyquist bin has no odd partner; drop it.
        const double k = j == grid.n / 2 ? 0.0 : grid.k(j);
        spec[j] *= cplx(0.0, k * inv_n);
    }
    fft.backward(spec.data(), out.data());
    return out;
}

Moments moments(const GridWavefunction& psi) {
    const auto& g = psi.grid;
    const double dx = g.dx();
    const auto dpsi = spectral_derivative(g, psi.psi);
    double n0 = 0.0, sx = 0.0, sxx = 0.0, sp = 0.0, spp = 0.0, sxp = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        const double rho = std::norm(psi.psi[j]);
        // conj(psi) (-i psi')
        const cplx pdens = std::conj(psi.psi[j]) * cplx(0.0, -1.0) * dpsi[j];
        n0 += rho;
        sx += x * rho;
        sxx += x * x * rho;
        sp += pdens.real();
        spp += std::norm(dpsi[j]);
        sxp += x * pdens.real();
    }
    n0 *= dx;
    Moments m;
    m.x = sx * dx / n0;
    m.p = sp * dx / n0;
    m.var_x = sxx * dx / n0 - m.x * m.x;
    m.var_p = spp * dx / n0 - m.p * m.p;
    m.cov_xp = sxp * dx / n0 - m.x * m.p;
    return m;
}

GridWavefunction ladder_apply(const GridWavefunction& psi, const AuxiliaryBasis& basis,
                              const DrivingIntegrals& driving, double tau, Ladder which) {
    const auto b = basis.evaluate(tau);
    const cplx C = driving.complex_C(tau);
    const cplx i(0.0, 1.0);
    cplx d_coef, x_coef, c_coef;
    if (which == Ladder::lower) {
        d_coef = b.xi;
        x_coef = -i * b.xidot;
        c_coef = i * C;
    } else {
        d_coef = -std::conj(b.xi);
        x_coef = i * std::conj(b.xidot);
        c_coef = -i * std::conj(C);
    }
    const auto dpsi = spectral_derivative(psi.grid, psi.psi);
    GridWavefunction out{psi.grid, std::vector<cplx>(psi.grid.n), psi.tau};
    for (std::size_t j = 0; j < psi.grid.n; ++j)
        out.psi[j] = d_coef * dpsi[j] + (x_coef * psi.grid.x(j) + c_coef) * psi.psi[j];
    return out;
}

double l2_norm(const GridWavefunction& psi) { return std::sqrt(psi.norm()); }

double l2_distance(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.psi.size() != b.psi.size()) throw DomainError("wavefunctions live on different grids");
    double s = 0.0;
    for (std::size_t j = 0; j < a.psi.size(); ++j) s += std::norm(a.psi[j] - b.psi[j]);
    return std::sqrt(s * a.grid.dx());
}

} // namespace sqz::oracle
