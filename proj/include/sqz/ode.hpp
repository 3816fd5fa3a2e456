#pragma once

// Adaptive Dormand-Prince 5(4) integration of the auxiliary equation
//   a'' + 2 g2(t) a = 0
// for two independent solutions at once, with quintic Hermite dense output
// built from (a, a', a'') at the accepted step ends.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace sqz::ode {

// Quintic Hermite interpolant on [0, h] at offset s*h, s in [0, 1].
// Returns (value, first derivative).
struct HermiteValue {
    double value;
    double derivative;
};
HermiteValue quintic_hermite(double h, double s, double y0, double dy0, double ddy0, double y1,
                             double dy1, double ddy1);

struct PairState {
    std::array<double, 2> a;    // (chi1, chi2)
    std::array<double, 2> da;   // (chi1', chi2')
};

struct Knot {
    double t;
    PairState state;
    std::array<double, 2> dda;  // -2 g2(t) a
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

class DenseSolution {
public:
    DenseSolution() = default;
    DenseSolution(std::vector<Knot> knots, Stats stats);

    double t_begin() const { return knots_.front().t; }
    double t_end() const { return knots_.back().t; }
    const std::vector<Knot>& knots() const { return knots_; }
    const Stats& stats() const { return stats_; }

    // t must lie in [t_begin, t_end].
    PairState operator()(double t) const;

private:
    std::vector<Knot> knots_;
    Stats stats_;
};

struct Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 1e-3;
    std::size_t max_steps = 5'000'000;
};

// Throws IntegrationError carrying the time reached on step-size underflow
// or step-count exhaustion.
DenseSolution integrate_auxiliary(const std::function<double(double)>& g2, const PairState& initial,
                                  double t_end, const Options& options);

} // namespace sqz::ode
