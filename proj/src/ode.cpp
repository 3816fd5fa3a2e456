#include "sqz/ode.hpp"

#include "sqz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sqz::ode {

HermiteValue quintic_hermite(double h, double s, double y0, double dy0, double ddy0, double y1,
                             double dy1, double ddy1) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double h20 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    const double h21 = 0.5 * (s3 - 2.0 * s4 + s5);
    const double h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    const double h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;

    const double d00 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    const double d10 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    const double d20 = 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4);
    const double d21 = 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4);
    const double d11 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    const double d01 = -d00;

    const double v1 = dy0 * h, v2 = dy1 * h, a1 = ddy0 * h * h, a2 = ddy1 * h * h;
    const double value = y0 * h00 + v1 * h10 + a1 * h20 + a2 * h21 + v2 * h11 + y1 * h01;
    const double deriv = (y0 * d00 + v1 * d10 + a1 * d20 + a2 * d21 + v2 * d11 + y1 * d01) / h;
    return {value, deriv};
}

DenseSolution::DenseSolution(std::vector<Knot> knots, Stats stats)
    : knots_(std::move(knots)), stats_(stats) {}

PairState DenseSolution::operator()(double t) const {
    if (knots_.size() == 1 || t <= knots_.front().t) return knots_.front().state;
    if (t >= knots_.back().t) return knots_.back().state;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const Knot& k) { return v < k.t; });
    const Knot& k1 = *it;
    const Knot& k0 = *(it - 1);
    const double h = k1.t - k0.t;
    const double s = (t - k0.t) / h;
    PairState out;
    for (int i = 0; i < 2; ++i) {
        const auto hv = quintic_hermite(h, s, k0.state.a[i], k0.state.da[i], k0.dda[i],
                                        k1.state.a[i], k1.state.da[i], k1.dda[i]);
        out.a[i] = hv.value;
        out.da[i] = hv.derivative;
    }
    return out;
}

namespace {

using Vec = std::array<double, 4>;  // chi1, chi1', chi2, chi2'

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

DenseSolution integrate_auxiliary(const std::function<double(double)>& g2, const PairState& initial,
                                  double t_end, const Options& opt) {
    Stats stats;
    auto rhs = [&](double t, const Vec& y) {
        ++stats.rhs_evaluations;
        const double w = -2.0 * g2(t);
        return Vec{y[1], w * y[0], y[3], w * y[2]};
    };
    auto make_knot = [](double t, const Vec& y, const Vec& f) {
        return Knot{t, PairState{{y[0], y[2]}, {y[1], y[3]}}, {f[1], f[3]}};
    };

    Vec y{initial.a[0], initial.da[0], initial.a[1], initial.da[1]};
    double t = 0.0;
    Vec k1 = rhs(t, y);
    std::vector<Knot> knots{make_knot(t, y, k1)};
    if (t_end <= 0.0) return DenseSolution(std::move(knots), stats);

    double h = std::min(opt.initial_step, t_end);
    while (t < t_end) {
        if (stats.accepted + stats.rejected >= opt.max_steps) {
            std::ostringstream os;
            os << "auxiliary integration exceeded " << opt.max_steps << " steps at tau=" << t;
            throw IntegrationError(os.str(), t);
        }
        const bool last = t + h >= t_end;
        if (last) h = t_end - t;
        if (h < 1e-12 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "auxiliary integration step size underflow at tau=" << t;
            throw IntegrationError(os.str(), t);
        }

        Vec tmp;
        auto stage = [&](auto&& combine) {
            for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * combine(i);
            return tmp;
        };
        const Vec k2 = rhs(t + c2 * h, stage([&](int i) { return a21 * k1[i]; }));
        const Vec k3 = rhs(t + c3 * h, stage([&](int i) { return a31 * k1[i] + a32 * k2[i]; }));
        const Vec k4 = rhs(t + c4 * h, stage([&](int i) {
                               return a41 * k1[i] + a42 * k2[i] + a43 * k3[i];
                           }));
        const Vec k5 = rhs(t + c5 * h, stage([&](int i) {
                               return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
                           }));
        const Vec k6 = rhs(t + h, stage([&](int i) {
                               return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                      a65 * k5[i];
                           }));
        const Vec y_new = stage([&](int i) {
            return b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i];
        });
        const double t_new = last ? t_end : t + h;
        const Vec k7 = rhs(t_new, y_new);

        double err2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err2 += (e / sc) * (e / sc);
        }
        double err = std::sqrt(err2 / 4.0);
        if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

        if (err <= 1.0) {
            ++stats.accepted;
            t = t_new;
            y = y_new;
            k1 = k7;
            knots.push_back(make_knot(t, y, k1));
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= grow;
        } else {
            ++stats.rejected;
            h *= std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.1;
        }
    }
    return DenseSolution(std::move(knots), stats);
}

} // namespace sqz::ode
