#include "sqz/quadrature.hpp"

#include "sqz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace sqz::quad {

namespace {

constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

} // namespace

Result gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += wgk[j] * sum;
        if (j % 2 == 1) gauss += wg[j / 2] * sum;
    }
    Result r;
    r.value = kronrod * half;
    r.error = std::abs((kronrod - gauss) * half);
    r.evaluations = 15;
    r.intervals = 1;
    return r;
}

Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol, std::size_t max_intervals) {
    if (a == b) return {};
    if (a > b) {
        auto r = integrate(f, b, a, abs_tol, rel_tol, max_intervals);
        r.value = -r.value;
        return r;
    }
    Result total = gauss_kronrod_15(f, a, b);
    std::priority_queue<Panel> panels;
    panels.push({a, b, total.value, total.error});
    auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(total.value)); };

    while (total.error > target()) {
        if (panels.size() >= max_intervals) {
            const Panel& worst = panels.top();
            std::ostringstream os;
            os << "quadrature did not converge: worst subinterval [" << worst.a << ", " << worst.b
               << "] error " << worst.error;
            throw QuadratureError(os.str(), worst.a, worst.b);
        }
        const Panel p = panels.top();
        panels.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            std::ostringstream os;
            os << "quadrature subinterval [" << p.a << ", " << p.b << "] cannot be bisected";
            throw QuadratureError(os.str(), p.a, p.b);
        }
        const Result left = gauss_kronrod_15(f, p.a, mid);
        const Result right = gauss_kronrod_15(f, mid, p.b);
        total.value += left.value + right.value - p.value;
        total.error += left.error + right.error - p.error;
        total.evaluations += 30;
        panels.push({p.a, mid, left.value, left.error});
        panels.push({mid, p.b, right.value, right.error});
        if (!std::isfinite(total.value)) {
            throw QuadratureError("non-finite integrand", p.a, p.b);
        }
    }
    // Re-sum to shed the running-update rounding.
    double value = 0.0, error = 0.0;
    total.intervals = panels.size();
    while (!panels.empty()) {
        value += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    total.value = value;
    total.error = error;
    return total;
}

} // namespace sqz::quad
