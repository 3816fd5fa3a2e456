#pragma once

#include <cstddef>
#include <functional>

namespace sqz::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
};

// Single 15-point Kronrod panel with the embedded 7-point Gauss estimate.
Result gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive Gauss-Kronrod: bisects the panel with the largest error
// until the summed error estimate is below max(abs_tol, rel_tol*|I|).
// Throws QuadratureError naming the worst subinterval when max_intervals is reached.
// a > b is allowed and flips the sign.
Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol = 0.0, std::size_t max_intervals = 4000);

} // namespace sqz::quad
