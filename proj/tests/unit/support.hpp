#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace test {

inline constexpr double pi = std::numbers::pi;

// |a - b| <= tol * max(1, |b|)
inline bool near(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace test

#define CHECK_NEAR(a, b, tol) \
    do { \
        const double check_near_a_ = (a); \
        const double check_near_b_ = (b); \
        INFO(#a " = " << check_near_a_ << ", expected " << check_near_b_); \
        CHECK(test::near(check_near_a_, check_near_b_, (tol))); \
    } while (0)
