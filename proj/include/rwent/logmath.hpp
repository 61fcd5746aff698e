#pragma once

#include <cmath>
#include <limits>

// Overflow-safe log-domain helpers for cosh/sinh ratios with arguments up
// to ~1e8. All functions return finite values except where the true result
// is -inf (log_abs_sinh(0), log_add_exp(-inf,-inf)).

namespace rwent {

inline constexpr double kLn2 = 0.69314718055994530941723212145817657;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln cosh x = |x| + ln(1 + e^{-2|x|}) - ln 2
inline double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - kLn2;
}

// ln |sinh x|; -inf at x = 0. Direct evaluation is accurate below 1 and
// cannot overflow; above 1 the shifted form takes over.
inline double log_abs_sinh(double x) {
    const double ax = std::abs(x);
    if (ax < 1.0)
        return std::log(std::abs(std::sinh(x)));
    return ax + std::log1p(-std::exp(-2.0 * ax)) - kLn2;
}

// ln(e^a + e^b), tolerant of -inf in either slot.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

// ln(1 + e^x) without overflow.
inline double softplus(double x) {
    if (x <= 0.0) return std::log1p(std::exp(x));
    return x + std::log1p(std::exp(-x));
}

// e^x / (1 + e^x)
inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}
