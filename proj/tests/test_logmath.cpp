#include <cmath>
#include <random>

#include <doctest.h>

#include "rwent/logmath.hpp"

using namespace rwent;

TEST_CASE("log_cosh special values") {
    CHECK(log_cosh(0.0) == 0.0);
    CHECK(log_cosh(1000.0) == doctest::Approx(1000.0 - kLn2).epsilon(1e-12));
    CHECK(log_cosh(-1000.0) == doctest::Approx(1000.0 - kLn2).epsilon(1e-12));
    CHECK(log_cosh(0.5) ==
          doctest::Approx(std::log(std::cosh(0.5))).epsilon(1e-15));
    CHECK(std::isfinite(log_cosh(1e8)));
    CHECK(std::isfinite(log_cosh(-1e8)));
}

TEST_CASE("log_abs_sinh special values") {
    CHECK(log_abs_sinh(0.0) == -INFINITY);
    CHECK(log_abs_sinh(800.0) == doctest::Approx(800.0 - kLn2).epsilon(1e-12));
    CHECK(log_abs_sinh(1e-5) ==
          doctest::Approx(std::log(std::sinh(1e-5))).epsilon(1e-14));
    CHECK(log_abs_sinh(-2.0) ==
          doctest::Approx(std::log(std::sinh(2.0))).epsilon(1e-14));
    CHECK(std::isfinite(log_abs_sinh(1e8)));
}

TEST_CASE("log-domain helpers agree with direct evaluation") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(rng);
        CHECK(log_cosh(x) ==
              doctest::Approx(std::log(std::cosh(x))).epsilon(1e-13));
        if (std::abs(x) > 1e-12)
            CHECK(log_abs_sinh(x) ==
                  doctest::Approx(std::log(std::abs(std::sinh(x)))).epsilon(1e-13));
        const double y = dist(rng);
        CHECK(log_add_exp(x, y) ==
              doctest::Approx(std::log(std::exp(x) + std::exp(y))).epsilon(1e-13));
    }
}

TEST_CASE("log_add_exp handles -inf") {
    CHECK(log_add_exp(kNegInf, 2.0) == 2.0);
    CHECK(log_add_exp(2.0, kNegInf) == 2.0);
    CHECK(log_add_exp(kNegInf, kNegInf) == kNegInf);
}

TEST_CASE("softplus and logistic asymptotes") {
    CHECK(softplus(0.0) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(softplus(800.0) == 800.0);
    CHECK(softplus(-800.0) == 0.0);
    CHECK(logistic(0.0) == 0.5);
    CHECK(logistic(800.0) == 1.0);
    CHECK(logistic(-800.0) == 0.0);
}
