#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "rwent/params.hpp"

using namespace rwent;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = lo * std::exp(std::log(hi / lo) * i / (n - 1));
    return xs;
}

}  // namespace

TEST_CASE("scale_factor asymptotics and midpoint") {
    const ExpansionParams p{1.0, 1.0};
    CHECK(scale_factor(-1e6, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scale_factor(1e6, p) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(scale_factor(0.0, {1.0, 7.0}) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("scale_factor is monotone nondecreasing in eta") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> par(0.05, 20.0);
    std::uniform_real_distribution<double> et(-40.0, 40.0);
    for (int i = 0; i < 500; ++i) {
        const ExpansionParams p{par(rng), par(rng)};
        double a = et(rng), b = et(rng);
        if (a > b) std::swap(a, b);
        CHECK(scale_factor(a, p) <= scale_factor(b, p));
    }
}

TEST_CASE("scale_factor_derivative vanishes in the flat regions") {
    const ExpansionParams p{1.0, 1.0};
    CHECK(std::abs(scale_factor_derivative(-1e6, p)) < 1e-12);
    CHECK(std::abs(scale_factor_derivative(1e6, p)) < 1e-12);
    CHECK(scale_factor_derivative(0.0, p) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("scale_factor_derivative matches the finite-difference oracle") {
    const ExpansionParams p{2.0, 0.5};
    const double eta = 1.0;
    const double h = 1e-5;
    const double fd =
        (scale_factor(eta + h, p) - scale_factor(eta - h, p)) / (2.0 * h);
    CHECK(scale_factor_derivative(eta, p) == doctest::Approx(fd).epsilon(1e-8));

    // spot checks across the profile
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> et(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double e = et(rng);
        const double d =
            (scale_factor(e + h, p) - scale_factor(e - h, p)) / (2.0 * h);
        CHECK(scale_factor_derivative(e, p) == doctest::Approx(d).epsilon(1e-6));
    }
}

TEST_CASE("spectrum closed-form substitution at eps=rho=m=k=1") {
    const Spectrum s = make_spectrum({1.0, 1.0}, {1.0, 1.0});
    CHECK(s.mu_in == 1.0);
    CHECK(s.mu_out == 3.0);
    CHECK(s.omega_in == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.omega_out == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(s.omega_plus ==
          doctest::Approx((std::sqrt(10.0) + std::sqrt(2.0)) / 2).epsilon(1e-15));
    CHECK(s.omega_minus ==
          doctest::Approx((std::sqrt(10.0) - std::sqrt(2.0)) / 2).epsilon(1e-14));
    CHECK(s.omega_bar_sq == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("spectrum massless degenerate case") {
    const Spectrum s = make_spectrum({3.0, 2.0}, {0.0, 2.0});
    CHECK(s.mu_in == 0.0);
    CHECK(s.mu_out == 0.0);
    CHECK(s.omega_in == 2.0);
    CHECK(s.omega_out == 2.0);
    CHECK(s.omega_minus == 0.0);
    CHECK(s.omega_bar_sq == doctest::Approx(-4.0).epsilon(1e-15));
}

TEST_CASE("imaginary omega_bar regime exists") {
    const Spectrum s = make_spectrum({1.0, 1000.0}, {1.0, 1.0});
    CHECK(s.omega_bar_sq == doctest::Approx(9.0 - 1e6).epsilon(1e-15));
    CHECK(s.omega_bar_sq < 0.0);
}

TEST_CASE("omega ordering and the m*eps degeneracy") {
    for (double m : log_grid(1e-3, 1e3, 7))
        for (double k : log_grid(1e-3, 1e3, 7)) {
            const Spectrum s = make_spectrum({0.7, 1.3}, {m, k});
            CHECK(s.omega_out >= s.omega_in);
            CHECK(s.omega_minus >= 0.0);
            CHECK(s.mu_out >= s.mu_in);
            // mu_out - mu_in as 2 m eps exactly
            CHECK(s.mu_out - s.mu_in ==
                  doctest::Approx(2.0 * m * 0.7).epsilon(1e-13));
        }
    // equality iff m*eps = 0
    const Spectrum z = make_spectrum({0.7, 1.3}, {0.0, 2.0});
    CHECK(z.omega_out == z.omega_in);
    CHECK(z.omega_minus == 0.0);
    const Spectrum nz = make_spectrum({0.7, 1.3}, {1e-6, 2.0});
    CHECK(nz.omega_out > nz.omega_in);
}

TEST_CASE("stable difference identity (omega_out - mu_out)(omega_out + mu_out) = k^2") {
    for (double m : log_grid(1e-3, 1e3, 9))
        for (double k : log_grid(1e-3, 1e3, 9)) {
            const Spectrum s = make_spectrum({1.0, 1.0}, {m, k});
            const double diff = omega_minus_mu(k, s.omega_out, s.mu_out);
            const double prod = diff * (s.omega_out + s.mu_out);
            const double ulp = std::nextafter(k * k, INFINITY) - k * k;
            CHECK(std::abs(prod - k * k) <= 8.0 * ulp);
        }
}

TEST_CASE("omega_minus agrees with the naive half-difference") {
    for (double m : log_grid(1e-2, 1e2, 6))
        for (double k : log_grid(1e-2, 1e2, 6)) {
            const Spectrum s = make_spectrum({2.0, 0.3}, {m, k});
            const double naive = 0.5 * (s.omega_out - s.omega_in);
            const double ulp =
                std::nextafter(s.omega_out, INFINITY) - s.omega_out;
            CHECK(std::abs(s.omega_minus - naive) <= 4.0 * ulp);
        }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(ExpansionParams{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ExpansionParams{1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ExpansionParams{NAN, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModeParams{-1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModeParams{1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModeParams{1.0, INFINITY}), std::invalid_argument);
    CHECK_NOTHROW(validate(ModeParams{0.0, 1.0}));  // massless is allowed
}
