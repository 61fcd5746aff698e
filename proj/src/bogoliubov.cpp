#include "rwent/bogoliubov.hpp"

#include <cmath>

#include "rwent/logmath.hpp"

namespace rwent {

double GammaSq::value() const { return std::exp(log_value); }

namespace {

// Below this the m = 0 / eps = 0 limits are taken exactly: both ratios
// vanish there and the fermionic prefactor is 0/0.
constexpr double kDegenerate = 1e-300;

// ln( sinh(pi x / rho) / x ) for x of either sign; the zero of x is
// removable against the sinh. Series kicks in once the direct quotient
// loses digits.
double log_sinh_ratio(double x, double rho) {
    const double y = M_PI * x / rho;
    if (std::abs(x) < 1e-8)
        return std::log(M_PI / rho * (1.0 + y * y / 6.0));
    return log_abs_sinh(y) - std::log(std::abs(x));
}

}  // namespace

GammaSq gamma_sq_fermion(const ExpansionParams& p, const ModeParams& mp) {
    validate(p);
    validate(mp);
    if (mp.mass <= kDegenerate || p.epsilon <= kDegenerate)
        return {kNegInf, Statistics::Fermion};

    const Spectrum s = make_spectrum(p, mp);
    const double me = mp.mass * p.epsilon;
    const double pi_rho = M_PI / p.rho;

    // sinh arguments; a1 = omega_- - m eps < 0 for k > 0 and -> 0 as k -> 0,
    // so it is assembled from the cancellation-free omega - mu differences.
    const double a1 = -me *
                      (omega_minus_mu(mp.k, s.omega_in, s.mu_in) +
                       omega_minus_mu(mp.k, s.omega_out, s.mu_out)) /
                      (s.omega_in + s.omega_out);
    const double a2 = s.omega_minus + me;
    const double a3 = s.omega_plus + me;
    // omega_+ - m eps = (omega_in + m + (omega_out - mu_out)) / 2
    const double a4 =
        0.5 * (s.omega_in + mp.mass + omega_minus_mu(mp.k, s.omega_out, s.mu_out));

    // |gamma^-|^2 = [a2 a3 / (a1 a4)] * sinh(pi a1/rho) sinh(pi a2/rho) /
    //               [sinh(pi a3/rho) sinh(pi a4/rho)], grouped so the a1
    //               pair is the fused removable ratio.
    double lg = log_sinh_ratio(a1, p.rho);
    lg += std::log(a2) + log_abs_sinh(pi_rho * a2);
    lg += std::log(a3) - log_abs_sinh(pi_rho * a3);
    lg -= std::log(a4) + log_abs_sinh(pi_rho * a4);
    // spinor factor |chi|^2 = k^2 / (omega_out + mu_out)^2
    lg += 2.0 * (std::log(mp.k) - std::log(s.omega_out + s.mu_out));
    return {lg, Statistics::Fermion};
}

GammaSq gamma_sq_boson(const ExpansionParams& p, const ModeParams& mp) {
    validate(p);
    validate(mp);
    if (mp.mass <= kDegenerate || p.epsilon <= kDegenerate)
        return {kNegInf, Statistics::Boson};

    const Spectrum s = make_spectrum(p, mp);
    const double b_minus = 2.0 * M_PI * s.omega_minus / p.rho;
    const double b_plus = 2.0 * M_PI * s.omega_plus / p.rho;
    const double lc_minus = log_cosh(b_minus);
    const double lc_plus = log_cosh(b_plus);

    double log_num, log_den;
    if (s.omega_bar_sq >= 0.0) {
        const double lc_bar = log_cosh(M_PI * std::sqrt(s.omega_bar_sq) / p.rho);
        log_num = log_add_exp(lc_bar, lc_minus);
        log_den = log_add_exp(lc_bar, lc_plus);
    } else {
        // analytic continuation cosh -> cos; the sums stay >= cosh - 1 >= 0
        // and the denominator is strictly positive for k > 0
        const double c = std::cos(M_PI * std::sqrt(-s.omega_bar_sq) / p.rho);
        log_num = lc_minus + std::log1p(c * std::exp(-lc_minus));
        log_den = lc_plus + std::log1p(c * std::exp(-lc_plus));
    }
    return {log_num - log_den, Statistics::Boson};
}

}
