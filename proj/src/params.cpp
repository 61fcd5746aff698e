#include "rwent/params.hpp"

#include <cmath>
#include <stdexcept>

namespace rwent {

const char* to_string(Statistics s) {
    return s == Statistics::Fermion ? "fermion" : "boson";
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void validate(const ExpansionParams& p) {
    require(std::isfinite(p.epsilon) && p.epsilon > 0.0,
            "epsilon must be finite and > 0");
    require(std::isfinite(p.rho) && p.rho > 0.0, "rho must be finite and > 0");
}

void validate(const ModeParams& mp) {
    require(std::isfinite(mp.mass) && mp.mass >= 0.0,
            "mass must be finite and >= 0");
    require(std::isfinite(mp.k) && mp.k > 0.0, "k must be finite and > 0");
}

double scale_factor(double eta, const ExpansionParams& p) {
    const double s = 1.0 + p.epsilon * (1.0 + std::tanh(p.rho * eta));
    return s * s;
}

double scale_factor_derivative(double eta, const ExpansionParams& p) {
    const double sech = 1.0 / std::cosh(p.rho * eta);
    const double s = 1.0 + p.epsilon * (1.0 + std::tanh(p.rho * eta));
    return 2.0 * s * p.epsilon * p.rho * sech * sech;
}

Spectrum make_spectrum(const ExpansionParams& p, const ModeParams& mp) {
    validate(p);
    validate(mp);
    Spectrum s;
    s.mu_in = mp.mass;
    s.mu_out = mp.mass * (1.0 + 2.0 * p.epsilon);
    s.omega_in = std::hypot(mp.k, s.mu_in);
    s.omega_out = std::hypot(mp.k, s.mu_out);
    s.omega_plus = 0.5 * (s.omega_out + s.omega_in);
    // (omega_out^2 - omega_in^2) / (2 (omega_out + omega_in)) with the
    // numerator expanded as mu_out^2 - mu_in^2 = 4 m^2 eps (1+eps)
    s.omega_minus = 2.0 * mp.mass * mp.mass * p.epsilon * (1.0 + p.epsilon) /
                    (s.omega_out + s.omega_in);
    const double mu_scaled = mp.mass * (2.0 * p.epsilon + 1.0);
    s.omega_bar_sq = mu_scaled * mu_scaled - p.rho * p.rho;
    return s;
}

}
