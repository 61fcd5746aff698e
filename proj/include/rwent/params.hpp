#pragma once

#include <string>

// Parameter types and closed-form kinematics of a mode in the 2-D
// conformally flat expanding universe with scale factor
//   C(eta) = (1 + epsilon*(1 + tanh(rho*eta)))^2,
// which is flat in the asymptotic past (C -> 1) and future
// (C -> (1+2 epsilon)^2).

namespace rwent {

enum class Statistics { Fermion, Boson };

const char* to_string(Statistics s);

// Expansion profile knobs: total-volume parameter epsilon and rapidity rho,
// both strictly positive and finite.
struct ExpansionParams {
    double epsilon;
    double rho;
};

// Field mass (>= 0) and mode momentum magnitude |k| (> 0).
struct ModeParams {
    double mass;
    double k;
};

// Throw std::invalid_argument naming the offending field.
void validate(const ExpansionParams& p);
void validate(const ModeParams& mp);

// Derived asymptotic quantities. omega_minus is evaluated through
// mu_out^2 - mu_in^2 = 4 m^2 eps (1+eps) so it stays accurate at large k
// where omega_out - omega_in underflows by cancellation. omega_bar_sq keeps
// the signed radicand m^2 (2 eps + 1)^2 - rho^2; a negative value means the
// cosh of the associated frequency analytically continues to a cosine.
struct Spectrum {
    double mu_in;
    double mu_out;
    double omega_in;
    double omega_out;
    double omega_plus;
    double omega_minus;
    double omega_bar_sq;
};

// C(eta); total on finite eta.
double scale_factor(double eta, const ExpansionParams& p);

// dC/deta = 2 (1 + eps (1 + tanh rho eta)) eps rho sech^2(rho eta)
double scale_factor_derivative(double eta, const ExpansionParams& p);

Spectrum make_spectrum(const ExpansionParams& p, const ModeParams& mp);

// omega - mu computed as k^2/(omega + mu): exact identity, no cancellation
// at small k.
inline double omega_minus_mu(double k, double omega, double mu) {
    return k * k / (omega + mu);
}

}
