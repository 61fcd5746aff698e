#pragma once

#include "rwent/params.hpp"

namespace rwent {

// Squared Bogoliubov ratio |gamma|^2 held as a natural log so that deeply
// suppressed modes (log_value down to ~-1e6) survive without underflow.
// log_value = -inf encodes exactly zero; it is never NaN.
// For Fermion statistics the stored quantity is the full operator-level
// product |gamma^- chi|^2 that the entanglement entropy consumes.
struct GammaSq {
    double log_value;
    Statistics statistics;

    double value() const;
};

// Fermionic |gamma^- chi|^2. Algebraic prefactor and sinh factors are fused
// pairwise in log domain; the removable zero of (omega_- - m eps) near k -> 0
// is handled by the series of sinh(pi x / rho)/x. Returns log_value = -inf
// for m = 0 or eps = 0 (no mixing).
GammaSq gamma_sq_fermion(const ExpansionParams& p, const ModeParams& mp);

// Bosonic [cosh(pi wbar/rho) + cosh(2 pi omega_-/rho)] /
//         [cosh(pi wbar/rho) + cosh(2 pi omega_+/rho)],
// with cosh(pi wbar/rho) -> cos(pi sqrt(-wbar^2)/rho) when the radicand is
// negative. Strictly < 1 for k > 0, so log_value < 0.
GammaSq gamma_sq_boson(const ExpansionParams& p, const ModeParams& mp);

}
