#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "rwent/params.hpp"

// Independent numerical oracle for the closed-form Bogoliubov ratios:
// integrates the mode equations across the expansion epoch and extracts
// (alpha, beta) by plane-wave matching in the flat out region.
//
// Boson:          chi'' + (k^2 + m^2 C(eta)) chi = 0
// Fermion (+/-):  phi'' + (k^2 + m^2 C(eta) +/- i m dsqrtC(eta)) phi = 0,
//                 dsqrtC = d sqrt(C)/deta = eps rho sech^2(rho eta)
//
// The minus branch is the one whose |beta/alpha|^2 enters the fermionic
// entanglement.

namespace rwent {

enum class Branch { Plus, Minus };

struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepted integration steps: eta grid with mode function and its
// eta-derivative.
struct ModeTrajectory {
    std::vector<double> eta_grid;
    std::vector<std::complex<double>> phi;
    std::vector<std::complex<double>> dphi;
    Statistics statistics;
    Branch branch;
};

// Coefficients of the out-region decomposition, rescaled to the
// frequency-normalized mode convention (so the bosonic Wronskian reads
// |alpha|^2 - |beta|^2 = 1). residual is the relative error of the
// 2x2 matching solve.
struct BogoliubovPair {
    std::complex<double> alpha;
    std::complex<double> beta;
    Statistics statistics;
    Branch branch;
    double residual;
};

// Integrate from eta = -T to +T starting from the positive-frequency
// in-mode plane wave phi(-T) = e^{-i omega_in (-T)}. Requires rho*T >= 20
// (asymptotic flatness) and tol in (1e-13, 1e-3). Throws integration_error
// on step-size underflow (stiffness; expected only for rho >> 1e4).
ModeTrajectory integrate_mode(const ExpansionParams& p, const ModeParams& mp,
                              Statistics stat, Branch branch, double T,
                              double tol);

// Express the trajectory endpoint in the plane-wave basis
// {e^{-i omega_out eta}, e^{+i omega_out eta}}.
BogoliubovPair match_out(const ModeTrajectory& traj, const ExpansionParams& p,
                         const ModeParams& mp, Statistics stat);

// |beta/alpha|^2, multiplied by the spinor factor k^2/(omega_out+mu_out)^2
// for fermions (minus branch), directly comparable with the closed forms.
double oracle_gamma_sq(const ExpansionParams& p, const ModeParams& mp,
                       Statistics stat, double tol = 1e-10);

}
