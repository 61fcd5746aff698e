#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "rwent/params.hpp"

// Inversion of fermionic entanglement into the expansion parameters:
// the entanglement-maximizing momentum carries the rapidity, the maximum
// achievable entanglement over (mass, k) carries a lower bound on the
// volume parameter.

namespace rwent {

enum class EstimationFailure {
    FlatEntropy,          // peak entropy below 1e-12: degenerate params
    BracketFailure,       // target outside the bracket's attainable range
    MonotonicityFailure,  // sampled curve not monotone over the bracket
    BracketExhausted,     // upper bracket expansion hit its cap
};

const char* to_string(EstimationFailure f);

struct estimation_error : std::runtime_error {
    EstimationFailure kind;
    estimation_error(EstimationFailure k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

struct OptimalMode {
    double k_star;
    double entropy_at_peak;
    ExpansionParams expansion;
    double mass;
    // two coarse-scan maxima within 1e-9 in entropy; the smaller-k one was
    // refined
    bool multimodal_warning;
};

struct MaxEntanglement {
    double m_star;
    double k_star;
    double s_max;
};

struct EstimationResult {
    double estimate;
    double bracket_lo;
    double bracket_hi;
    double residual;
    int iterations;
};

// Maximize the fermionic entropy over k at fixed (p, mass): coarse
// log-spaced scan bracketing (auto-expanded upward until the entropy at the
// top edge drops below 1e-6 of the peak), then golden-section refinement to
// relative 1e-6. Throws estimation_error(FlatEntropy) when the peak is
// below 1e-12.
OptimalMode optimal_k(const ExpansionParams& p, double mass);

// Joint maximum of the fermionic entropy over (mass, k): outer
// golden-section on mass of the inner optimal_k peak. The result depends
// on epsilon only; rho rescales the optimizers.
MaxEntanglement max_entanglement(const ExpansionParams& p);

// Solve optimal_k(rho; mass, epsilon_ref).k_star = k_observed for rho by
// bisection over the bracket. Monotonicity of the sampled curve is checked
// at 8 points before inverting. Relative rho tolerance 1e-4.
EstimationResult estimate_rho(double mass, double k_observed,
                              double epsilon_ref,
                              std::pair<double, double> bracket);

// Invert the monotone curve S_max(epsilon) at s_observed in [0, 1): any
// epsilon compatible with the observation satisfies
// epsilon >= result.estimate. Upper bracket expands up to 1e8.
EstimationResult epsilon_lower_bound(double s_observed);

}
