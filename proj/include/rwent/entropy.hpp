#pragma once

#include <vector>

#include "rwent/bogoliubov.hpp"
#include "rwent/params.hpp"

// Von Neumann entanglement entropies (base-2) of the out-region reduced
// states. Fermion modes are qubits; boson modes carry the geometric
// occupation tower w_n proportional to |gamma_B|^{2n}.

namespace rwent {

// S_F = log2(1+x) - x log2(x)/(1+x), x = |gamma_F|^2, evaluated from the
// log-domain x. 0 at x = 0, 1 at x = 1. Values of x below 1e-300 return
// exactly 0.
double entropy_fermion(const GammaSq& g);

// S_B = -log2(1-x) - x log2(x)/(1-x), x = |gamma_B|^2 < 1. Unbounded as
// x -> 1; throws std::domain_error for x >= 1 (an upstream regime error).
double entropy_boson(const GammaSq& g);

// Truncated entropy of the geometric distribution p_n = (1-x) x^n,
// n = 0..truncation. Independent brute-force oracle for entropy_boson.
double entropy_boson_bruteforce(double x, int truncation);

// Smallest N in {512, 1024, ..., 65536} whose relative tail weight is
// below 1e-15; used to pick the brute-force truncation.
int adaptive_boson_truncation(double x);

// Reduced single-mode state: unnormalized log weights of occupation
// numbers 0,1,... (two entries for fermions, truncation+1 for bosons) plus
// the evaluated partition sum.
struct ReducedState {
    Statistics statistics;
    std::vector<double> occupation_log_weights;
    double normalization;
};

ReducedState reduced_state(const GammaSq& g, int truncation);

// Direct -sum p log2 p over the normalized weights.
double state_entropy_bits(const ReducedState& s);

struct EntropySample {
    ExpansionParams expansion;
    ModeParams mode;
    Statistics statistics;
    double entropy_bits;
};

// Full pipeline: params -> gamma -> entropy.
EntropySample entropy_sample(const ExpansionParams& p, const ModeParams& mp,
                             Statistics s);

}
