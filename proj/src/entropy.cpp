#include "rwent/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "rwent/logmath.hpp"

namespace rwent {

namespace {

// ln(1e-300): below this x log x is taken as exactly 0
constexpr double kLogZeroCut = -690.77552789821368;

void check_stat(const GammaSq& g, Statistics want, const char* fn) {
    if (g.statistics != want)
        throw std::invalid_argument(std::string(fn) +
                                    ": wrong statistics on GammaSq");
}

}  // namespace

double entropy_fermion(const GammaSq& g) {
    check_stat(g, Statistics::Fermion, "entropy_fermion");
    const double L = g.log_value;
    if (L < kLogZeroCut) return 0.0;
    // [ln(1+x) - L * x/(1+x)] / ln 2 with x = e^L
    return (softplus(L) - L * logistic(L)) / kLn2;
}

double entropy_boson(const GammaSq& g) {
    check_stat(g, Statistics::Boson, "entropy_boson");
    const double L = g.log_value;
    if (L >= 0.0)
        throw std::domain_error(
            "entropy_boson: |gamma_B|^2 >= 1 (upstream regime error)");
    if (L < kLogZeroCut) return 0.0;
    // [-ln(1-x) - L * x/(1-x)] / ln 2 with x = e^L;
    // 1-x = -expm1(L), x/(1-x) = 1/expm1(-L)
    return (-std::log(-std::expm1(L)) - L / std::expm1(-L)) / kLn2;
}

double entropy_boson_bruteforce(double x, int truncation) {
    if (!(x >= 0.0 && x < 1.0))
        throw std::invalid_argument("entropy_boson_bruteforce: x must be in [0,1)");
    if (truncation < 1)
        throw std::invalid_argument("entropy_boson_bruteforce: truncation must be >= 1");
    if (x == 0.0) return 0.0;
    const double log2_x = std::log2(x);
    const double log2_1mx = std::log2(1.0 - x);
    double sum = 0.0;
    double p = 1.0 - x;
    for (int n = 0; n <= truncation; ++n) {
        sum -= p * (log2_1mx + n * log2_x);
        p *= x;
    }
    return sum;
}

int adaptive_boson_truncation(double x) {
    if (!(x >= 0.0 && x < 1.0))
        throw std::invalid_argument("adaptive_boson_truncation: x must be in [0,1)");
    int n = 512;
    while (n < 65536) {
        // relative tail weight x^n (1-x) / (1 - x^{n+1})
        const double tail = std::pow(x, n) * (1.0 - x) /
                            (1.0 - std::pow(x, n + 1));
        if (tail <= 1e-15) break;
        n *= 2;
    }
    return n;
}

ReducedState reduced_state(const GammaSq& g, int truncation) {
    const double L = g.log_value;
    ReducedState s;
    s.statistics = g.statistics;
    if (g.statistics == Statistics::Fermion) {
        s.occupation_log_weights = {0.0, L};
        s.normalization = 1.0 + std::exp(L);
        return s;
    }
    if (L >= 0.0)
        throw std::domain_error("reduced_state: boson requires |gamma|^2 < 1");
    if (truncation < 1)
        throw std::invalid_argument("reduced_state: truncation must be >= 1");
    s.occupation_log_weights.resize(truncation + 1);
    s.occupation_log_weights[0] = 0.0;
    for (int n = 1; n <= truncation; ++n)
        s.occupation_log_weights[n] = (L == kNegInf) ? kNegInf : n * L;
    // geometric partial sum (1 - x^{N+1}) / (1 - x)
    s.normalization = (L == kNegInf)
                          ? 1.0
                          : std::expm1((truncation + 1) * L) / std::expm1(L);
    return s;
}

double state_entropy_bits(const ReducedState& s) {
    const double log_norm = std::log(s.normalization);
    double sum = 0.0;
    for (double lw : s.occupation_log_weights) {
        const double lp = lw - log_norm;
        if (lp < kLogZeroCut) continue;
        sum -= std::exp(lp) * lp;
    }
    return sum / kLn2;
}

EntropySample entropy_sample(const ExpansionParams& p, const ModeParams& mp,
                             Statistics stat) {
    const GammaSq g = stat == Statistics::Fermion ? gamma_sq_fermion(p, mp)
                                                  : gamma_sq_boson(p, mp);
    const double bits =
        stat == Statistics::Fermion ? entropy_fermion(g) : entropy_boson(g);
    return {p, mp, stat, bits};
}

}
