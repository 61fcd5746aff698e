#include "rwent/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rwent/bogoliubov.hpp"
#include "rwent/entropy.hpp"

namespace rwent {

const char* to_string(EstimationFailure f) {
    switch (f) {
        case EstimationFailure::FlatEntropy: return "flat-entropy";
        case EstimationFailure::BracketFailure: return "bracket-failure";
        case EstimationFailure::MonotonicityFailure: return "monotonicity-failure";
        case EstimationFailure::BracketExhausted: return "bracket-exhausted";
    }
    return "unknown";
}

namespace {

double fermion_entropy_at(const ExpansionParams& p, double mass, double k) {
    return entropy_fermion(gamma_sq_fermion(p, {mass, k}));
}

// golden-section maximum of f on [lo, hi] in log coordinates, to relative
// width rel_tol
template <class F>
double golden_max(F&& f, double lo, double hi, double rel_tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = std::log(lo), b = std::log(hi);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(std::exp(c)), fd = f(std::exp(d));
    while (b - a > rel_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(std::exp(d));
        }
    }
    return std::exp(0.5 * (a + b));
}

struct ScanResult {
    std::vector<double> xs, fs;
    int argmax = 0;
};

template <class F>
ScanResult log_scan(F&& f, double lo, double hi, int count) {
    ScanResult r;
    r.xs.resize(count);
    r.fs.resize(count);
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) {
        r.xs[i] = lo * std::exp(i * step);
        r.fs[i] = f(r.xs[i]);
        if (r.fs[i] > r.fs[r.argmax]) r.argmax = i;
    }
    return r;
}

}  // namespace

OptimalMode optimal_k(const ExpansionParams& p, double mass) {
    validate(p);
    if (!(std::isfinite(mass) && mass > 0.0))
        throw std::invalid_argument("optimal_k: mass must be finite and > 0");
    const auto entropy_at = [&](double k) {
        return fermion_entropy_at(p, mass, k);
    };

    const double scale = std::max(mass, p.rho);
    double k_lo = 1e-3 * scale;
    double k_hi = 1e3 * scale;
    ScanResult scan = log_scan(entropy_at, k_lo, k_hi, 64);

    // expand upward until the top edge is negligible against the peak
    int expansions = 0;
    while (scan.fs.back() > 1e-6 * scan.fs[scan.argmax] && expansions < 8) {
        k_hi *= 10.0;
        ++expansions;
        scan = log_scan(entropy_at, k_lo, k_hi, 64 + 8 * expansions);
    }

    const double peak = scan.fs[scan.argmax];
    if (!(peak > 1e-12))
        throw estimation_error(EstimationFailure::FlatEntropy,
                               "optimal_k: peak entropy below 1e-12");

    // multi-modality: a second coarse local maximum within 1e-9 in entropy
    // ties toward the smaller-k bracket
    int pick = scan.argmax;
    bool warn = false;
    const int n = static_cast<int>(scan.xs.size());
    for (int i = 1; i + 1 < n; ++i) {
        if (i == scan.argmax) continue;
        if (scan.fs[i] > scan.fs[i - 1] && scan.fs[i] > scan.fs[i + 1] &&
            std::abs(scan.fs[i] - peak) <= 1e-9) {
            warn = true;
            if (i < pick) pick = i;
        }
    }

    const double lo = scan.xs[std::max(pick - 1, 0)];
    const double hi = scan.xs[std::min(pick + 1, n - 1)];
    const double k_star = golden_max(entropy_at, lo, hi, 1e-6);
    OptimalMode r;
    r.k_star = k_star;
    r.entropy_at_peak = entropy_at(k_star);
    r.expansion = p;
    r.mass = mass;
    r.multimodal_warning = warn;
    return r;
}

MaxEntanglement max_entanglement(const ExpansionParams& p) {
    validate(p);
    const auto peak_at = [&](double m) {
        try {
            return optimal_k(p, m).entropy_at_peak;
        } catch (const estimation_error&) {
            return 0.0;  // flat entropy at degenerate masses
        }
    };

    // the optimal mass scales with rho; epsilon pushes it lower, hence the
    // wide bottom decade
    double m_lo = 1e-7 * p.rho;
    const double m_hi = 1e3 * p.rho;
    ScanResult scan = log_scan(peak_at, m_lo, m_hi, 96);
    int expansions = 0;
    while (scan.argmax == 0 && scan.fs[scan.argmax] > 0.0 && expansions < 5) {
        m_lo *= 0.1;
        ++expansions;
        scan = log_scan(peak_at, m_lo, m_hi, 96 + 8 * expansions);
    }
    if (!(scan.fs[scan.argmax] > 1e-12))
        throw estimation_error(
            EstimationFailure::FlatEntropy,
            "max_entanglement: entropy below 1e-12 over the whole mass scan");

    const int n = static_cast<int>(scan.xs.size());
    const double lo = scan.xs[std::max(scan.argmax - 1, 0)];
    const double hi = scan.xs[std::min(scan.argmax + 1, n - 1)];
    const double m_star = golden_max(peak_at, lo, hi, 1e-6);
    const OptimalMode best = optimal_k(p, m_star);
    return {m_star, best.k_star, best.entropy_at_peak};
}

EstimationResult estimate_rho(double mass, double k_observed,
                              double epsilon_ref,
                              std::pair<double, double> bracket) {
    if (!(std::isfinite(mass) && mass > 0.0))
        throw std::invalid_argument("estimate_rho: mass must be finite and > 0");
    if (!(std::isfinite(k_observed) && k_observed > 0.0))
        throw std::invalid_argument("estimate_rho: k_observed must be finite and > 0");
    if (!(std::isfinite(epsilon_ref) && epsilon_ref > 0.0))
        throw std::invalid_argument("estimate_rho: epsilon_ref must be finite and > 0");
    double lo = bracket.first, hi = bracket.second;
    if (!(std::isfinite(lo) && std::isfinite(hi) && 0.0 < lo && lo < hi))
        throw std::invalid_argument("estimate_rho: bracket must satisfy 0 < lo < hi");

    const auto k_star_at = [&](double rho) {
        return optimal_k({epsilon_ref, rho}, mass).k_star;
    };

    // monotonicity of the tuning curve over the bracket, sampled at 8
    // points (tolerant of optimizer noise on saturated stretches)
    std::vector<double> samples(8);
    for (int i = 0; i < 8; ++i) {
        const double rho = lo * std::pow(hi / lo, i / 7.0);
        samples[i] = k_star_at(rho);
        if (i > 0 && samples[i] < samples[i - 1] * (1.0 - 1e-7))
            throw estimation_error(
                EstimationFailure::MonotonicityFailure,
                "estimate_rho: optimal-k curve not monotone over bracket");
    }
    if (k_observed < samples.front() || k_observed > samples.back())
        throw estimation_error(
            EstimationFailure::BracketFailure,
            "estimate_rho: k_observed outside the bracket's optimal-k range [" +
                std::to_string(samples.front()) + ", " +
                std::to_string(samples.back()) + "]");

    int iterations = 0;
    while (hi / lo - 1.0 > 1e-4) {
        const double mid = std::sqrt(lo * hi);
        (k_star_at(mid) < k_observed ? lo : hi) = mid;
        ++iterations;
    }
    const double estimate = std::sqrt(lo * hi);
    const double residual =
        std::abs(k_star_at(estimate) - k_observed) / k_observed;
    return {estimate, lo, hi, residual, iterations};
}

EstimationResult epsilon_lower_bound(double s_observed) {
    if (!(std::isfinite(s_observed) && s_observed >= 0.0 && s_observed < 1.0))
        throw std::invalid_argument(
            "epsilon_lower_bound: entropy must be in [0, 1)");
    if (s_observed == 0.0) return {0.0, 0.0, 0.0, 0.0, 0};

    const auto s_max_at = [](double eps) {
        try {
            return max_entanglement({eps, 1.0}).s_max;  // rho-independent
        } catch (const estimation_error& e) {
            if (e.kind == EstimationFailure::FlatEntropy) return 0.0;
            throw;
        }
    };

    double lo = 1e-9;
    double hi = 1.0;
    while (s_max_at(hi) < s_observed) {
        hi *= 10.0;
        if (hi > 1e8)
            throw estimation_error(
                EstimationFailure::BracketExhausted,
                "epsilon_lower_bound: entropy unattainable below epsilon = 1e8");
    }

    // the curve must be nondecreasing across the bracket for the bisection
    // to bound epsilon from below
    double prev = 0.0;
    for (int i = 0; i < 6; ++i) {
        const double eps = lo * std::pow(hi / lo, i / 5.0);
        const double s = s_max_at(eps);
        if (s < prev * (1.0 - 1e-9))
            throw estimation_error(
                EstimationFailure::MonotonicityFailure,
                "epsilon_lower_bound: S_max(epsilon) not monotone over bracket");
        prev = s;
    }

    int iterations = 0;
    while (hi / lo - 1.0 > 1e-3) {
        const double mid = std::sqrt(lo * hi);
        (s_max_at(mid) < s_observed ? lo : hi) = mid;
        ++iterations;
    }
    const double estimate = std::sqrt(lo * hi);
    const double residual = std::abs(s_max_at(estimate) - s_observed);
    return {estimate, lo, hi, residual, iterations};
}

}
