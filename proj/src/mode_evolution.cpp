#include "rwent/mode_evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rwent/logmath.hpp"

namespace rwent {

namespace {

using cdouble = std::complex<double>;
using State = std::array<cdouble, 2>;  // (phi, dphi/deta)

// q(eta) in phi'' + q phi = 0
struct ModeCoefficient {
    ExpansionParams p;
    ModeParams mp;
    Statistics stat;
    Branch branch;

    cdouble operator()(double eta) const {
        const double s = 1.0 + p.epsilon * (1.0 + std::tanh(p.rho * eta));
        double re = mp.k * mp.k + mp.mass * mp.mass * s * s;
        double im = 0.0;
        if (stat == Statistics::Fermion) {
            const double sech = 1.0 / std::cosh(p.rho * eta);
            const double dsqrt_c = p.epsilon * p.rho * sech * sech;
            im = (branch == Branch::Plus ? 1.0 : -1.0) * mp.mass * dsqrt_c;
        }
        return {re, im};
    }
};

State rhs(const ModeCoefficient& q, double eta, const State& y) {
    return {y[1], -q(eta) * y[0]};
}

// Dormand-Prince 5(4) embedded pair.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

}  // namespace

ModeTrajectory integrate_mode(const ExpansionParams& p, const ModeParams& mp,
                              Statistics stat, Branch branch, double T,
                              double tol) {
    validate(p);
    validate(mp);
    if (!(std::isfinite(T) && p.rho * T >= 20.0 - 1e-9))
        throw std::invalid_argument("integrate_mode: need rho*T >= 20");
    if (!(tol > 1e-13 && tol < 1e-3))
        throw std::invalid_argument("integrate_mode: tol must be in (1e-13, 1e-3)");

    const ModeCoefficient q{p, mp, stat, branch};
    const double omega_in = std::hypot(mp.k, mp.mass);
    const double omega_out = std::hypot(mp.k, mp.mass * (1.0 + 2.0 * p.epsilon));

    ModeTrajectory traj;
    traj.statistics = stat;
    traj.branch = branch;

    double eta = -T;
    State y = {std::exp(cdouble(0.0, omega_in * T)),
               cdouble(0.0, -omega_in) * std::exp(cdouble(0.0, omega_in * T))};
    traj.eta_grid.push_back(eta);
    traj.phi.push_back(y[0]);
    traj.dphi.push_back(y[1]);

    const double span = 2.0 * T;
    const double h_min = 1e-14 * span;
    double h = std::min({0.01 * T, 0.1 / omega_out, 0.1 / p.rho});
    State k1 = rhs(q, eta, y);

    while (eta < T) {
        if (eta + h > T) h = T - eta;

        using D = Dopri5;
        State t, k2, k3, k4, k5, k6, k7, ynew;
        t = {y[0] + h * D::a21 * k1[0], y[1] + h * D::a21 * k1[1]};
        k2 = rhs(q, eta + D::c2 * h, t);
        for (int i = 0; i < 2; ++i)
            t[i] = y[i] + h * (D::a31 * k1[i] + D::a32 * k2[i]);
        k3 = rhs(q, eta + D::c3 * h, t);
        for (int i = 0; i < 2; ++i)
            t[i] = y[i] + h * (D::a41 * k1[i] + D::a42 * k2[i] + D::a43 * k3[i]);
        k4 = rhs(q, eta + D::c4 * h, t);
        for (int i = 0; i < 2; ++i)
            t[i] = y[i] + h * (D::a51 * k1[i] + D::a52 * k2[i] +
                               D::a53 * k3[i] + D::a54 * k4[i]);
        k5 = rhs(q, eta + D::c5 * h, t);
        for (int i = 0; i < 2; ++i)
            t[i] = y[i] + h * (D::a61 * k1[i] + D::a62 * k2[i] +
                               D::a63 * k3[i] + D::a64 * k4[i] + D::a65 * k5[i]);
        k6 = rhs(q, eta + h, t);
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + h * (D::b1 * k1[i] + D::b3 * k3[i] +
                                  D::b4 * k4[i] + D::b5 * k5[i] + D::b6 * k6[i]);
        k7 = rhs(q, eta + h, ynew);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const cdouble e = h * (D::e1 * k1[i] + D::e3 * k3[i] +
                                   D::e4 * k4[i] + D::e5 * k5[i] +
                                   D::e6 * k6[i] + D::e7 * k7[i]);
            const double scale =
                tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(e) / scale;
            err = std::max(err, r);
        }

        if (err <= 1.0) {
            eta += h;
            y = ynew;
            k1 = k7;  // FSAL
            traj.eta_grid.push_back(eta);
            traj.phi.push_back(y[0]);
            traj.dphi.push_back(y[1]);
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < h_min)
            throw integration_error(
                "integrate_mode: step size underflow (stiff regime)");
    }
    return traj;
}

BogoliubovPair match_out(const ModeTrajectory& traj, const ExpansionParams& p,
                         const ModeParams& mp, Statistics stat) {
    validate(p);
    validate(mp);
    if (traj.eta_grid.empty())
        throw std::invalid_argument("match_out: empty trajectory");

    const double eta_end = traj.eta_grid.back();
    const cdouble phi = traj.phi.back();
    const cdouble dphi = traj.dphi.back();
    const double omega_in = std::hypot(mp.k, mp.mass);
    const double omega_out = std::hypot(mp.k, mp.mass * (1.0 + 2.0 * p.epsilon));

    // phi = a e^{-i w eta} + b e^{+i w eta} and its derivative at eta_end
    const cdouble iw(0.0, omega_out);
    const cdouble e_plus = std::exp(iw * eta_end);    // e^{+i w eta}
    const cdouble e_minus = std::exp(-iw * eta_end);  // e^{-i w eta}
    const cdouble a_plane = e_plus * (iw * phi - dphi) / (2.0 * iw);
    const cdouble b_plane = e_minus * (iw * phi + dphi) / (2.0 * iw);

    // reconstruction residual of the solve
    const cdouble phi_r = a_plane * e_minus + b_plane * e_plus;
    const cdouble dphi_r = -iw * a_plane * e_minus + iw * b_plane * e_plus;
    const double norm = std::abs(phi) + std::abs(dphi) / omega_out;
    const double residual =
        (std::abs(phi_r - phi) + std::abs(dphi_r - dphi) / omega_out) /
        std::max(norm, 1e-300);

    // rescale to frequency-normalized modes: |alpha|^2 - |beta|^2 = 1 for
    // the bosonic Wronskian
    const double scale = std::sqrt(omega_out / omega_in);
    return {scale * a_plane, scale * b_plane, stat, traj.branch, residual};
}

double oracle_gamma_sq(const ExpansionParams& p, const ModeParams& mp,
                       Statistics stat, double tol) {
    const double T = 25.0 / p.rho;
    const ModeTrajectory traj =
        integrate_mode(p, mp, stat, Branch::Minus, T, tol);
    const BogoliubovPair pair = match_out(traj, p, mp, stat);
    const double ratio = std::norm(pair.beta / pair.alpha);
    if (stat == Statistics::Boson) return ratio;
    const double mu_out = mp.mass * (1.0 + 2.0 * p.epsilon);
    const double omega_out = std::hypot(mp.k, mu_out);
    const double chi = mp.k / (omega_out + mu_out);
    return ratio * chi * chi;
}

}
