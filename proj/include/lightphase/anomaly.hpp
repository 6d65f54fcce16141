#pragma once

// Frequency anomaly from the Berry connection. Parallel transport of the
// helicity states gives omega_dot = omega chi_dot directly; for a general
// polarization angle theta the constraint
//   cos^2(theta/2) a(theta,T) + sin^2(theta/2) b(theta,T) = 0
// with a = -(omega_dot/omega)(1 - chi_dot T cos theta) + chi_dot cos theta
//      b = +(omega_dot/omega)(1 + chi_dot T cos theta) + chi_dot cos theta
// collapses to  omega_dot/omega = chi_dot / (1 - chi_dot T)  for every theta.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lightphase/constants.hpp"
#include "lightphase/evolution.hpp"

namespace lightphase {

namespace dd {

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Used only to certify the back-substitution residual of the a/b constraint,
// whose bound sits far below one double ulp of the operands.
struct Double2 {
    double hi = 0.0;
    double lo = 0.0;
};

inline Double2 two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Double2 two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Double2 add(const Double2& a, const Double2& b) {
    Double2 s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const Double2 r = two_sum(s.hi, s.lo);
    return r;
}

inline Double2 mul(const Double2& a, const Double2& b) {
    Double2 p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

inline Double2 div(const Double2& a, const Double2& b) {
    const double q1 = a.hi / b.hi;
    Double2 r = add(a, mul({-q1, 0.0}, b));
    const double q2 = r.hi / b.hi;
    r = add(r, mul({-q2, 0.0}, b));
    const double q3 = r.hi / b.hi;
    Double2 q = two_sum(q1, q2);
    q.lo += q3;
    return two_sum(q.hi, q.lo);
}

inline Double2 from(double x) { return {x, 0.0}; }

}  // namespace dd

struct AnomalyPrediction {
    double omega_dot_over_omega = 0.0;  // 1/s, exact closed form
    double theta = 0.0;
    double first_order = 0.0;         // 1/s, = chi_dot
    double second_order_bound = 0.0;  // 1/s
    bool degenerate_theta = false;    // theta = pi/2: constraint is 0 = 0
    double residual = 0.0;            // back-substitution into the a/b constraint
};

// omega_dot/omega = chi_dot for both helicity states; blue shift for
// chi_dot > 0.
inline AnomalyPrediction helicity_drift(const RoundTripScenario& s,
                                        const ScaleFactorModel& m) {
    const double chidot = m.chi_dot(0.0);
    const double eps = std::abs(chidot * s.T);
    if (eps > default_tolerances.adiabatic_hard) {
        throw std::domain_error("helicity_drift: adiabatic bound violated");
    }
    AnomalyPrediction out;
    out.theta = s.theta;
    out.omega_dot_over_omega = chidot;
    out.first_order = chidot;
    out.second_order_bound = eps < 1.0 ? chidot * chidot * s.T / (1.0 - eps) : 0.0;
    return out;
}

inline AnomalyPrediction solve_ab_system(double theta, double chidot, double T) {
    if (std::abs(chidot * T) >= 1.0) {
        throw std::domain_error("solve_ab_system: |chi_dot T| must be < 1");
    }
    AnomalyPrediction out;
    out.theta = theta;
    out.first_order = chidot;
    // cos theta cancels between the two weighted terms, leaving
    // -(omega_dot/omega) cos(theta) (1 - chi_dot T) + chi_dot cos(theta) = 0.
    // theta = pi/2 annihilates both sides; return the limit with a flag.
    out.degenerate_theta = std::abs(std::cos(theta)) < 1e-15;
    out.omega_dot_over_omega = chidot / (1.0 - chidot * T);
    out.second_order_bound = std::abs(chidot * chidot * T / (1.0 - chidot * T));

    // Residual certificate, in double-double so representation error of the
    // quotient does not mask the algebraic cancellation.
    const dd::Double2 x = dd::div(dd::from(chidot), dd::add(dd::from(1.0), {-chidot * T, 0.0}));
    // Weights derived from a single rounded cos^2(theta/2) so that
    // ch2 + sh2 = 1 and ch2 - sh2 = ct hold exactly at double-double level;
    // independently rounded cos(theta) would leave a ~ulp residual behind.
    const double ch2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    const dd::Double2 sh2_d = dd::two_sum(1.0, -ch2);
    const dd::Double2 ct = dd::two_sum(2.0 * ch2, -1.0);
    const dd::Double2 chidot_d = dd::from(chidot);
    const dd::Double2 xTc = dd::mul(dd::mul(chidot_d, dd::from(T)), ct);
    // a = -x (1 - chidot T cos theta) + chidot cos theta
    const dd::Double2 a = dd::add(dd::mul(dd::mul(x, dd::from(-1.0)),
                                          dd::add(dd::from(1.0), dd::mul(xTc, dd::from(-1.0)))),
                                  dd::mul(chidot_d, ct));
    // b = +x (1 + chidot T cos theta) + chidot cos theta
    const dd::Double2 b =
        dd::add(dd::mul(x, dd::add(dd::from(1.0), xTc)), dd::mul(chidot_d, ct));
    const dd::Double2 res = dd::add(dd::mul(dd::from(ch2), a), dd::mul(sh2_d, b));
    out.residual = std::abs(res.hi + res.lo);
    return out;
}

struct ThetaSweepReport {
    std::vector<double> thetas;
    std::vector<AnomalyPrediction> predictions;
    double max_relative_spread = 0.0;
    double max_residual = 0.0;
};

inline ThetaSweepReport theta_independence_sweep(double chidot, double T,
                                                 const std::vector<double>& thetas) {
    ThetaSweepReport report;
    report.thetas = thetas;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (double th : thetas) {
        AnomalyPrediction p = solve_ab_system(th, chidot, T);
        report.max_residual = std::max(report.max_residual, p.residual);
        if (first) {
            lo = hi = p.omega_dot_over_omega;
            first = false;
        } else {
            lo = std::min(lo, p.omega_dot_over_omega);
            hi = std::max(hi, p.omega_dot_over_omega);
        }
        report.predictions.push_back(p);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    report.max_relative_spread = scale > 0.0 ? (hi - lo) / scale : 0.0;
    return report;
}

struct PioneerComparison {
    double chidot = 0.0;
    double predicted_a_t = 0.0;             // 1/s
    double predicted_acceleration = 0.0;    // m/s^2
    double z_score_a_t = 0.0;
    double z_score_a_p = 0.0;
    PioneerConstants reference{};
};

inline PioneerComparison pioneer_comparison(const ScaleFactorModel& m) {
    PioneerComparison out;
    out.chidot = m.chi_dot(0.0);
    out.predicted_a_t = out.chidot;
    out.predicted_acceleration = speed_of_light * out.chidot;
    out.z_score_a_t = (out.reference.a_t - out.predicted_a_t) / out.reference.a_t_sigma;
    out.z_score_a_p =
        (out.reference.a_p - out.predicted_acceleration) / out.reference.a_p_sigma;
    return out;
}

}  // namespace lightphase
