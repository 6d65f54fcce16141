#pragma once

// Dynamical Doppler counter-estimate in expansion-scaled coordinates
// R* = chi R. To first order in the expansion rate the probe's motion picks
// up only a tiny red-shift correction
//   delta_omega / omega = -h (R*/c) (v*/c)^2,
// opposite in sign and ~ (v*/c)^2 smaller than the geometric blue shift, so
// the anomaly cannot come from the expansion acting on the probe.

#include <cmath>
#include <stdexcept>

#include "lightphase/constants.hpp"

namespace lightphase {

struct ProbeState {
    double r_star = 0.0;  // m, scaled radial coordinate chi R
    double v_star = 0.0;  // m/s, probe radial velocity
    double h = 0.0;       // 1/s, expansion rate chi_dot/chi

    double light_time() const { return r_star / speed_of_light; }
};

// First-order truncation only; refuse inputs where it stops being valid.
inline void check_regime(const ProbeState& p) {
    if (std::abs(p.v_star) >= 0.01 * speed_of_light) {
        throw std::domain_error("probe regime: |v*| must be << c");
    }
    if (std::abs(p.h * p.r_star / speed_of_light) >= 1e-3) {
        throw std::domain_error("probe regime: |h R*/c| must be << 1");
    }
    if (std::abs(p.h * p.r_star * p.v_star) / (speed_of_light * speed_of_light) > 1e-6) {
        throw std::domain_error("probe regime: first-order truncation invalid");
    }
}

// g* = -g_{0R*}/g*_{00} ~= -h R*/c  (the (h R*/c)^2 term in g*_{00} is
// dropped with the rest of the second order).
inline double radial_metric_vector(const ProbeState& p) {
    check_regime(p);
    return -p.h * p.r_star / speed_of_light;
}

// Additive part of dR*/dt ~= v* (1 + h R* v*/c^2), kept separate because the
// ~1e-18 relative correction is far below one ulp of v* itself.
inline double radial_velocity_correction(const ProbeState& p) {
    check_regime(p);
    const double c2 = speed_of_light * speed_of_light;
    return p.v_star * (p.h * p.r_star * p.v_star / c2);
}

// dR*/dt; proper-time bookkeeping dtau = dt - g* dR*/c is already folded in.
inline double corrected_radial_velocity(const ProbeState& p) {
    return p.v_star + radial_velocity_correction(p);
}

struct DopplerShift {
    double omega_prime = 0.0;         // rad/s
    double anomalous_fraction = 0.0;  // dimensionless, red shift for h > 0
};

inline DopplerShift dynamic_doppler_shift(const ProbeState& p, double omega) {
    check_regime(p);
    const double beta = p.v_star / speed_of_light;
    DopplerShift out;
    out.anomalous_fraction = -p.h * p.light_time() * beta * beta;
    out.omega_prime = omega * (1.0 - beta) + omega * out.anomalous_fraction;
    return out;
}

}  // namespace lightphase
