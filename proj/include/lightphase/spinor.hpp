#pragma once

// Two-spinor representation of pure polarization states and its maps to
// Jones vectors and the Poincare sphere.
//
//   psi_pm = (x +- i y)/sqrt(2) * e^{i beta}
//   |psi>  = (cos(theta/2), sin(theta/2) e^{i phi}) e^{i beta}
//   M(r)   = r . sigma,  r = (sin t cos p, sin t sin p, cos t)

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "lightphase/constants.hpp"

namespace lightphase {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};

struct JonesVector {
    cplx x;
    cplx y;

    double norm_error() const { return std::abs(std::norm(x) + std::norm(y) - 1.0); }
};

struct PolarizationSpinor {
    cplx psi_plus;
    cplx psi_minus;

    double norm_error() const {
        return std::abs(std::norm(psi_plus) + std::norm(psi_minus) - 1.0);
    }

    cplx inner(const PolarizationSpinor& other) const {
        return std::conj(psi_plus) * other.psi_plus + std::conj(psi_minus) * other.psi_minus;
    }

    // Helicity basis: circular polarization eigenstates.
    static PolarizationSpinor epsilon_plus() { return {cplx{1.0, 0.0}, cplx{0.0, 0.0}}; }
    static PolarizationSpinor epsilon_minus() { return {cplx{0.0, 0.0}, cplx{1.0, 0.0}}; }
};

struct PoincarePoint {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // unwrapped, not reduced mod 2 pi
    bool at_pole = false;

    std::array<double, 3> unit_vector() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }
};

inline PolarizationSpinor jones_to_spinor(const JonesVector& j, double beta) {
    if (j.norm_error() > default_tolerances.unit_norm) {
        throw std::invalid_argument("jones_to_spinor: input is not unit-norm");
    }
    const cplx phase = std::exp(iu * beta);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return {inv_sqrt2 * (j.x + iu * j.y) * phase, inv_sqrt2 * (j.x - iu * j.y) * phase};
}

// Inverse of jones_to_spinor at the same beta.
inline JonesVector spinor_to_jones(const PolarizationSpinor& s, double beta) {
    const cplx phase = std::exp(-iu * beta);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return {inv_sqrt2 * (s.psi_plus + s.psi_minus) * phase,
            inv_sqrt2 * (s.psi_plus - s.psi_minus) * phase / iu};
}

// Decompose a unit spinor as (cos(theta/2), sin(theta/2) e^{i phi}) e^{i beta}.
// The global phase is read off the largest-modulus component; at the poles the
// azimuth is conventionally zero and the point is flagged.
inline std::pair<PoincarePoint, double> spinor_to_poincare(const PolarizationSpinor& s) {
    if (s.norm_error() > default_tolerances.unit_norm) {
        throw std::invalid_argument("spinor_to_poincare: input is not unit-norm");
    }
    const double ap = std::abs(s.psi_plus);
    const double am = std::abs(s.psi_minus);
    const double theta = 2.0 * std::atan2(am, ap);

    PoincarePoint p;
    p.theta = theta;
    double global_phase = 0.0;
    if (ap < default_tolerances.unit_norm || am < default_tolerances.unit_norm) {
        p.at_pole = true;
        p.phi = 0.0;
        global_phase = (ap >= am) ? std::arg(s.psi_plus) : std::arg(s.psi_minus);
    } else if (ap >= am) {
        global_phase = std::arg(s.psi_plus);
        p.phi = std::arg(s.psi_minus * std::exp(-iu * global_phase));
    } else {
        // phi from the relative argument; beta then follows from psi_minus.
        p.phi = std::arg(s.psi_minus * std::conj(s.psi_plus));
        global_phase = std::arg(s.psi_minus * std::exp(-iu * p.phi));
    }
    return {p, global_phase};
}

inline PolarizationSpinor spinor_from_poincare(const PoincarePoint& p, double global_phase) {
    const cplx phase = std::exp(iu * global_phase);
    return {std::cos(0.5 * p.theta) * phase,
            std::sin(0.5 * p.theta) * std::exp(iu * p.phi) * phase};
}

// r . sigma: Hermitian, traceless, eigenvalues +-1. The reference-gauge
// spinor at (theta, phi) is its +1 eigenvector.
inline std::array<std::array<cplx, 2>, 2> polarization_matrix(const PoincarePoint& p) {
    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    return {{{cplx{ct, 0.0}, st * std::exp(-iu * p.phi)},
             {st * std::exp(iu * p.phi), cplx{-ct, 0.0}}}};
}

}  // namespace lightphase
