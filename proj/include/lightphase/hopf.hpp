#pragma once

// S^3 enlargement of the polarization state space and its bundle structure:
// embedding (theta, beta, psi) -> (x1..x4), the projection back to the
// Poincare sphere with phi = psi - beta, the physical section
// beta = -phi/2, psi = +phi/2, the S^3 line element and the non-singular
// vector potential (A_theta, A_beta, A_psi) = (0, cos(theta/2), sin(theta/2)).

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lightphase/spinor.hpp"

namespace lightphase {

struct FiberCoordinates {
    double theta = 0.0;  // [0, pi]
    double beta = 0.0;   // unwrapped
    double psi = 0.0;    // unwrapped
};

struct S3Point {
    double x1 = 1.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;

    double norm_error() const {
        return std::abs(x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4 - 1.0);
    }
};

struct VectorPotential {
    double a_theta = 0.0;
    double a_beta = 0.0;
    double a_psi = 0.0;
};

inline S3Point embed(const FiberCoordinates& f) {
    const double ch = std::cos(0.5 * f.theta);
    const double sh = std::sin(0.5 * f.theta);
    return {ch * std::cos(f.beta), ch * std::sin(f.beta), sh * std::cos(f.psi),
            sh * std::sin(f.psi)};
}

// Bundle projection. The azimuth comes back as the principal value of
// psi - beta; when tracing a path, unwrap against the previous sample
// with unwrap_near below.
inline PoincarePoint project(const S3Point& p) {
    if (p.norm_error() > default_tolerances.unit_norm) {
        throw std::invalid_argument("project: point is off the unit three-sphere");
    }
    const double ch = std::hypot(p.x1, p.x2);
    const double sh = std::hypot(p.x3, p.x4);
    PoincarePoint out;
    out.theta = 2.0 * std::atan2(sh, ch);
    if (ch < default_tolerances.unit_norm || sh < default_tolerances.unit_norm) {
        out.at_pole = true;
        out.phi = 0.0;
    } else {
        const double beta = std::atan2(p.x2, p.x1);
        const double psi = std::atan2(p.x4, p.x3);
        out.phi = std::remainder(psi - beta, 2.0 * std::numbers::pi);
    }
    return out;
}

// Shift angle by multiples of 2 pi onto the branch closest to `previous`.
inline double unwrap_near(double angle, double previous) {
    const double two_pi = 2.0 * std::numbers::pi;
    return angle + two_pi * std::round((previous - angle) / two_pi);
}

// Physical section: beta = -phi/2, psi = +phi/2.
inline FiberCoordinates section_constraint(double phi, double theta = 0.0) {
    return {theta, -0.5 * phi, 0.5 * phi};
}

// ds^2 = dtheta^2/4 + cos^2(theta/2) dbeta^2 + sin^2(theta/2) dpsi^2
inline double line_element(const FiberCoordinates& f, double dtheta, double dbeta,
                           double dpsi) {
    const double ch = std::cos(0.5 * f.theta);
    const double sh = std::sin(0.5 * f.theta);
    return 0.25 * dtheta * dtheta + ch * ch * dbeta * dbeta + sh * sh * dpsi * dpsi;
}

// Finite at the poles, unlike the monopole-gauge potentials on S^2.
inline VectorPotential vector_potential(double theta) {
    if (theta < 0.0 || theta > std::numbers::pi) {
        throw std::invalid_argument("vector_potential: theta outside [0, pi]");
    }
    return {0.0, std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

// Line integral of A . dr along a discrete fibre path, where the displacement
// carries the metric factors of the S^3 line element:
//   dr = (dtheta/2, cos(theta/2) dbeta, sin(theta/2) dpsi).
// A . dr therefore reproduces cos^2(theta/2) dbeta + sin^2(theta/2) dpsi,
// and the path integral equals minus the Berry phase of the same path.
template <typename PathRange>
double potential_line_integral(const PathRange& path) {
    double sum = 0.0;
    double comp = 0.0;  // Kahan
    auto it = std::begin(path);
    auto end = std::end(path);
    if (it == end) return 0.0;
    FiberCoordinates prev = *it;
    for (++it; it != end; ++it) {
        const FiberCoordinates cur = *it;
        const VectorPotential a0 = vector_potential(prev.theta);
        const VectorPotential a1 = vector_potential(cur.theta);
        // trapezoid in the integrand A_i * (metric factor)_i
        const double wb = 0.5 * (a0.a_beta * std::cos(0.5 * prev.theta) +
                                 a1.a_beta * std::cos(0.5 * cur.theta));
        const double wp = 0.5 * (a0.a_psi * std::sin(0.5 * prev.theta) +
                                 a1.a_psi * std::sin(0.5 * cur.theta));
        const double term = wb * (cur.beta - prev.beta) + wp * (cur.psi - prev.psi);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        prev = cur;
    }
    return sum;
}

}  // namespace lightphase
