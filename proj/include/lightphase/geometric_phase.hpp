#pragma once

// Berry phase three ways:
//   * connection integral  gamma = -int cos^2(theta/2) dbeta + sin^2(theta/2) dpsi
//   * closed form on the section  gamma = cos(theta) dphi/2
//   * discrete Pancharatnam product, cross-checked against the Girard
//     spherical-excess solid angle (closed cycle: phase = -Omega/2).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lightphase/evolution.hpp"
#include "lightphase/hopf.hpp"
#include "lightphase/spinor.hpp"

namespace lightphase {

struct GeometricPhaseResult {
    double gamma_numeric = 0.0;
    double gamma_analytic = 0.0;
    double solid_angle = 0.0;  // steradians, when a cycle is involved
    double residual = 0.0;     // |numeric - analytic|
};

struct StateSequence {
    std::vector<PolarizationSpinor> states;
    bool closed = false;
};

// Trapezoid rule for the connection integral along a fibre path. Throws on
// branch jumps; phases entering here must already be unwrapped.
template <typename PathRange>
double berry_phase_integral(const PathRange& path) {
    double sum = 0.0, comp = 0.0;
    auto it = std::begin(path);
    auto end = std::end(path);
    if (it == end) return 0.0;
    FiberCoordinates prev = *it;
    for (++it; it != end; ++it) {
        const FiberCoordinates cur = *it;
        const double dbeta = cur.beta - prev.beta;
        const double dpsi = cur.psi - prev.psi;
        if (std::abs(dbeta) >= std::numbers::pi || std::abs(dpsi) >= std::numbers::pi) {
            throw std::domain_error("berry_phase_integral: discontinuous path (branch jump)");
        }
        const double c0 = std::cos(0.5 * prev.theta), c1 = std::cos(0.5 * cur.theta);
        const double s0 = std::sin(0.5 * prev.theta), s1 = std::sin(0.5 * cur.theta);
        const double term =
            -(0.5 * (c0 * c0 + c1 * c1) * dbeta + 0.5 * (s0 * s0 + s1 * s1) * dpsi);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        prev = cur;
    }
    return sum;
}

// Section gauge closed form, Berry phase for a polar angle theta and a
// section-phase change delta_phi.
inline double berry_phase_analytic(double theta, double delta_phi) {
    return std::cos(theta) * 0.5 * delta_phi;
}

// Fibre path of an evolved trajectory in the section gauge:
// beta = -phi/2, psi = +phi/2 at constant theta.
inline std::vector<FiberCoordinates> section_path(const EvolutionTrajectory& traj) {
    std::vector<FiberCoordinates> path;
    // The common -2 (omega/c) R offset only shifts beta and psi by constants,
    // so the relative phase keeps the connection integral cancellation-free.
    path.reserve(traj.phi_rels.size());
    for (double phi : traj.phi_rels) path.push_back(section_constraint(phi, traj.theta));
    return path;
}

struct HelicityPhase {
    double gamma_exact = 0.0;        // +- dphi/2 with dphi = -2 (omega/c) R [chi(T)-1]
    double gamma_first_order = 0.0;  // -+ R (omega/c) chi_dot T
    double gap = 0.0;                // O(epsilon^2)
};

inline HelicityPhase helicity_phase(int helicity, const RoundTripScenario& s,
                                    const ScaleFactorModel& m) {
    if (helicity != 1 && helicity != -1) {
        throw std::invalid_argument("helicity_phase: helicity must be +1 or -1");
    }
    const double delta_phi = -2.0 * s.omega_R_over_c() * m.chi_minus_one(s.T);
    HelicityPhase out;
    out.gamma_exact = helicity * 0.5 * delta_phi;
    out.gamma_first_order = -helicity * s.omega_R_over_c() * m.chi_dot(0.0) * s.T;
    out.gap = std::abs(out.gamma_exact - out.gamma_first_order);
    return out;
}

// Gauge-invariant discrete geometric phase: -arg prod_k <psi_k|psi_{k+1}>,
// closing the loop when the sequence is flagged closed. The product is
// accumulated as a complex number; only one arg is taken at the end.
inline double pancharatnam_phase(const StateSequence& seq) {
    if (seq.states.size() < 2) return 0.0;
    cplx product{1.0, 0.0};
    auto link = [&](const PolarizationSpinor& a, const PolarizationSpinor& b) {
        const cplx ov = a.inner(b);
        if (std::abs(ov) <= default_tolerances.orthogonality) {
            throw std::domain_error(
                "pancharatnam_phase: adjacent states are orthogonal, phase undefined");
        }
        // renormalize to keep the modulus from underflowing on long cycles
        product *= ov / std::abs(ov);
    };
    for (std::size_t k = 0; k + 1 < seq.states.size(); ++k) {
        link(seq.states[k], seq.states[k + 1]);
    }
    if (seq.closed) {
        link(seq.states.back(), seq.states.front());
    }
    return -std::arg(product);
}

namespace detail {

inline std::array<double, 3> cross(const std::array<double, 3>& a,
                                   const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// L'Huilier's theorem for one spherical triangle; sign from the spherical
// triple product of its vertices.
inline double signed_triangle_excess(const std::array<double, 3>& a,
                                     const std::array<double, 3>& b,
                                     const std::array<double, 3>& c) {
    auto side = [](const std::array<double, 3>& u, const std::array<double, 3>& v) {
        // numerically stable great-circle distance
        std::array<double, 3> d{u[0] - v[0], u[1] - v[1], u[2] - v[2]};
        std::array<double, 3> s{u[0] + v[0], u[1] + v[1], u[2] + v[2]};
        return 2.0 * std::atan2(std::sqrt(dot(d, d)), std::sqrt(dot(s, s)));
    };
    const double ab = side(a, b), bc = side(b, c), ca = side(c, a);
    const double s = 0.5 * (ab + bc + ca);
    const double tan_quarter =
        std::sqrt(std::max(0.0, std::tan(0.5 * s) * std::tan(0.5 * (s - ab)) *
                                    std::tan(0.5 * (s - bc)) * std::tan(0.5 * (s - ca))));
    const double excess = 4.0 * std::atan(tan_quarter);
    const double orientation = dot(a, cross(b, c));
    return orientation >= 0.0 ? excess : -excess;
}

}  // namespace detail

// Oriented solid angle of a geodesic polygon on the Poincare sphere, by fan
// triangulation from the first vertex.
inline double solid_angle(const std::vector<PoincarePoint>& vertices) {
    if (vertices.size() < 3) {
        throw std::invalid_argument("solid_angle: need at least 3 vertices");
    }
    const auto v0 = vertices.front().unit_vector();
    double omega = 0.0;
    for (std::size_t k = 1; k + 1 < vertices.size(); ++k) {
        omega += detail::signed_triangle_excess(v0, vertices[k].unit_vector(),
                                                vertices[k + 1].unit_vector());
    }
    return omega;
}

// Great-circle interpolation between two sphere points, inclusive of `a`,
// exclusive of `b`; used to sample geodesic cycles for the oracle tests.
inline std::vector<PoincarePoint> geodesic_samples(const PoincarePoint& a,
                                                   const PoincarePoint& b, int count) {
    if (count < 1) throw std::invalid_argument("geodesic_samples: count must be >= 1");
    const auto va = a.unit_vector();
    const auto vb = b.unit_vector();
    const double angle = std::acos(std::clamp(detail::dot(va, vb), -1.0, 1.0));
    std::vector<PoincarePoint> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double f = static_cast<double>(k) / count;
        std::array<double, 3> v;
        if (angle < 1e-12) {
            v = va;
        } else {
            const double wa = std::sin((1.0 - f) * angle) / std::sin(angle);
            const double wb = std::sin(f * angle) / std::sin(angle);
            v = {wa * va[0] + wb * vb[0], wa * va[1] + wb * vb[1], wa * va[2] + wb * vb[2]};
            const double n = std::sqrt(detail::dot(v, v));
            v = {v[0] / n, v[1] / n, v[2] / n};
        }
        PoincarePoint p;
        p.theta = std::acos(std::clamp(v[2], -1.0, 1.0));
        p.phi = (std::abs(v[0]) + std::abs(v[1]) < 1e-15) ? 0.0 : std::atan2(v[1], v[0]);
        p.at_pole = std::abs(v[0]) + std::abs(v[1]) < 1e-15;
        out.push_back(p);
    }
    return out;
}

// Full oracle run for a geodesic polygon: densely sampled Pancharatnam
// product vs Girard/L'Huilier solid angle.
inline GeometricPhaseResult pancharatnam_oracle(const std::vector<PoincarePoint>& vertices,
                                                int samples_per_edge) {
    StateSequence seq;
    seq.closed = true;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        const auto& a = vertices[k];
        const auto& b = vertices[(k + 1) % vertices.size()];
        for (const auto& p : geodesic_samples(a, b, samples_per_edge)) {
            seq.states.push_back(spinor_from_poincare(p, 0.0));
        }
    }
    GeometricPhaseResult out;
    out.solid_angle = solid_angle(vertices);
    out.gamma_numeric = pancharatnam_phase(seq);
    out.gamma_analytic = -0.5 * out.solid_angle;
    out.residual = std::abs(out.gamma_numeric - out.gamma_analytic);
    return out;
}

}  // namespace lightphase
