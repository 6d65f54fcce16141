#include <catch_amalgamated.hpp>

#include <numbers>

#include "lightphase/evolution.hpp"

using namespace lightphase;
using Catch::Matchers::WithinAbs;

namespace {

const double pi = std::numbers::pi;

// scenario with omega R / c = 1
RoundTripScenario unit_scenario(double theta, long steps = 100000) {
    RoundTripScenario s;
    s.R = speed_of_light;
    s.omega = 1.0;
    s.T = 1.0;
    s.theta = theta;
    s.steps = steps;
    return s;
}

}  // namespace

TEST_CASE("eikonal") {
    ScaleFactorModel still{ScaleFactorKind::linear, 0.0};
    RoundTripScenario s = unit_scenario(0.0);
    s.R = 0.0;
    CHECK_THAT(eikonal(s, still, 0.0, +1), WithinAbs(0.0, 1e-15));

    RoundTripScenario u = unit_scenario(0.0);
    u.omega = 2.0;
    u.R = 0.5 * speed_of_light;  // omega R / c = 1, omega t = 2 at t = 1
    CHECK_THAT(eikonal(u, still, 1.0, +1), WithinAbs(-1.0, 1e-12));

    // static space: pure dynamic phase
    RoundTripScenario v = unit_scenario(0.0);
    CHECK_THAT(eikonal(v, still, 0.7, +1) - eikonal(v, still, 0.0, +1),
               WithinAbs(-v.omega * 0.7, 1e-12));
    CHECK_THROWS_AS(eikonal(v, still, 0.1, 2), std::invalid_argument);
}

TEST_CASE("section phase") {
    ScaleFactorModel still{ScaleFactorKind::linear, 0.0};
    const RoundTripScenario s = unit_scenario(0.0);
    CHECK_THAT(section_phase(s, still, 0.3), WithinAbs(-2.0, 1e-12));

    // delta phi over [0, T] = -2 (omega/c) R [chi(T) - 1]
    ScaleFactorModel lin{ScaleFactorKind::linear, 1e-6};
    CHECK_THAT(section_phase_increment(s, lin, s.T), WithinAbs(-2e-6, 1e-18));
    CHECK_THAT(section_phase_increment(s, still, s.T), WithinAbs(0.0, 1e-18));
}

TEST_CASE("generator increment") {
    const auto zero = generator_increment(0.0);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
    const auto g = generator_increment(0.2);
    CHECK_THAT(g[0], WithinAbs(0.1, 1e-15));
    CHECK_THAT(g[1], WithinAbs(-0.1, 1e-15));
    // exp(-i dS) is a unit-modulus diagonal
    CHECK_THAT(std::abs(std::exp(-iu * g[0]) * std::exp(-iu * g[1])), WithinAbs(1.0, 1e-15));
}

TEST_CASE("static space evolution is the identity") {
    const RoundTripScenario s = unit_scenario(pi / 5, 1000);
    const auto traj = evolve(s, {ScaleFactorKind::linear, 0.0});
    CHECK(std::abs(traj.states.front().inner(traj.states.back()) - cplx{1.0, 0.0}) < 1e-14);
    CHECK(traj.max_norm_error < 1e-12);
    CHECK_THAT(dynamic_phase(traj), WithinAbs(0.0, 1e-15));
    CHECK_THAT(geometric_remainder(traj), WithinAbs(0.0, 1e-15));
    CHECK(parallel_transport_residual(traj) == 0.0);
}

TEST_CASE("helicity evolution reproduces the closed-form phase") {
    const RoundTripScenario s = unit_scenario(0.0, 20000);
    const ScaleFactorModel m{ScaleFactorKind::linear, 1e-6};
    const auto traj = evolve(s, m);
    // final state = epsilon_+ times exp(+i (omega/c) R chi(T)) in the section gauge
    const cplx expected = std::exp(iu * (s.omega_R_over_c() * m.chi(s.T)));
    CHECK(std::abs(traj.states.back().psi_plus - expected) < 1e-12);
    CHECK(std::abs(traj.states.back().psi_minus) < 1e-15);
    CHECK(traj.max_norm_error < 1e-12);
}

TEST_CASE("norm is preserved at every sample") {
    const RoundTripScenario s = unit_scenario(1.1, 5000);
    const auto traj = evolve(s, {ScaleFactorKind::exponential, 1e-5});
    for (const auto& st : traj.states) CHECK(st.norm_error() < 1e-12);
}

TEST_CASE("composition over [0,T/2] then [T/2,T] matches a single run") {
    const RoundTripScenario s = unit_scenario(0.9, 1000);
    const ScaleFactorModel m{ScaleFactorKind::exponential, 2e-5};
    const auto whole = evolve(s, m);

    EvolutionTrajectory split;
    split.theta = s.theta;
    const PolarizationSpinor initial = section_state(s.theta, section_phase(s, m, 0.0));
    evolve_segment(s, m, 0.0, 0.5 * s.T, 500, initial, split);
    const PolarizationSpinor handoff = split.states.back();
    evolve_segment(s, m, 0.5 * s.T, s.T, 500, handoff, split);

    const auto& a = whole.states.back();
    const auto& b = split.states.back();
    CHECK(std::abs(a.psi_plus - b.psi_plus) < 1e-12);
    CHECK(std::abs(a.psi_minus - b.psi_minus) < 1e-12);
}

TEST_CASE("phi stays on a continuous branch") {
    const RoundTripScenario s = unit_scenario(0.3, 2000);
    const auto traj = evolve(s, {ScaleFactorKind::linear, 1e-4});
    for (std::size_t k = 0; k + 1 < traj.phis.size(); ++k) {
        CHECK(std::abs(traj.phis[k + 1] - traj.phis[k]) < pi);
    }
}

TEST_CASE("adiabaticity bookkeeping") {
    RoundTripScenario s = unit_scenario(0.0, 100);
    const auto ok = evolve(s, {ScaleFactorKind::linear, 1e-6});
    CHECK_FALSE(ok.adiabatic_warning);
    const auto warned = evolve(s, {ScaleFactorKind::linear, 1e-2});
    CHECK(warned.adiabatic_warning);
    CHECK_THROWS_AS(evolve(s, ScaleFactorModel{ScaleFactorKind::linear, 0.5}),
                    std::domain_error);
}

TEST_CASE("dynamic phase and geometric remainder") {
    // theta = 0: remainder = delta_phi / 2 = -1e-6 at omega R / c = 1
    {
        const auto traj = evolve(unit_scenario(0.0), {ScaleFactorKind::linear, 1e-6});
        CHECK_THAT(geometric_remainder(traj), WithinAbs(-1e-6, 1e-9));
    }
    // theta = pi/2: cos theta = 0, remainder vanishes
    {
        const auto traj = evolve(unit_scenario(pi / 2), {ScaleFactorKind::linear, 1e-6});
        CHECK_THAT(geometric_remainder(traj), WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("linear-in-epsilon law at theta = 0") {
    double previous = 0.0;
    for (double eps : {1e-4, 5e-5, 2.5e-5}) {
        const auto traj = evolve(unit_scenario(0.0, 20000), {ScaleFactorKind::linear, eps});
        const double gamma = geometric_remainder(traj);
        CHECK_THAT(gamma, WithinAbs(0.5 * traj.delta_phi(), 1e-2 * std::abs(gamma)));
        if (previous != 0.0) {
            CHECK_THAT(gamma / previous, WithinAbs(0.5, 0.01));
        }
        previous = gamma;
    }
}

TEST_CASE("parallel transport residual") {
    const auto tiny = evolve(unit_scenario(pi / 3), {ScaleFactorKind::linear, 1e-6});
    CHECK(parallel_transport_residual(tiny) < 1e-10);

    // diagonal evolution at the pole is exactly phase-only
    const auto pole = evolve(unit_scenario(0.0, 10000), {ScaleFactorKind::linear, 1e-4});
    CHECK(parallel_transport_residual(pole) < 1e-12);
}
