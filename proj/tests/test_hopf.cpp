#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>
#include <vector>

#include "lightphase/geometric_phase.hpp"
#include "lightphase/hopf.hpp"

using namespace lightphase;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double tol = 1e-12;
const double pi = std::numbers::pi;
}

TEST_CASE("embed hits the three-sphere") {
    const auto a = embed({pi / 2, 0.0, 0.0});
    CHECK_THAT(a.x1, WithinAbs(std::numbers::sqrt2 / 2, tol));
    CHECK_THAT(a.x2, WithinAbs(0.0, tol));
    CHECK_THAT(a.x3, WithinAbs(std::numbers::sqrt2 / 2, tol));
    CHECK_THAT(a.x4, WithinAbs(0.0, tol));

    const auto b = embed({0.0, 0.7, 123.0});
    CHECK_THAT(b.x1, WithinAbs(std::cos(0.7), tol));
    CHECK_THAT(b.x2, WithinAbs(std::sin(0.7), tol));
    CHECK_THAT(b.x3, WithinAbs(0.0, tol));
    CHECK_THAT(b.x4, WithinAbs(0.0, tol));

    CHECK(embed({pi / 3, 0.2, -0.2}).norm_error() < tol);
}

TEST_CASE("project inverts embed on the base coordinates") {
    const auto p1 = project(embed({pi / 2, 0.0, 0.0}));
    CHECK_THAT(p1.theta, WithinAbs(pi / 2, tol));
    CHECK_THAT(p1.phi, WithinAbs(0.0, tol));

    const auto p2 = project(embed({pi / 3, -0.3, 0.3}));
    CHECK_THAT(p2.theta, WithinAbs(pi / 3, tol));
    CHECK_THAT(p2.phi, WithinAbs(0.6, tol));

    const auto p3 = project(embed({1.0, 2.0, -0.5}));
    CHECK_THAT(p3.theta, WithinAbs(1.0, tol));
    CHECK_THAT(std::remainder(p3.phi + 2.5, 2 * pi), WithinAbs(0.0, tol));

    // consistency with the direct spinor construction
    const auto spinor_phi = spinor_to_poincare(spinor_from_poincare({1.0, -2.5}, 0.0));
    CHECK_THAT(std::remainder(p3.phi - spinor_phi.first.phi, 2 * pi), WithinAbs(0.0, tol));
}

TEST_CASE("project flags the poles") {
    const auto p = project(embed({0.0, 0.4, 0.0}));
    CHECK(p.at_pole);
    CHECK_THAT(p.phi, WithinAbs(0.0, tol));
}

TEST_CASE("project rejects off-sphere points") {
    CHECK_THROWS_AS(project(S3Point{1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("project after embed is the identity on (theta, psi - beta)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        FiberCoordinates f{0.05 + 0.9 * pi * u(rng), 4.0 * (u(rng) - 0.5),
                           4.0 * (u(rng) - 0.5)};
        const auto p = project(embed(f));
        CHECK_THAT(p.theta, WithinAbs(f.theta, tol));
        CHECK_THAT(std::remainder(p.phi - (f.psi - f.beta), 2 * pi), WithinAbs(0.0, tol));
    }
}

TEST_CASE("section constraint") {
    auto f0 = section_constraint(0.0);
    CHECK_THAT(f0.beta, WithinAbs(0.0, tol));
    CHECK_THAT(f0.psi, WithinAbs(0.0, tol));
    auto f1 = section_constraint(0.4);
    CHECK_THAT(f1.beta, WithinAbs(-0.2, tol));
    CHECK_THAT(f1.psi, WithinAbs(0.2, tol));
    auto f2 = section_constraint(-2.0);  // phi = -2 (omega/c) chi R at omega R/c = 1, chi = 1
    CHECK_THAT(f2.beta, WithinAbs(1.0, tol));
    CHECK_THAT(f2.psi, WithinAbs(-1.0, tol));
}

TEST_CASE("line element") {
    CHECK_THAT(line_element({1.3, 0, 0}, 0.2, 0.0, 0.0), WithinAbs(0.01, tol));
    CHECK_THAT(line_element({0.0, 0, 0}, 0.0, 0.1, 5.0), WithinAbs(0.01, tol));
    CHECK_THAT(line_element({pi / 2, 0, 0}, 0.0, 0.1, 0.1), WithinAbs(0.01, tol));
    // translation of (beta, psi) leaves the differential form unchanged
    CHECK_THAT(line_element({1.0, 0.3, -0.8}, 0.1, 0.2, 0.3),
               WithinAbs(line_element({1.0, 7.3, 6.2}, 0.1, 0.2, 0.3), tol));
}

TEST_CASE("vector potential values and pole finiteness") {
    const auto north = vector_potential(0.0);
    CHECK_THAT(north.a_theta, WithinAbs(0.0, tol));
    CHECK_THAT(north.a_beta, WithinAbs(1.0, tol));
    CHECK_THAT(north.a_psi, WithinAbs(0.0, tol));

    const auto south = vector_potential(pi);
    CHECK_THAT(south.a_beta, WithinAbs(0.0, tol));
    CHECK_THAT(south.a_psi, WithinAbs(1.0, tol));

    const auto mid = vector_potential(pi / 2);
    CHECK_THAT(mid.a_beta, WithinAbs(std::numbers::sqrt2 / 2, tol));
    CHECK_THAT(mid.a_psi, WithinAbs(std::numbers::sqrt2 / 2, tol));
    CHECK_THAT(mid.a_beta * mid.a_beta + mid.a_psi * mid.a_psi, WithinAbs(1.0, tol));

    CHECK(std::isfinite(vector_potential(0.0).a_beta));
    CHECK(std::isfinite(vector_potential(pi).a_psi));
}

TEST_CASE("potential line integral equals minus the Berry phase") {
    // smooth path with varying theta, beta, psi; 10^4 segments
    std::vector<FiberCoordinates> path;
    const int n = 10000;
    for (int k = 0; k <= n; ++k) {
        const double s = static_cast<double>(k) / n;
        path.push_back({0.4 + 0.9 * s + 0.2 * std::sin(3.0 * s),
                        0.5 * std::sin(2.0 * pi * s), -0.3 * s + 0.1 * std::cos(5.0 * s)});
    }
    const double a_dot_dr = potential_line_integral(path);
    const double gamma = berry_phase_integral(path);
    CHECK_THAT(a_dot_dr, WithinAbs(-gamma, 1e-10));
}
