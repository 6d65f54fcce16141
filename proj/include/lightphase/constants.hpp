#pragma once

namespace lightphase {

// Speed of light, exact by SI definition.
inline constexpr double speed_of_light = 299792458.0;  // m/s

// Astronomical unit (IAU 2012 definition).
inline constexpr double astronomical_unit = 1.495978707e11;  // m

// Published Pioneer anomaly constants. Reference values only; never fitted.
struct PioneerConstants {
    double a_t = 2.92e-18;        // 1/s, clock-like frequency drift rate
    double a_t_sigma = 0.44e-18;  // 1/s
    double a_p = 8.74e-10;        // m/s^2 (8.74e-8 cm/s^2)
    double a_p_sigma = 1.33e-10;  // m/s^2
};

// Centralized tolerance budget. Single source of truth for the property
// tests and the runtime diagnostics.
struct Tolerances {
    double unit_norm = 1e-12;        // |<psi|psi> - 1|
    double reconstruction = 1e-12;   // componentwise round trips
    double orthogonality = 1e-9;     // Pancharatnam adjacent-overlap floor
    double phase_integral = 1e-10;   // connection integral vs potential line integral
    double transport_residual = 1e-10;
    double adiabatic_warn = 1e-3;    // epsilon = chidot * T warning bound
    double adiabatic_hard = 0.1;     // refuse above this
};

inline constexpr Tolerances default_tolerances{};

}  // namespace lightphase
