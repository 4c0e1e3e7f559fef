#pragma once

// Physical constants (CODATA 2018) and the internal unit system.
//
// Internally every angular frequency and energy is in rad/us (hbar = 1),
// times in us and lengths in um. Trap parameters stay in SI because they
// are naturally quoted that way (V/m^2, kg).

#include <numbers>

namespace rydgate::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double hbar = 1.054571817e-34;                 // J s
inline constexpr double bohr_radius = 5.29177210903e-11;        // m

inline constexpr double calcium40_mass_amu = 39.962590863;

/// e^2 / (4 pi eps0), J m.
inline constexpr double coulomb_constant_si =
    elementary_charge * elementary_charge / (4.0 * pi * vacuum_permittivity);

/// e^2 / (4 pi eps0 hbar) expressed in rad/us * um.
inline constexpr double coulomb_constant = coulomb_constant_si / hbar;

/// Ordinary frequency in MHz to angular frequency in rad/us.
constexpr double mhz(double f) { return two_pi * f; }
/// Angular frequency in rad/us back to MHz.
constexpr double to_mhz(double w) { return w / two_pi; }

/// rad/s -> rad/us
constexpr double per_second_to_per_us(double w) { return w * 1e-6; }
/// m -> um
constexpr double metres_to_um(double x) { return x * 1e6; }
/// Bohr radii -> um (dipoles are stored as e * um)
constexpr double bohr_to_um(double x) { return x * bohr_radius * 1e6; }

} // namespace rydgate::units
