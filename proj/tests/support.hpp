#pragma once

#include <cmath>

#include "rydgate/config.hpp"
#include "rydgate/units.hpp"

namespace rydgate::test {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Ca-40 trap with the given radial and axial frequencies (MHz) and a 30 MHz rf drive.
inline TrapConfig calcium_trap(double radial_mhz = 4.0, double axial_mhz = 1.0) {
  return trap_for_frequencies(units::mhz(radial_mhz) * 1e6, units::mhz(axial_mhz) * 1e6,
                              units::mhz(30.0) * 1e6,
                              units::calcium40_mass_amu * units::atomic_mass_unit);
}

inline MWDrive reference_drive() {
  MWDrive d;
  d.omega_mw_rabi = units::mhz(400.0);
  d.delta_S = units::mhz(136.074);
  d.delta_P = units::mhz(293.957);
  d.d1 = units::bohr_to_um(1210.445);
  return d;
}

inline PulseShape reference_pulse() {
  return {units::mhz(0.5), units::mhz(0.639), 60.0};
}

inline SimConfig reference_sim(int n_max = 5) {
  SimConfig s;
  s.blockade = units::mhz(2.5);
  s.omega_z = units::mhz(1.0);
  s.eta = 0.5;
  s.n_phonon_max = n_max;
  s.pulse = reference_pulse();
  return s;
}

} // namespace rydgate::test
