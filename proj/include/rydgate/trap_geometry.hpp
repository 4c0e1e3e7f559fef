#pragma once

// Linear Paul trap: secular frequencies, two-ion equilibrium crystal and
// the Lamb-Dicke parameter of the axial centre-of-mass mode. All
// quantities in this header are SI.

#include <Eigen/Core>

#include "rydgate/units.hpp"

namespace rydgate {

struct TrapConfig {
  double alpha = 0.0;    ///< rf field gradient, V/m^2
  double beta = 0.0;     ///< static field gradient, V/m^2
  double omega_rf = 0.0; ///< rf drive, rad/s
  double mass = units::calcium40_mass_amu * units::atomic_mass_unit; ///< kg
  double charge = units::elementary_charge;                          ///< C
};

struct SecularFrequencies {
  double omega_rho = 0.0; ///< radial, rad/s
  double omega_Z = 0.0;   ///< axial, rad/s
};

struct CrystalGeometry {
  double z1 = 0.0; ///< m
  double z2 = 0.0; ///< m
  double r0 = 0.0; ///< ion separation, m
  Eigen::Vector3d n12 = Eigen::Vector3d::UnitZ();
};

/// Throws UnconfinedError if either radicand is not strictly positive.
SecularFrequencies secular_frequencies(const TrapConfig& cfg);

/// Inverse of secular_frequencies: gradients that produce the requested
/// radial and axial frequencies for a given rf drive and mass.
TrapConfig trap_for_frequencies(double omega_rho, double omega_Z,
                                double omega_rf, double mass,
                                double charge = units::elementary_charge);

/// Coulomb constant q^2 / (4 pi eps0) for the configured ion charge, J m.
double coulomb_constant(const TrapConfig& cfg);

CrystalGeometry equilibrium_geometry(const TrapConfig& cfg);

/// eta = k_L xi / sqrt(2), xi = sqrt(hbar / (2 M_cm omega_Z)), M_cm = 2 M.
/// k_L in 1/m, omega_Z in rad/s, mass of a single ion in kg.
double lamb_dicke(double k_L, double omega_Z, double mass);

} // namespace rydgate
