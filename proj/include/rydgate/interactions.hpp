#pragma once

// Rydberg-Rydberg interactions between the two ions: van der Waals for bare
// |P> states, resonant dipole-dipole for microwave-dressed states, and the
// full two-ion microwave + exchange pair potential.
//
// Energies in rad/us, distances in um, dipoles in e * um.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "rydgate/mw_dressing.hpp"

namespace rydgate {

struct InteractionModel {
  double c6 = 0.0;       ///< rad/us um^6
  double c3_minus = 0.0; ///< C0 d_-^2, rad/us um^3
  double c3_plus = 0.0;  ///< C0 d_+^2, rad/us um^3
  double d_minus = 0.0;  ///< N_-^2 C_- |d1| / e, um
  double d_plus = 0.0;   ///< N_+^2 C_+ |d1| / e, um
};

double vdw_shift(double c6, double r0);
double dd_shift(double c3, double r0);

/// Effective dressed dipoles and C3 coefficients; c6 is carried through.
InteractionModel dd_coefficients(const DressedPair& pair, double d1, double c6 = 0.0);

/// Amplitude of the resonant |PS> <-> |SP> exchange used by the full pair
/// model: C0 d1^2 / (2 R0^3). The factor 1/2 calibrates the geometric
/// prefactor so that first-order perturbation theory in the |--> pair state
/// reproduces C3(-) / R0^3.
double exchange_amplitude(double d1, double r0);

struct PairPotential {
  Eigen::Vector4d energies = Eigen::Vector4d::Zero(); ///< ascending, rad/us
  Eigen::Matrix4d states = Eigen::Matrix4d::Identity(); ///< columns on {PP, PS, SP, SS}
  int minus_minus = 0; ///< index of the branch with largest |--> weight
  double drive_ratio = 0.0; ///< Omega_MW / (C0 d1^2 / R0^3)
  std::vector<std::string> warnings;

  double minus_minus_energy() const { return energies(minus_minus); }
};

/// Four-level two-ion Hamiltonian on {|PP>, |PS>, |SP>, |SS>}: the single-ion
/// microwave Hamiltonian on both ions plus the resonant exchange, counter-rotating
/// 2 omega_1 terms dropped. Emits WeakDriveWarning if drive_ratio < 10.
PairPotential pair_potential_full(const MWDrive& drive, double r0);

/// Hamiltonian matrix behind pair_potential_full.
Eigen::Matrix4d pair_hamiltonian(const MWDrive& drive, double r0);

} // namespace rydgate
