#pragma once

// Microwave dressing of the Rydberg pair {|P>, |S>} of a single ion.
//
// In the rotating frame H_MW = Delta_S |S><S| + Delta_P |P><P|
//                            + Omega_MW / 2 (|S><P| + h.c.),
// with dressed eigenstates |+-> = N_+- (C_+- |P> + |S>).

namespace rydgate {

struct MWDrive {
  double omega_mw_rabi = 0.0; ///< Omega_MW, rad/us
  double delta_S = 0.0;       ///< rad/us
  double delta_P = 0.0;       ///< rad/us
  double d1 = 0.0;            ///< |<P| e y |S>|, in units of e * um

  double delta_plus() const { return delta_P + delta_S; }
  double delta_minus() const { return delta_P - delta_S; }
  /// Autler-Townes splitting sqrt(Omega_MW^2 + Delta_-^2).
  double splitting() const;
};

struct DressedPair {
  double c_plus = 0.0;
  double c_minus = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  double e_plus = 0.0;  ///< rad/us
  double e_minus = 0.0; ///< rad/us
  double pol_plus = 0.0;
  double pol_minus = 0.0;
};

enum class Branch { Plus, Minus };

/// Dressed coefficients, energies and polarizabilities. Polarizabilities
/// keep whatever unit pol_P and pol_S carry. Throws DomainError if
/// Omega_MW <= 0.
DressedPair dress(const MWDrive& drive, double pol_P, double pol_S);

/// Dressed polarizability of one branch as a function of Delta_-.
double dressed_polarizability(double delta_minus, double omega_mw_rabi, double pol_P,
                              double pol_S, Branch branch);

struct Bracket {
  double lower = -100.0; ///< in units of Omega_MW
  double upper = 100.0;
};

/// Delta_- (rad/us) at which the chosen branch has zero polarizability, by
/// bisection over `bracket` * Omega_MW. Throws NoRoot without a sign change.
double solve_zero_polarizability(double pol_P, double pol_S, double omega_mw_rabi,
                                 Branch branch, Bracket bracket = {});

/// Laser Rabi frequency into |->:
/// Omega_MW Omega / sqrt(4 N_-^2 (Omega_MW^2 + Delta_-^2)).
double effective_rabi(const MWDrive& drive, double omega_laser_rabi);

} // namespace rydgate
