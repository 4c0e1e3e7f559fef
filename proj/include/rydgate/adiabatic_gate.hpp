#pragma once

// Adiabatic controlled-phase gate driven by a sin^2 Rabi pulse with a
// cos^2-shaped detuning on the |D> <-> |-> transition of both ions.

#include <vector>

#include <Eigen/Core>

namespace rydgate {

struct PulseShape {
  double omega0 = 0.0; ///< peak Rabi frequency, rad/us
  double delta0 = 0.0; ///< detuning scale, rad/us
  double tau = 0.0;    ///< duration, us
};

struct PulseSample {
  double omega_minus = 0.0; ///< rad/us
  double e_minus = 0.0;     ///< rad/us
};

/// Omega_-(t) = Omega0 sin^2(pi t / tau), E_-(t) = Delta0 (1/2 + cos^2(pi t / tau)).
/// Throws DomainError outside [0, tau].
PulseSample pulse_at(double t, const PulseShape& p);

struct AdiabaticEnergies {
  double e_dd = 0.0;
  double e_de = 0.0;
};

/// Light shifts of the adiabatically followed |DD> and |DE> states:
/// E_DD = (delta0 - sqrt(delta0^2 + 2 Omega^2)) / 2 with
/// delta0 = E - Omega^2 / (4 E + 2 B), E_DE = (E - sqrt(E^2 + Omega^2)) / 2.
/// Throws SingularDenominator when 4 E + 2 B vanishes.
AdiabaticEnergies adiabatic_energies(double omega_minus, double e_minus, double blockade);

/// Lowest eigenvalue of the symmetric three-level |DD> sector
/// {|DD>, (|D-> + |-D>)/sqrt2, |-->} without eliminating |-->. Diagnostic
/// for the accuracy of the perturbative delta0 above.
double exact_dd_energy(double omega_minus, double e_minus, double blockade);

/// Wrap an angle to (-pi, pi].
double wrap_phase(double phi);

struct AdiabaticityReport {
  double min_gap = 0.0;   ///< rad/us
  double max_slew = 0.0;  ///< max |dOmega/dt| + |dE/dt|, rad/us^2
  double ratio = 0.0;     ///< min_gap / sqrt(max_slew)
  double required = 3.0;
  bool satisfied() const { return ratio >= required; }
};

struct GateOptions {
  double abs_tolerance = 1e-8;  ///< rad, phase integrals
  double adiabatic_factor = 3.0;
};

struct GateDesign {
  PulseShape pulse;
  double blockade = 0.0;      ///< B = C3(-) / R0^3, rad/us
  double phi_dd = 0.0;        ///< rad
  double phi_de = 0.0;        ///< rad
  double phi_ent_unwrapped = 0.0;
  double phi_ent = 0.0;       ///< wrapped to (-pi, pi]
  Eigen::Matrix4cd unitary = Eigen::Matrix4cd::Identity();
  AdiabaticityReport adiabaticity;
};

/// Integrates the adiabatic energies over the pulse and assembles the gate.
/// Phases follow phi = integral of E dt (no minus sign).
GateDesign entangling_phase(const PulseShape& p, double blockade, const GateOptions& opts = {});

/// diag(1, e^{i phi_DE}, e^{i phi_DE}, e^{i (phi_ent + 2 phi_DE)}) on
/// {|EE>, |DE>, |ED>, |DD>}.
Eigen::Matrix4cd gate_unitary(double phi_ent, double phi_de);

struct PhaseTracePoint {
  double t = 0.0;
  double phi_dd = 0.0;
  double phi_de = 0.0;
  double phi_ent = 0.0; ///< unwrapped
};

/// Accumulated phases on a uniform grid of `points` >= 2 samples over [0, tau].
std::vector<PhaseTracePoint> phase_trace(const PulseShape& p, double blockade, int points,
                                         const GateOptions& opts = {});

struct OptimizeBracket {
  double lower = 0.4; ///< Delta0 in units of Omega0
  double upper = 4.0;
};

/// Delta0 (rad/us) at which the unwrapped phi_ent equals `target` for fixed
/// Omega0, tau and B. Throws NoRoot if the bracket holds no sign change or
/// the objective is flat (Omega0 = 0).
double optimize_pulse(double omega0, double tau, double blockade, double target,
                      OptimizeBracket bracket = {}, const GateOptions& opts = {});

} // namespace rydgate
