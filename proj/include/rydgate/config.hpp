#pragma once

// Run configuration: an INI file with sections [trap], [dressing],
// [interactions], [pulse], [simulation], [output]. Frequencies are given as
// ordinary frequencies in MHz, times in us, lengths in um. Every key and its
// default is listed in docs/config.md.

#include <iosfwd>
#include <optional>
#include <string>

#include "rydgate/adiabatic_gate.hpp"
#include "rydgate/dynamics.hpp"
#include "rydgate/interactions.hpp"
#include "rydgate/mw_dressing.hpp"
#include "rydgate/trap_geometry.hpp"

namespace rydgate {

struct TrapSection {
  double alpha = 1.408965e9;     ///< V/m^2, radial 2pi x 4 MHz at the defaults
  double beta = 4.087823e6;      ///< V/m^2, axial 2pi x 1 MHz for Ca-40
  double omega_rf_mhz = 30.0;
  double mass_amu = units::calcium40_mass_amu;
  double laser_wavelength_nm = 122.0; ///< vacuum-ultraviolet D -> nP excitation
  std::optional<double> omega_z_mhz_override;
  std::optional<double> eta_override;
};

struct DressingSection {
  double omega_mw_mhz = 400.0;
  double delta_s_mhz = 136.074;
  double delta_p_mhz = 293.957;
  double pol_p = -4.0e7;          ///< m^2/J
  double pol_s = 1.8516194e7;     ///< m^2/J, -C_-^2 pol_p at the default drive
  double d1 = 1210.445;           ///< e a0, gives C3(-) = 2pi x 0.309 GHz um^3
};

struct InteractionsSection {
  double c6_mhz_um6 = 300.0;
  std::optional<double> r0_um; ///< defaults to the trap equilibrium separation
};

struct PulseSection {
  double omega0_mhz = 0.5;
  double delta0_mhz = 0.639;
  double tau_us = 60.0;
  std::optional<double> blockade_mhz; ///< defaults to C3(-) / R0^3
};

struct SimulationSection {
  int n_phonon_max = 5;
  double rtol = 1e-9;
  double atol = 1e-12;
  int output_points = 200;
  double tau0_us = 132.0;
  double adiabatic_factor = 3.0;
};

enum class OutputFormat { Csv, Json };

struct OutputSection {
  std::string path = "-"; ///< "-" is stdout
  std::optional<OutputFormat> format;
};

struct RunConfig {
  TrapSection trap;
  DressingSection dressing;
  InteractionsSection interactions;
  PulseSection pulse;
  SimulationSection simulation;
  OutputSection output;

  /// Throws ValidationError naming the first offending key.
  void validate() const;
};

/// Parses and validates. Throws ParseError on malformed input (bad INI
/// syntax, non-numeric value) and ValidationError on unknown sections or
/// keys and out-of-range values.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& source = "<stream>");

/// Everything the modules need, derived from a RunConfig in internal units.
struct ResolvedConfig {
  TrapConfig trap;
  SecularFrequencies secular;   ///< rad/s
  CrystalGeometry geometry;     ///< m
  double omega_z = 0.0;         ///< rad/us
  double eta = 0.0;
  MWDrive drive;
  DressedPair dressed;
  InteractionModel interactions;
  double r0_um = 0.0;
  double blockade = 0.0;        ///< rad/us
  PulseShape pulse;
  SimConfig sim;
  double tau0_us = 0.0;
  GateOptions gate_options;
};

ResolvedConfig resolve(const RunConfig& cfg);

} // namespace rydgate
