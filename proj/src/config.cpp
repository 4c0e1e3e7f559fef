#include "rydgate/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <type_traits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (value.empty()) throw ParseError(key, "empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError(key, "not a finite number: '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& raw) {
  const double v = parse_double(key, raw);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ParseError(key, "not an integer");
  return static_cast<int>(v);
}

template <typename Section, typename Field>
Setter number(Section RunConfig::*section, Field Section::*field) {
  return [=](RunConfig& cfg, const std::string& key, const std::string& value) {
    if constexpr (std::is_same_v<Field, int>)
      cfg.*section.*field = parse_int(key, value);
    else
      cfg.*section.*field = parse_double(key, value);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"trap.alpha", number(&RunConfig::trap, &TrapSection::alpha)},
      {"trap.beta", number(&RunConfig::trap, &TrapSection::beta)},
      {"trap.omega_rf_mhz", number(&RunConfig::trap, &TrapSection::omega_rf_mhz)},
      {"trap.mass_amu", number(&RunConfig::trap, &TrapSection::mass_amu)},
      {"trap.laser_wavelength_nm", number(&RunConfig::trap, &TrapSection::laser_wavelength_nm)},
      {"trap.omega_z_mhz_override", number(&RunConfig::trap, &TrapSection::omega_z_mhz_override)},
      {"trap.eta_override", number(&RunConfig::trap, &TrapSection::eta_override)},
      {"dressing.omega_mw_mhz", number(&RunConfig::dressing, &DressingSection::omega_mw_mhz)},
      {"dressing.delta_s_mhz", number(&RunConfig::dressing, &DressingSection::delta_s_mhz)},
      {"dressing.delta_p_mhz", number(&RunConfig::dressing, &DressingSection::delta_p_mhz)},
      {"dressing.pol_p", number(&RunConfig::dressing, &DressingSection::pol_p)},
      {"dressing.pol_s", number(&RunConfig::dressing, &DressingSection::pol_s)},
      {"dressing.d1", number(&RunConfig::dressing, &DressingSection::d1)},
      {"interactions.c6_mhz_um6", number(&RunConfig::interactions, &InteractionsSection::c6_mhz_um6)},
      {"interactions.r0_um", number(&RunConfig::interactions, &InteractionsSection::r0_um)},
      {"pulse.omega0_mhz", number(&RunConfig::pulse, &PulseSection::omega0_mhz)},
      {"pulse.delta0_mhz", number(&RunConfig::pulse, &PulseSection::delta0_mhz)},
      {"pulse.tau_us", number(&RunConfig::pulse, &PulseSection::tau_us)},
      {"pulse.blockade_mhz", number(&RunConfig::pulse, &PulseSection::blockade_mhz)},
      {"simulation.n_phonon_max", number(&RunConfig::simulation, &SimulationSection::n_phonon_max)},
      {"simulation.rtol", number(&RunConfig::simulation, &SimulationSection::rtol)},
      {"simulation.atol", number(&RunConfig::simulation, &SimulationSection::atol)},
      {"simulation.output_points", number(&RunConfig::simulation, &SimulationSection::output_points)},
      {"simulation.tau0_us", number(&RunConfig::simulation, &SimulationSection::tau0_us)},
      {"simulation.adiabatic_factor",
       number(&RunConfig::simulation, &SimulationSection::adiabatic_factor)},
      {"output.path",
       [](RunConfig& cfg, const std::string& key, const std::string& value) {
         const std::string v = trim(value);
         if (v.empty()) throw ParseError(key, "empty value");
         cfg.output.path = v;
       }},
      {"output.format",
       [](RunConfig& cfg, const std::string& key, const std::string& value) {
         const std::string v = trim(value);
         if (v == "csv") cfg.output.format = OutputFormat::Csv;
         else if (v == "json") cfg.output.format = OutputFormat::Json;
         else throw ValidationError(key, "expected csv or json, got '" + v + "'");
       }},
  };
  return table;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ValidationError(key, what);
}

} // namespace

void RunConfig::validate() const {
  require(trap.alpha > 0.0, "trap.alpha", "must be > 0");
  require(trap.beta > 0.0, "trap.beta", "must be > 0 (axial confinement)");
  require(trap.omega_rf_mhz > 0.0, "trap.omega_rf_mhz", "must be > 0");
  require(trap.mass_amu > 0.0, "trap.mass_amu", "must be > 0");
  require(trap.laser_wavelength_nm > 0.0, "trap.laser_wavelength_nm", "must be > 0");
  if (trap.omega_z_mhz_override)
    require(*trap.omega_z_mhz_override > 0.0, "trap.omega_z_mhz_override", "must be > 0");
  if (trap.eta_override) require(*trap.eta_override >= 0.0, "trap.eta_override", "must be >= 0");

  require(dressing.omega_mw_mhz > 0.0, "dressing.omega_mw_mhz", "must be > 0");
  require(dressing.d1 >= 0.0, "dressing.d1", "must be >= 0");

  require(interactions.c6_mhz_um6 >= 0.0, "interactions.c6_mhz_um6", "must be >= 0");
  if (interactions.r0_um) require(*interactions.r0_um > 0.0, "interactions.r0_um", "must be > 0");

  require(pulse.omega0_mhz >= 0.0, "pulse.omega0_mhz", "must be >= 0");
  require(pulse.tau_us > 0.0, "pulse.tau_us", "must be > 0");
  if (pulse.blockade_mhz) require(*pulse.blockade_mhz >= 0.0, "pulse.blockade_mhz", "must be >= 0");

  require(simulation.n_phonon_max >= 1, "simulation.n_phonon_max", "must be >= 1");
  require(simulation.rtol > 0.0 && simulation.rtol <= 1e-3, "simulation.rtol", "must lie in (0, 1e-3]");
  require(simulation.atol > 0.0 && simulation.atol <= 1e-3, "simulation.atol", "must lie in (0, 1e-3]");
  require(simulation.output_points >= 200, "simulation.output_points", "must be >= 200");
  require(simulation.tau0_us > 0.0, "simulation.tau0_us", "must be > 0");
  require(simulation.adiabatic_factor > 0.0, "simulation.adiabatic_factor", "must be > 0");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.line() << ": " << e.message();
    throw ParseError("", msg.str());
  }

  RunConfig cfg;
  const auto& table = setters();
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty())
      throw ValidationError(section, "key outside of any section");
    for (const auto& [name, value] : entries) {
      const std::string key = section + "." + name;
      const auto it = table.find(key);
      if (it == table.end()) throw ValidationError(key, "unknown key");
      it->second(cfg, key, value.data());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open config file '" + path + "'");
  return parse_config(in, path);
}

ResolvedConfig resolve(const RunConfig& cfg) {
  cfg.validate();
  ResolvedConfig r;

  r.trap.alpha = cfg.trap.alpha;
  r.trap.beta = cfg.trap.beta;
  r.trap.omega_rf = units::two_pi * cfg.trap.omega_rf_mhz * 1e6;
  r.trap.mass = cfg.trap.mass_amu * units::atomic_mass_unit;
  if (cfg.trap.omega_z_mhz_override) {
    const double wz = units::two_pi * *cfg.trap.omega_z_mhz_override * 1e6;
    r.trap.beta = r.trap.mass * wz * wz / (4.0 * r.trap.charge);
  }
  r.secular = secular_frequencies(r.trap);
  r.geometry = equilibrium_geometry(r.trap);
  r.omega_z = units::per_second_to_per_us(r.secular.omega_Z);
  if (cfg.trap.eta_override) {
    r.eta = *cfg.trap.eta_override;
  } else {
    const double k_laser = units::two_pi / (cfg.trap.laser_wavelength_nm * 1e-9);
    r.eta = lamb_dicke(k_laser, r.secular.omega_Z, r.trap.mass);
  }

  r.drive.omega_mw_rabi = units::mhz(cfg.dressing.omega_mw_mhz);
  r.drive.delta_S = units::mhz(cfg.dressing.delta_s_mhz);
  r.drive.delta_P = units::mhz(cfg.dressing.delta_p_mhz);
  r.drive.d1 = units::bohr_to_um(cfg.dressing.d1);
  r.dressed = dress(r.drive, cfg.dressing.pol_p, cfg.dressing.pol_s);
  r.interactions = dd_coefficients(r.dressed, r.drive.d1, units::mhz(cfg.interactions.c6_mhz_um6));

  r.r0_um = cfg.interactions.r0_um ? *cfg.interactions.r0_um : units::metres_to_um(r.geometry.r0);
  r.blockade = cfg.pulse.blockade_mhz ? units::mhz(*cfg.pulse.blockade_mhz)
                                      : dd_shift(r.interactions.c3_minus, r.r0_um);
  r.pulse = {units::mhz(cfg.pulse.omega0_mhz), units::mhz(cfg.pulse.delta0_mhz), cfg.pulse.tau_us};

  r.sim.blockade = r.blockade;
  r.sim.omega_z = r.omega_z;
  r.sim.eta = r.eta;
  r.sim.n_phonon_max = cfg.simulation.n_phonon_max;
  r.sim.pulse = r.pulse;
  r.sim.rtol = cfg.simulation.rtol;
  r.sim.atol = cfg.simulation.atol;
  r.sim.output_points = cfg.simulation.output_points;
  r.tau0_us = cfg.simulation.tau0_us;
  r.gate_options.adiabatic_factor = cfg.simulation.adiabatic_factor;
  return r;
}

} // namespace rydgate
