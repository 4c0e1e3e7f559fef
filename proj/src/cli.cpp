#include "rydgate/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rydgate/config.hpp"
#include "rydgate/error.hpp"
#include "rydgate/franck_condon.hpp"
#include "rydgate/output.hpp"
#include "rydgate/phonon_modes.hpp"

namespace rydgate {

namespace {

using units::to_mhz;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::string> format;
};

struct Sink {
  std::ostream* stream = nullptr;
  std::ofstream file;
  std::string path;
};

// Where results are written: --output wins over [output] path.
class Output {
public:
  Output(const RunConfig& cfg, const GlobalOptions& opts, std::ostream& fallback)
      : fallback_(fallback) {
    path_ = opts.output.value_or(cfg.output.path);
    if (opts.format) {
      if (*opts.format == "csv") format_ = OutputFormat::Csv;
      else if (*opts.format == "json") format_ = OutputFormat::Json;
      else throw ValidationError("--format", "expected csv or json");
    } else {
      format_ = cfg.output.format;
    }
  }

  const std::string& path() const { return path_; }
  bool to_stdout() const { return path_ == "-"; }

  void table(const Table& t) const {
    emit([&](std::ostream& os) {
      if (format_.value_or(OutputFormat::Csv) == OutputFormat::Json) write_json(os, table_to_json(t));
      else write_csv(os, t);
    });
  }

  void object(const Json& j) const {
    emit([&](std::ostream& os) {
      if (format_.value_or(OutputFormat::Json) == OutputFormat::Csv) write_csv(os, json_to_table(j));
      else write_json(os, j);
    });
  }

private:
  template <typename F>
  void emit(F&& writer) const {
    if (to_stdout()) {
      writer(fallback_);
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw ValidationError("output.path", "cannot open '" + path_ + "' for writing");
    writer(file);
  }

  std::ostream& fallback_;
  std::string path_;
  std::optional<OutputFormat> format_;
};

RunConfig load(const GlobalOptions& opts) {
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("RYDGATE_CONFIG"); env && *env) path = env;
  }
  if (path.empty()) return RunConfig{};
  return load_config(path);
}

Axis parse_axis(const std::string& s) {
  if (s == "X" || s == "x") return Axis::X;
  if (s == "Y" || s == "y") return Axis::Y;
  if (s == "Z" || s == "z") return Axis::Z;
  throw ValidationError("--axis", "expected X, Y or Z");
}

// Per-ion polarizabilities of an electronic configuration.
std::array<double, 2> configuration_polarizabilities(const std::string& state, const RunConfig& cfg,
                                                     const ResolvedConfig& r) {
  if (state == "ground") return {0.0, 0.0};
  if (state == "one") return {cfg.dressing.pol_p, 0.0};
  if (state == "both") return {cfg.dressing.pol_p, cfg.dressing.pol_p};
  if (state == "dressed") return {r.dressed.pol_minus, r.dressed.pol_minus};
  throw ValidationError("--state", "expected ground, one, both or dressed");
}

// --- subcommands --------------------------------------------------------

struct ModesArgs {
  std::string axis = "all";
  std::string state = "all";
};

void run_modes(const ModesArgs& a, const RunConfig& cfg, const Output& out) {
  const ResolvedConfig r = resolve(cfg);
  std::vector<Axis> axes = {Axis::X, Axis::Y, Axis::Z};
  if (a.axis != "all") axes = {parse_axis(a.axis)};
  std::vector<std::string> states = {"ground", "one", "both", "dressed"};
  if (a.state != "all") states = {a.state};

  Table t;
  t.columns = {"axis", "state", "mode", "frequency_mhz", "v1", "v2"};
  for (Axis axis : axes) {
    for (const auto& state : states) {
      const auto pols = configuration_polarizabilities(state, cfg, r);
      const PhononBasis basis = diagonalize(build_hessian(axis, r.trap, r.geometry, pols));
      for (int m = 0; m < 2; ++m) {
        t.add_row({std::string(axis_name(axis)), state, static_cast<double>(m + 1),
                   to_mhz(basis.frequencies(m)), basis.eigenvectors(0, m), basis.eigenvectors(1, m)});
      }
    }
  }
  out.table(t);
}

struct FcArgs {
  std::string axis = "X";
  std::string state = "one";
  int n_max = 10;
};

void run_fc(const FcArgs& a, const RunConfig& cfg, const Output& out, std::ostream& err) {
  if (a.n_max < 0) throw ValidationError("--n-max", "must be >= 0");
  const ResolvedConfig r = resolve(cfg);
  const Axis axis = parse_axis(a.axis);
  const PhononBasis ground = diagonalize(build_hessian(axis, r.trap, r.geometry));
  const PhononBasis excited = diagonalize(
      build_hessian(axis, r.trap, r.geometry, configuration_polarizabilities(a.state, cfg, r)));
  const FCMatrix fc = fc_matrix(ground, excited, a.n_max);
  for (const auto& w : fc.warnings) err << w << "\n";

  const int d = fc.modes_dim();
  Table t;
  t.columns.push_back("bra");
  for (int j1 = 0; j1 < d; ++j1)
    for (int j2 = 0; j2 < d; ++j2)
      t.columns.push_back("ket_" + std::to_string(j1) + "_" + std::to_string(j2));
  for (int k1 = 0; k1 < d; ++k1) {
    for (int k2 = 0; k2 < d; ++k2) {
      std::vector<Table::Cell> row;
      row.emplace_back(std::to_string(k1) + "_" + std::to_string(k2));
      const auto k = fc_index(k1, k2, fc.n_max);
      for (Eigen::Index j = 0; j < fc.entries.cols(); ++j) row.emplace_back(fc.entries(k, j));
      t.add_row(std::move(row));
    }
  }
  out.table(t);
}

void run_dress(bool solve_zero, const RunConfig& cfg, const Output& out) {
  const ResolvedConfig r = resolve(cfg);
  const DressedPair& p = r.dressed;
  const InteractionModel& m = r.interactions;
  Json j;
  j["omega_mw_mhz"] = round12(cfg.dressing.omega_mw_mhz);
  j["delta_s_mhz"] = round12(cfg.dressing.delta_s_mhz);
  j["delta_p_mhz"] = round12(cfg.dressing.delta_p_mhz);
  j["delta_minus_mhz"] = round12(to_mhz(r.drive.delta_minus()));
  j["splitting_mhz"] = round12(to_mhz(r.drive.splitting()));
  j["c_plus"] = round12(p.c_plus);
  j["c_minus"] = round12(p.c_minus);
  j["n_plus"] = round12(p.n_plus);
  j["n_minus"] = round12(p.n_minus);
  j["e_plus_mhz"] = round12(to_mhz(p.e_plus));
  j["e_minus_mhz"] = round12(to_mhz(p.e_minus));
  j["pol_plus"] = round12(p.pol_plus);
  j["pol_minus"] = round12(p.pol_minus);
  j["d_plus_um"] = round12(m.d_plus);
  j["d_minus_um"] = round12(m.d_minus);
  j["c3_plus_mhz_um3"] = round12(to_mhz(m.c3_plus));
  j["c3_minus_mhz_um3"] = round12(to_mhz(m.c3_minus));
  j["effective_rabi_factor"] = round12(effective_rabi(r.drive, 1.0));
  if (solve_zero) {
    const double dm = solve_zero_polarizability(cfg.dressing.pol_p, cfg.dressing.pol_s,
                                                r.drive.omega_mw_rabi, Branch::Minus);
    j["zero_polarizability_delta_minus_mhz"] = round12(to_mhz(dm));
  }
  out.object(j);
}

struct InteractionsArgs {
  double r_min = 2.0;
  double r_max = 10.0;
  int points = 100;
};

void run_interactions(const InteractionsArgs& a, const RunConfig& cfg, const Output& out,
                      std::ostream& err) {
  if (!(a.r_min > 0.0)) throw ValidationError("--r-min", "must be > 0");
  if (!(a.r_max >= a.r_min)) throw ValidationError("--r-max", "must be >= --r-min");
  if (a.points < 1) throw ValidationError("--points", "must be >= 1");
  if (a.points == 1 && a.r_max != a.r_min)
    throw ValidationError("--points", "a single point needs --r-min == --r-max");
  const ResolvedConfig r = resolve(cfg);
  Table t;
  t.columns = {"R0_um", "vdw_mhz", "dd_minus_mhz", "full_branch_1_mhz", "full_branch_2_mhz",
               "full_branch_3_mhz", "full_branch_4_mhz"};
  int weak = 0;
  double weak_max_r = 0.0;
  for (int i = 0; i < a.points; ++i) {
    const double r0 = a.points == 1 ? a.r_min : a.r_min + (a.r_max - a.r_min) * i / (a.points - 1);
    const PairPotential full = pair_potential_full(r.drive, r0);
    if (!full.warnings.empty()) {
      ++weak;
      weak_max_r = std::max(weak_max_r, r0);
    }
    t.add_row({r0, to_mhz(vdw_shift(r.interactions.c6, r0)),
               to_mhz(dd_shift(r.interactions.c3_minus, r0)), to_mhz(full.energies(0)),
               to_mhz(full.energies(1)), to_mhz(full.energies(2)), to_mhz(full.energies(3))});
  }
  if (weak > 0)
    err << "WeakDriveWarning: drive ratio below 10 at " << weak << " of " << a.points
        << " points (R0 <= " << format_number(weak_max_r) << " um)\n";
  out.table(t);
}

struct GateArgs {
  std::optional<double> omega0_mhz;
  std::optional<double> delta0_mhz;
  std::optional<double> tau_us;
  std::optional<double> blockade_mhz;
  bool optimize = false;
  bool trace = false;
  int trace_points = 201;
};

void apply_pulse_flags(const GateArgs& a, RunConfig& cfg) {
  if (a.omega0_mhz) cfg.pulse.omega0_mhz = *a.omega0_mhz;
  if (a.delta0_mhz) cfg.pulse.delta0_mhz = *a.delta0_mhz;
  if (a.tau_us) cfg.pulse.tau_us = *a.tau_us;
  if (a.blockade_mhz) cfg.pulse.blockade_mhz = *a.blockade_mhz;
}

Json gate_json(const GateDesign& g, bool optimized) {
  Json j;
  j["omega0_mhz"] = round12(to_mhz(g.pulse.omega0));
  j["delta0_mhz"] = round12(to_mhz(g.pulse.delta0));
  j["tau_us"] = round12(g.pulse.tau);
  j["blockade_mhz"] = round12(to_mhz(g.blockade));
  j["optimized"] = optimized;
  j["phi_dd"] = round12(g.phi_dd);
  j["phi_de"] = round12(g.phi_de);
  j["phi_ent"] = round12(g.phi_ent);
  j["phi_ent_unwrapped"] = round12(g.phi_ent_unwrapped);
  Json diag_re = Json::array();
  Json diag_im = Json::array();
  for (int k = 0; k < 4; ++k) {
    diag_re.push_back(round12(g.unitary(k, k).real()));
    diag_im.push_back(round12(g.unitary(k, k).imag()));
  }
  j["unitary_diagonal"] = {{"basis", {"EE", "DE", "ED", "DD"}}, {"real", diag_re}, {"imag", diag_im}};
  j["adiabaticity"] = {{"min_gap_mhz", round12(to_mhz(g.adiabaticity.min_gap))},
                       {"max_slew_rad_per_us2", round12(g.adiabaticity.max_slew)},
                       {"ratio", round12(g.adiabaticity.ratio)},
                       {"required", round12(g.adiabaticity.required)},
                       {"satisfied", g.adiabaticity.satisfied()}};
  return j;
}

void run_gate(const GateArgs& a, RunConfig cfg, const Output& out, std::ostream& err) {
  apply_pulse_flags(a, cfg);
  ResolvedConfig r = resolve(cfg);
  if (a.optimize) {
    r.pulse.delta0 = optimize_pulse(r.pulse.omega0, r.pulse.tau, r.blockade, units::pi, {},
                                    r.gate_options);
  }
  if (a.trace) {
    if (a.trace_points < 2) throw ValidationError("--trace-points", "must be >= 2");
    const auto trace = phase_trace(r.pulse, r.blockade, a.trace_points, r.gate_options);
    Table t;
    t.columns = {"t_us", "phi_DD", "phi_DE", "phi_ent"};
    for (const auto& p : trace) t.add_row({p.t, p.phi_dd, p.phi_de, p.phi_ent});
    out.table(t);
    return;
  }
  const GateDesign g = entangling_phase(r.pulse, r.blockade, r.gate_options);
  if (!g.adiabaticity.satisfied())
    err << "AdiabaticityWarning: min gap / sqrt(max slew) = " << format_number(g.adiabaticity.ratio)
        << " < " << format_number(g.adiabaticity.required) << "\n";
  out.object(gate_json(g, a.optimize));
}

struct EvolveArgs {
  GateArgs pulse;
  std::optional<int> n_max;
  std::optional<double> eta;
  std::optional<double> omega_z_mhz;
  std::optional<double> tau0_us;
  std::optional<std::string> summary;
  bool no_phase = false;
};

void run_evolve(const EvolveArgs& a, RunConfig cfg, const Output& out, std::ostream& err) {
  apply_pulse_flags(a.pulse, cfg);
  if (a.n_max) cfg.simulation.n_phonon_max = *a.n_max;
  if (a.eta) cfg.trap.eta_override = *a.eta;
  if (a.omega_z_mhz) cfg.trap.omega_z_mhz_override = *a.omega_z_mhz;
  if (a.tau0_us) cfg.simulation.tau0_us = *a.tau0_us;
  const ResolvedConfig r = resolve(cfg);

  const EvolutionTrace trace = evolve_from_dd(r.sim);
  Table t;
  t.columns = {"t_us", "p_DD", "p_Dm", "p_mm", "p_init", "mean_phonon", "norm"};
  double drift = 0.0;
  double max_mm = 0.0;
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    t.add_row({trace.times[k], trace.p_dd[k], trace.p_dm[k], trace.p_mm[k], trace.p_init[k],
               trace.mean_phonon[k], trace.norm[k]});
    drift = std::max(drift, std::abs(trace.norm[k] - 1.0));
    max_mm = std::max(max_mm, trace.p_mm[k]);
  }
  out.table(t);

  Json s;
  s["P_loss"] = round12(loss_probability(trace, r.tau0_us));
  s["tau0_us"] = round12(r.tau0_us);
  s["max_p_mm"] = round12(max_mm);
  s["max_norm_drift"] = round12(drift);
  s["max_phonon_deviation"] = round12(phonon_excitation(trace).max_deviation);
  s["blockade_mhz"] = round12(to_mhz(r.blockade));
  s["omega_z_mhz"] = round12(to_mhz(r.omega_z));
  s["eta"] = round12(r.eta);
  s["n_phonon_max"] = r.sim.n_phonon_max;
  if (!a.no_phase) {
    const DynamicPhases dyn = dynamic_phases(r.sim);
    const GateDesign adiabatic = entangling_phase(r.pulse, r.blockade, r.gate_options);
    s["phi_ent_dynamic"] = round12(dyn.phi_ent);
    s["phi_dd_dynamic"] = round12(dyn.phi_dd);
    s["phi_de_dynamic"] = round12(dyn.phi_de);
    s["phi_ent_adiabatic"] = round12(adiabatic.phi_ent);
  }

  std::string summary_path;
  if (a.summary) summary_path = *a.summary;
  else if (!out.to_stdout()) summary_path = out.path() + ".summary.json";
  if (summary_path.empty() || summary_path == "-") {
    write_json(err, s);
  } else {
    std::ofstream file(summary_path, std::ios::binary);
    if (!file) throw ValidationError("--summary", "cannot open '" + summary_path + "'");
    write_json(file, s);
  }
}

void add_pulse_options(CLI::App* cmd, GateArgs& a) {
  cmd->add_option("--omega0-mhz", a.omega0_mhz, "Peak Rabi frequency Omega0 / 2pi (MHz)");
  cmd->add_option("--delta0-mhz", a.delta0_mhz, "Detuning scale Delta0 / 2pi (MHz)");
  cmd->add_option("--tau-us", a.tau_us, "Pulse duration (us)");
  cmd->add_option("--blockade-mhz", a.blockade_mhz, "Blockade shift B / 2pi (MHz)");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rydberg-blockade phase gate between two trapped ions"};
  app.name("rydgate");
  app.require_subcommand(1, 1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("-c,--config", global.config_path, "Config file (default: $RYDGATE_CONFIG)");
  app.add_option("-o,--output", global.output, "Output path, '-' for stdout");
  app.add_option("--format", global.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  ModesArgs modes;
  auto* modes_cmd = app.add_subcommand("modes", "Phonon mode frequencies and vectors (CSV)");
  modes_cmd->add_option("--axis", modes.axis, "X, Y, Z or all");
  modes_cmd->add_option("--state", modes.state, "ground, one, both, dressed or all");

  FcArgs fc;
  auto* fc_cmd = app.add_subcommand("fc", "Franck-Condon matrix ground -> Rydberg (CSV)");
  fc_cmd->add_option("--axis", fc.axis, "X or Y");
  fc_cmd->add_option("--state", fc.state, "one, both or dressed");
  fc_cmd->add_option("--n-max", fc.n_max, "Fock truncation per mode");

  bool solve_zero = false;
  auto* dress_cmd = app.add_subcommand("dress", "Microwave-dressed states (JSON)");
  dress_cmd->add_flag("--solve-zero", solve_zero, "Also solve Delta_- for zero |-> polarizability");

  InteractionsArgs inter;
  auto* inter_cmd = app.add_subcommand("interactions", "Pair interaction sweep over R0 (CSV)");
  inter_cmd->add_option("--r-min", inter.r_min, "Smallest R0 (um)");
  inter_cmd->add_option("--r-max", inter.r_max, "Largest R0 (um)");
  inter_cmd->add_option("--points", inter.points, "Number of R0 values");

  GateArgs gate;
  auto* gate_cmd = app.add_subcommand("gate", "Adiabatic gate design (JSON)");
  add_pulse_options(gate_cmd, gate);
  gate_cmd->add_flag("--optimize", gate.optimize, "Solve Delta0 for phi_ent = pi");
  gate_cmd->add_flag("--trace", gate.trace, "Emit the phase accumulation CSV instead");
  gate_cmd->add_option("--trace-points", gate.trace_points, "Samples of the phase trace");

  EvolveArgs ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "Full gate dynamics with the CM phonon (CSV)");
  add_pulse_options(evolve_cmd, ev.pulse);
  evolve_cmd->add_option("--n-max", ev.n_max, "Fock truncation of the CM mode");
  evolve_cmd->add_option("--eta", ev.eta, "Lamb-Dicke parameter");
  evolve_cmd->add_option("--omega-z-mhz", ev.omega_z_mhz, "Axial trap frequency (MHz)");
  evolve_cmd->add_option("--tau0-us", ev.tau0_us, "Dressed-state lifetime (us)");
  evolve_cmd->add_option("--summary", ev.summary, "JSON summary path ('-' for stderr)");
  evolve_cmd->add_flag("--no-phase", ev.no_phase, "Skip the dynamic phase extraction run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    const RunConfig cfg = load(global);
    const Output output(cfg, global, out);
    if (*modes_cmd) run_modes(modes, cfg, output);
    else if (*fc_cmd) run_fc(fc, cfg, output, err);
    else if (*dress_cmd) run_dress(solve_zero, cfg, output);
    else if (*inter_cmd) run_interactions(inter, cfg, output, err);
    else if (*gate_cmd) run_gate(gate, cfg, output, err);
    else if (*evolve_cmd) run_evolve(ev, cfg, output, err);
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

} // namespace rydgate
