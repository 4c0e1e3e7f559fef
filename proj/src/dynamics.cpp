#include "rydgate/dynamics.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

using cd = std::complex<double>;
using Triplet = Eigen::Triplet<cd>;

constexpr std::array<Level, 3> kLevels{Level::E, Level::D, Level::Minus};

int level(Level l) { return static_cast<int>(l); }

SparseMatrixXcd from_triplets(int dim, const std::vector<Triplet>& entries) {
  SparseMatrixXcd m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

double population(const Eigen::VectorXcd& psi, Level a, Level b, int n_max) {
  double p = 0.0;
  for (int n = 0; n <= n_max; ++n) p += std::norm(psi(basis_index(a, b, n, n_max)));
  return p;
}

} // namespace

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw DomainError("simulation: " + what); };
  if (n_phonon_max < 1) fail("n_phonon_max must be >= 1");
  if (!(rtol > 0.0 && rtol <= 1e-3)) fail("rtol must lie in (0, 1e-3]");
  if (!(atol > 0.0 && atol <= 1e-3)) fail("atol must lie in (0, 1e-3]");
  if (output_points < 200) fail("output_points must be >= 200");
  if (!(pulse.tau > 0.0)) fail("pulse tau must be positive");
  if (omega_z < 0.0) fail("omega_z must be non-negative");
}

int basis_index(Level ion1, Level ion2, int phonons, int n_phonon_max) {
  return (level(ion1) * 3 + level(ion2)) * (n_phonon_max + 1) + phonons;
}

Eigen::VectorXcd product_state(Level ion1, Level ion2, int phonons, int n_phonon_max) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9 * (n_phonon_max + 1));
  psi(basis_index(ion1, ion2, phonons, n_phonon_max)) = 1.0;
  return psi;
}

AffineHamiltonian gate_hamiltonian(const SimConfig& cfg) {
  const int nmax = cfg.n_phonon_max;
  const int dim = cfg.dim();
  std::vector<Triplet> fixed, detuning, drive;

  for (Level a : kLevels) {
    for (Level b : kLevels) {
      for (int n = 0; n <= nmax; ++n) {
        const int i = basis_index(a, b, n, nmax);
        double diag = cfg.omega_z * n;
        if (a == Level::Minus && b == Level::Minus) diag += cfg.blockade;
        if (diag != 0.0) fixed.emplace_back(i, i, diag);
        const int excited = (a == Level::Minus) + (b == Level::Minus);
        if (excited > 0) detuning.emplace_back(i, i, static_cast<double>(excited));
      }
    }
  }

  // (1/2) [1 + i eta (a^dag + a)] sigma_+^(j) + h.c., coefficient Omega_-(t)
  const cd i_eta(0.0, cfg.eta);
  auto add_raise = [&](int to, int from, cd amp) {
    drive.emplace_back(to, from, amp);
    drive.emplace_back(from, to, std::conj(amp));
  };
  for (int ion = 0; ion < 2; ++ion) {
    for (Level spectator : kLevels) {
      const Level lo1 = ion == 0 ? Level::D : spectator;
      const Level lo2 = ion == 0 ? spectator : Level::D;
      const Level hi1 = ion == 0 ? Level::Minus : spectator;
      const Level hi2 = ion == 0 ? spectator : Level::Minus;
      for (int n = 0; n <= nmax; ++n) {
        const int from = basis_index(lo1, lo2, n, nmax);
        add_raise(basis_index(hi1, hi2, n, nmax), from, 0.5);
        if (cfg.eta != 0.0) {
          if (n + 1 <= nmax)
            add_raise(basis_index(hi1, hi2, n + 1, nmax), from, 0.5 * i_eta * std::sqrt(n + 1.0));
          if (n >= 1)
            add_raise(basis_index(hi1, hi2, n - 1, nmax), from, 0.5 * i_eta * std::sqrt(double(n)));
        }
      }
    }
  }

  AffineHamiltonian h;
  h.terms = {from_triplets(dim, fixed), from_triplets(dim, detuning), from_triplets(dim, drive)};
  const PulseShape pulse = cfg.pulse;
  h.coefficients = [pulse](double t) {
    const auto s = pulse_at(std::clamp(t, 0.0, pulse.tau), pulse);
    Eigen::VectorXd c(3);
    c << 1.0, s.e_minus, s.omega_minus;
    return c;
  };
  return h;
}

Eigen::MatrixXcd build_hamiltonian(double t, const SimConfig& cfg) {
  pulse_at(t, cfg.pulse); // range check
  return Eigen::MatrixXcd(gate_hamiltonian(cfg).at(t));
}

EvolutionTrace evolve(const SimConfig& cfg, const Eigen::VectorXcd& psi0) {
  cfg.validate();
  if (psi0.size() != cfg.dim()) throw DomainError("evolve: psi0 has the wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > 1e-12) throw DomainError("evolve: psi0 must be normalized");

  const int points = cfg.output_points;
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) times[static_cast<std::size_t>(k)] = cfg.pulse.tau * k / (points - 1);

  MagnusPropagator propagator(gate_hamiltonian(cfg));
  PropagatorOptions opts;
  opts.rtol = cfg.rtol;
  opts.atol = cfg.atol;
  opts.initial_step = cfg.pulse.tau / (10.0 * points);

  EvolutionTrace trace;
  trace.n_phonon_max = cfg.n_phonon_max;
  trace.times = times;
  trace.states = propagator.evolve(psi0, times, {}, opts);
  trace.stats = propagator.stats();

  const int nmax = cfg.n_phonon_max;
  const int nf = cfg.fock_dim();
  for (const auto& psi : trace.states) {
    trace.p_dd.push_back(population(psi, Level::D, Level::D, nmax));
    trace.p_dm.push_back(0.5 * (population(psi, Level::D, Level::Minus, nmax) +
                                population(psi, Level::Minus, Level::D, nmax)));
    trace.p_mm.push_back(population(psi, Level::Minus, Level::Minus, nmax));
    trace.p_init.push_back(std::norm(psi0.dot(psi)));
    double mean = 0.0;
    for (int i = 0; i < psi.size(); ++i) mean += (i % nf) * std::norm(psi(i));
    trace.mean_phonon.push_back(mean);
    trace.norm.push_back(psi.norm());
  }
  return trace;
}

EvolutionTrace evolve_from_dd(const SimConfig& cfg) {
  return evolve(cfg, product_state(Level::D, Level::D, 0, cfg.n_phonon_max));
}

double loss_probability(const EvolutionTrace& trace, double tau0) {
  if (!(tau0 > 0.0)) throw DomainError("loss_probability: tau0 must be positive");
  double integral = 0.0;
  for (std::size_t k = 1; k < trace.times.size(); ++k)
    integral += 0.5 * (trace.p_dm[k] + trace.p_dm[k - 1]) * (trace.times[k] - trace.times[k - 1]);
  return 2.0 / tau0 * integral;
}

PhononExcitation phonon_excitation(const EvolutionTrace& trace) {
  PhononExcitation out;
  out.mean_phonon = trace.mean_phonon;
  for (std::size_t k = 0; k < trace.p_dd.size(); ++k)
    out.max_deviation = std::max(out.max_deviation, std::abs(trace.p_dd[k] - trace.p_init[k]));
  return out;
}

DynamicPhases dynamic_phases(const SimConfig& cfg) {
  const int nmax = cfg.n_phonon_max;
  const std::array<std::pair<Level, Level>, 4> qubits{
      {{Level::E, Level::E}, {Level::D, Level::E}, {Level::E, Level::D}, {Level::D, Level::D}}};
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(cfg.dim());
  for (const auto& [a, b] : qubits) psi0(basis_index(a, b, 0, nmax)) = 0.5;

  const EvolutionTrace trace = evolve(cfg, psi0);
  const Eigen::VectorXcd& final_state = trace.states.back();
  std::array<cd, 4> amp;
  DynamicPhases out;
  for (std::size_t q = 0; q < 4; ++q) {
    amp[q] = 2.0 * final_state(basis_index(qubits[q].first, qubits[q].second, 0, nmax));
    out.fidelity_weights[q] = std::norm(amp[q]);
  }
  auto phase = [&](std::size_t q) { return -std::arg(amp[q] / amp[0]); };
  out.phi_de = phase(1);
  out.phi_ed = phase(2);
  out.phi_dd = phase(3);
  out.phi_ent = wrap_phase(out.phi_dd - out.phi_de - out.phi_ed);
  return out;
}

} // namespace rydgate
