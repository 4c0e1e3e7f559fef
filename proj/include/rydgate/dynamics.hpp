#pragma once

// Time-dependent Schroedinger evolution of the two-ion gate Hamiltonian on
// {|E>, |D>, |->}^(x2) (x) Fock(n_max) of the axial centre-of-mass mode:
//
//   H(t) = omega_z a^dag a + B |--><--|
//        + sum_j { E_-(t) |->_j<-| + Omega_-(t)/2 [1 + i eta (a^dag + a)] sigma_+^(j) + h.c. }
//
// with sigma_+ = |-><D|. |E> is uncoupled.

#include <array>
#include <vector>

#include <Eigen/Core>

#include "rydgate/adiabatic_gate.hpp"
#include "rydgate/magnus.hpp"

namespace rydgate {

enum class Level : int { E = 0, D = 1, Minus = 2 };

struct SimConfig {
  double blockade = 0.0; ///< B, rad/us
  double omega_z = 0.0;  ///< axial CM frequency, rad/us
  double eta = 0.0;      ///< Lamb-Dicke parameter
  int n_phonon_max = 5;
  PulseShape pulse;
  double rtol = 1e-9;
  double atol = 1e-12;
  int output_points = 200;

  int fock_dim() const { return n_phonon_max + 1; }
  int dim() const { return 9 * fock_dim(); }
  /// Throws DomainError on invalid settings.
  void validate() const;
};

/// Flat index of |l1, l2> (x) |n>.
int basis_index(Level ion1, Level ion2, int phonons, int n_phonon_max);

/// Normalized product state |l1, l2> (x) |n>.
Eigen::VectorXcd product_state(Level ion1, Level ion2, int phonons, int n_phonon_max);

/// H(t) split as 1 * H_static + E_-(t) * H_detuning + Omega_-(t) * H_drive.
AffineHamiltonian gate_hamiltonian(const SimConfig& cfg);

/// Dense H(t); throws DomainError outside [0, tau].
Eigen::MatrixXcd build_hamiltonian(double t, const SimConfig& cfg);

struct EvolutionTrace {
  std::vector<double> times;           ///< us
  std::vector<Eigen::VectorXcd> states;
  std::vector<double> p_dd;
  std::vector<double> p_dm;   ///< (p(D-) + p(-D)) / 2, per-state population
  std::vector<double> p_mm;
  std::vector<double> p_init; ///< |<psi0|psi(t)>|^2
  std::vector<double> mean_phonon;
  std::vector<double> norm;
  int n_phonon_max = 0;
  PropagatorStats stats;
};

/// Integrates from t = 0 to tau, recording cfg.output_points (>= 200)
/// uniformly spaced states. Throws DomainError if |psi0| != 1 and
/// ToleranceFailure if the step controller fails.
EvolutionTrace evolve(const SimConfig& cfg, const Eigen::VectorXcd& psi0);

/// Same as evolve() from |DD> (x) |0>.
EvolutionTrace evolve_from_dd(const SimConfig& cfg);

/// (2 / tau0) * trapezoid integral of p_D-(t).
double loss_probability(const EvolutionTrace& trace, double tau0);

struct PhononExcitation {
  std::vector<double> mean_phonon;
  double max_deviation = 0.0; ///< max_t |p_DD - p_init|
};

PhononExcitation phonon_excitation(const EvolutionTrace& trace);

struct DynamicPhases {
  double phi_dd = 0.0; ///< -arg of the final |DD,0> amplitude, relative to |EE,0>
  double phi_de = 0.0;
  double phi_ed = 0.0;
  double phi_ent = 0.0; ///< wrap(phi_DD - phi_DE - phi_ED)
  std::array<double, 4> fidelity_weights{}; ///< |amplitude|^2 of the four qubit states
};

/// Phases accumulated by the qubit basis states over the full pulse, from
/// a single evolution of (|EE> + |DE> + |ED> + |DD>)/2 (x) |0>. Uses the
/// same sign convention as entangling_phase (phi = -arg amplitude).
DynamicPhases dynamic_phases(const SimConfig& cfg);

} // namespace rydgate
