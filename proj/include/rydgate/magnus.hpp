#pragma once

// Adaptive fourth-order commutator-free Magnus propagator for
// i d/dt psi = H(t) psi with H(t) = sum_k f_k(t) H_k.
//
// Each step is a product of two exponentials of Hermitian matrices, so the
// propagator is unitary to round-off regardless of step size. Exponentials
// are taken block by block over the connected components of the union
// sparsity pattern of the H_k.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace rydgate {

using SparseMatrixXcd = Eigen::SparseMatrix<std::complex<double>>;

struct AffineHamiltonian {
  std::vector<SparseMatrixXcd> terms;
  /// Returns f_k(t) for every term.
  std::function<Eigen::VectorXd(double)> coefficients;

  Eigen::Index dim() const { return terms.empty() ? 0 : terms.front().rows(); }
  SparseMatrixXcd at(double t) const;
};

struct PropagatorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.0; ///< 0 picks one from the output spacing
  double min_step = 1e-10;
  std::size_t max_steps = 5'000'000;
};

struct PropagatorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

class MagnusPropagator {
public:
  explicit MagnusPropagator(AffineHamiltonian hamiltonian);

  /// States at each of `output_times` (ascending, first = start time).
  /// Steps never straddle an output time or a breakpoint, so coefficient
  /// functions may jump there. Throws ToleranceFailure if the step
  /// controller collapses below min_step or exceeds max_steps.
  std::vector<Eigen::VectorXcd> evolve(const Eigen::VectorXcd& psi0,
                                       std::span<const double> output_times,
                                       std::span<const double> breakpoints = {},
                                       const PropagatorOptions& opts = {});

  /// One fixed CF4 step of size h from t.
  Eigen::VectorXcd step(const Eigen::VectorXcd& psi, double t, double h) const;

  const std::vector<std::vector<Eigen::Index>>& blocks() const { return blocks_; }
  const PropagatorStats& stats() const { return stats_; }

private:
  // exp(-i h sum_k c_k H_k) psi
  void apply_exponential(const Eigen::VectorXd& c, double h, Eigen::VectorXcd& psi) const;

  AffineHamiltonian hamiltonian_;
  std::vector<std::vector<Eigen::Index>> blocks_;
  // dense_terms_[b][k]: term k restricted to block b
  std::vector<std::vector<Eigen::MatrixXcd>> dense_terms_;
  PropagatorStats stats_;
};

} // namespace rydgate
