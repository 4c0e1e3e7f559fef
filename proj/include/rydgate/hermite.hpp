#pragma once

// Normalized Hermite polynomials and Gauss-Hermite rules.

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace rydgate {

/// Values h_0..h_n(x) of the orthonormal Hermite polynomials, i.e. the
/// harmonic-oscillator eigenfunctions with the Gaussian factor removed:
/// psi_k(x) = h_k(x) exp(-x^2 / 2).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> hermite_polynomials(Scalar x, int n) {
  using std::sqrt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h(n + 1);
  h(0) = Scalar(1) / sqrt(sqrt(std::numbers::pi_v<Scalar>));
  if (n >= 1) h(1) = sqrt(Scalar(2)) * x * h(0);
  for (int k = 1; k < n; ++k) {
    h(k + 1) = sqrt(Scalar(2) / Scalar(k + 1)) * x * h(k) -
               sqrt(Scalar(k) / Scalar(k + 1)) * h(k - 1);
  }
  return h;
}

/// Oscillator eigenfunction psi_k(x; omega) with hbar = M = 1.
template <typename Scalar>
Scalar oscillator_wavefunction(int k, Scalar omega, Scalar x) {
  using std::exp;
  using std::sqrt;
  const Scalar s = sqrt(omega);
  return sqrt(s) * hermite_polynomials(s * x, k)(k) * exp(-omega * x * x / Scalar(2));
}

template <typename Scalar>
struct GaussHermiteRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// n-point rule for the weight exp(-x^2) via the Golub-Welsch eigenproblem.
template <typename Scalar>
GaussHermiteRule<Scalar> gauss_hermite(int n) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using std::sqrt;
  Matrix jacobi = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Scalar b = sqrt(Scalar(k) / Scalar(2));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jacobi);
  GaussHermiteRule<Scalar> rule;
  rule.nodes = es.eigenvalues();
  rule.weights = sqrt(std::numbers::pi_v<Scalar>) * es.eigenvectors().row(0).cwiseAbs2().transpose();
  return rule;
}

} // namespace rydgate
