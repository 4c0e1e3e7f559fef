#pragma once

// Franck-Condon overlaps between phonon eigenbases of two potential surfaces
// sharing the same equilibrium positions.

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rydgate/phonon_modes.hpp"

namespace rydgate {

/// Table S(m, n) = <m_nu | n_omega> for 0 <= m, n <= n_max, two concentric
/// oscillators of frequencies nu (bra) and omega (ket). Built by a
/// two-term recursion on the squeezing relation between the ladder
/// operators; entries with odd m + n are exactly zero.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
fc_overlap_table(Scalar nu, Scalar omega, int n_max) {
  using std::sqrt;
  const int dim = n_max + 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> s =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  const Scalar ratio = sqrt(nu / omega);
  const Scalar c = (ratio + Scalar(1) / ratio) / Scalar(2);
  const Scalar d = (ratio - Scalar(1) / ratio) / Scalar(2);

  s(0, 0) = Scalar(1) / sqrt(c);
  for (int n = 1; n + 1 <= n_max; n += 2) {
    // only even ket numbers survive in the first row
    s(0, n + 1) = -(d / c) * sqrt(Scalar(n) / Scalar(n + 1)) * s(0, n - 1);
  }
  for (int m = 0; m < n_max; ++m) {
    for (int n = (m + 1) % 2; n <= n_max; n += 2) {
      Scalar acc = 0;
      if (n > 0) acc += sqrt(Scalar(n)) * s(m, n - 1);
      if (m > 0) acc += d * sqrt(Scalar(m)) * s(m - 1, n);
      s(m + 1, n) = acc / (c * sqrt(Scalar(m + 1)));
    }
  }
  return s;
}

/// Single element <m_nu | n_omega>.
template <typename Scalar>
Scalar fc_overlap_1d(Scalar nu, Scalar omega, int m, int n) {
  if ((m + n) % 2 != 0) return Scalar(0);
  return fc_overlap_table(nu, omega, std::max(m, n))(m, n);
}

struct FCMatrix {
  int n_max = 0;
  /// Rows: excited multi-index [k], columns: ground multi-index [j];
  /// flat index k1 * (n_max + 1) + k2.
  Eigen::MatrixXd entries;
  bool aligned = true;        ///< true if the tensor-product path was used
  int quadrature_order = 0;   ///< Gauss-Hermite points per dimension (0 if aligned)
  std::vector<std::string> warnings;

  int modes_dim() const { return n_max + 1; }
  Eigen::VectorXd row_norms() const { return entries.rowwise().norm(); }
};

/// Multi-index (k1, k2) -> flat index.
inline int fc_index(int k1, int k2, int n_max) { return k1 * (n_max + 1) + k2; }

/// K_[j]^[k] = <[k]_excited | [j]_ground>. Aligned eigenvectors give a
/// tensor product of 1D tables, otherwise 2D Gauss-Hermite quadrature over
/// the Duschinsky-rotated coordinates. Rows with norm < 1 - 1e-4 are
/// reported in `warnings` (truncation).
FCMatrix fc_matrix(const PhononBasis& ground, const PhononBasis& excited, int n_max = 10);

/// Quadrature path regardless of alignment, at a fixed order.
Eigen::MatrixXd fc_matrix_quadrature(const PhononBasis& ground, const PhononBasis& excited,
                                     int n_max, int order);

} // namespace rydgate
