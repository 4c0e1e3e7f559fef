#include "rydgate/franck_condon.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>

#include "rydgate/error.hpp"
#include "rydgate/hermite.hpp"

namespace rydgate {

namespace {

constexpr double kAlignTolerance = 1e-8;
constexpr double kQuadratureTolerance = 1e-9;
constexpr double kRowNormDefect = 1e-4;
constexpr int kMaxQuadratureOrder = 512;

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Product wavefunction polynomial parts (Gaussian stripped) for every
// multi-index, evaluated at mode coordinates q with frequencies w.
Eigen::VectorXd mode_polynomials(const Eigen::Vector2d& q, const Eigen::Vector2d& w, int n_max) {
  const Eigen::VectorXd h1 = hermite_polynomials(std::sqrt(w(0)) * q(0), n_max);
  const Eigen::VectorXd h2 = hermite_polynomials(std::sqrt(w(1)) * q(1), n_max);
  const int dim = n_max + 1;
  Eigen::VectorXd out(dim * dim);
  for (int k1 = 0; k1 < dim; ++k1)
    out.segment(k1 * dim, dim) = h1(k1) * h2;
  return out;
}

} // namespace

Eigen::MatrixXd fc_matrix_quadrature(const PhononBasis& ground, const PhononBasis& excited,
                                     int n_max, int order) {
  const Eigen::Matrix2d& a = ground.eigenvectors;
  const Eigen::Matrix2d& b = excited.eigenvectors;
  const Eigen::Vector2d& w_g = ground.frequencies;
  const Eigen::Vector2d& w_e = excited.frequencies;

  // Both Gaussians combined: exp(-x^T Q x), diagonalized so that
  // x = U diag(lambda)^{-1/2} y turns it into exp(-y^T y).
  const Eigen::Matrix2d q_form =
      0.5 * (a * w_g.asDiagonal() * a.transpose() + b * w_e.asDiagonal() * b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q_form);
  const Eigen::Matrix2d to_x = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  const double jacobian = 1.0 / std::sqrt(es.eigenvalues().prod());
  const double norm = std::sqrt(std::sqrt(w_g.prod() * w_e.prod()));

  const auto rule = gauss_hermite<double>(order);
  const int dim = (n_max + 1) * (n_max + 1);
  const int points = order * order;
  Eigen::MatrixXd bra(dim, points);
  Eigen::MatrixXd ket(dim, points);
  Eigen::VectorXd weights(points);
  for (int i = 0; i < order; ++i) {
    for (int l = 0; l < order; ++l) {
      const int p = i * order + l;
      const Eigen::Vector2d x = to_x * Eigen::Vector2d(rule.nodes(i), rule.nodes(l));
      bra.col(p) = mode_polynomials(b.transpose() * x, w_e, n_max);
      ket.col(p) = mode_polynomials(a.transpose() * x, w_g, n_max);
      weights(p) = rule.weights(i) * rule.weights(l);
    }
  }
  return (jacobian * norm) * bra * weights.asDiagonal() * ket.transpose();
}

FCMatrix fc_matrix(const PhononBasis& ground, const PhononBasis& excited, int n_max) {
  if (n_max < 0) throw DomainError("fc_matrix: n_max must be >= 0");
  FCMatrix fc;
  fc.n_max = n_max;
  const double misalignment = (ground.eigenvectors - excited.eigenvectors).cwiseAbs().maxCoeff();
  if (misalignment <= kAlignTolerance) {
    fc.aligned = true;
    const Eigen::MatrixXd s1 =
        fc_overlap_table(excited.frequencies(0), ground.frequencies(0), n_max);
    const Eigen::MatrixXd s2 =
        fc_overlap_table(excited.frequencies(1), ground.frequencies(1), n_max);
    fc.entries = kron(s1, s2);
  } else {
    fc.aligned = false;
    // Exact for polynomial degree <= 2 * order - 1 per coordinate; the
    // integrand has degree <= 4 * n_max, so the first order is already exact
    // and the doubling confirms it.
    int order = 2 * n_max + 2;
    Eigen::MatrixXd current = fc_matrix_quadrature(ground, excited, n_max, order);
    while (true) {
      const int doubled = 2 * order;
      if (doubled > kMaxQuadratureOrder)
        throw ToleranceFailure("fc_matrix: Gauss-Hermite quadrature did not converge");
      Eigen::MatrixXd refined = fc_matrix_quadrature(ground, excited, n_max, doubled);
      const double change = (refined - current).cwiseAbs().maxCoeff();
      current = std::move(refined);
      order = doubled;
      if (change <= kQuadratureTolerance) break;
    }
    fc.entries = std::move(current);
    fc.quadrature_order = order;
  }

  const Eigen::VectorXd norms = fc.row_norms();
  int defective = 0;
  for (Eigen::Index r = 0; r < norms.size(); ++r)
    if (norms(r) < 1.0 - kRowNormDefect) ++defective;
  if (defective > 0) {
    std::ostringstream msg;
    msg << "TruncationWarning: " << defective << " of " << norms.size()
        << " rows have norm below 1 - 1e-4 (min " << norms.minCoeff() << "); raise n_max";
    fc.warnings.push_back(msg.str());
  }
  return fc;
}

} // namespace rydgate
