#include "rydgate/interactions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

void require_positive_distance(double r0) {
  if (!(r0 > 0.0)) throw DomainError("ion separation must be positive");
}

} // namespace

double vdw_shift(double c6, double r0) {
  require_positive_distance(r0);
  return c6 / std::pow(r0, 6);
}

double dd_shift(double c3, double r0) {
  require_positive_distance(r0);
  return c3 / (r0 * r0 * r0);
}

InteractionModel dd_coefficients(const DressedPair& pair, double d1, double c6) {
  InteractionModel model;
  model.c6 = c6;
  const double dipole = std::abs(d1);
  model.d_plus = pair.n_plus * pair.n_plus * pair.c_plus * dipole;
  model.d_minus = pair.n_minus * pair.n_minus * pair.c_minus * dipole;
  model.c3_plus = units::coulomb_constant * model.d_plus * model.d_plus;
  model.c3_minus = units::coulomb_constant * model.d_minus * model.d_minus;
  return model;
}

double exchange_amplitude(double d1, double r0) {
  require_positive_distance(r0);
  return 0.5 * units::coulomb_constant * d1 * d1 / (r0 * r0 * r0);
}

Eigen::Matrix4d pair_hamiltonian(const MWDrive& drive, double r0) {
  Eigen::Matrix2d single;
  // basis {P, S}
  single << drive.delta_P, 0.5 * drive.omega_mw_rabi, 0.5 * drive.omega_mw_rabi, drive.delta_S;
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix4d h;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          h(2 * a + b, 2 * c + d) = single(a, c) * id(b, d) + id(a, c) * single(b, d);
  const double j = exchange_amplitude(drive.d1, r0);
  h(1, 2) += j;
  h(2, 1) += j;
  return h;
}

PairPotential pair_potential_full(const MWDrive& drive, double r0) {
  require_positive_distance(r0);
  const DressedPair dressed = dress(drive, 0.0, 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(pair_hamiltonian(drive, r0));

  PairPotential out;
  out.energies = es.eigenvalues();
  out.states = es.eigenvectors();

  const Eigen::Vector2d minus(dressed.n_minus * dressed.c_minus, dressed.n_minus);
  Eigen::Vector4d minus_minus;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) minus_minus(2 * a + b) = minus(a) * minus(b);
  (out.states.transpose() * minus_minus).cwiseAbs().maxCoeff(&out.minus_minus);

  const double coupling = units::coulomb_constant * drive.d1 * drive.d1 / (r0 * r0 * r0);
  out.drive_ratio = coupling > 0.0 ? drive.omega_mw_rabi / coupling
                                   : std::numeric_limits<double>::infinity();
  if (out.drive_ratio < 10.0) {
    std::ostringstream msg;
    msg << "WeakDriveWarning: Omega_MW / (C0 d1^2 / R0^3) = " << out.drive_ratio
        << " < 10 at R0 = " << r0 << " um";
    out.warnings.push_back(msg.str());
  }
  return out;
}

} // namespace rydgate
