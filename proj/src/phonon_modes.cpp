#include "rydgate/phonon_modes.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rydgate/error.hpp"

namespace rydgate {

const char* axis_name(Axis axis) {
  switch (axis) {
  case Axis::X: return "X";
  case Axis::Y: return "Y";
  case Axis::Z: return "Z";
  }
  return "?";
}

Eigen::Matrix2d HessianSpec::matrix() const {
  const double w2 = omega_chi * omega_chi;
  Eigen::Matrix2d m;
  m << w2 - polarizability_shift[0] - coulomb_coupling, coulomb_coupling,
      coulomb_coupling, w2 - polarizability_shift[1] - coulomb_coupling;
  return m;
}

double polarizability_shift(const TrapConfig& cfg, double polarizability) {
  const double qa = cfg.charge * cfg.alpha;
  const double per_s2 = 2.0 * qa * qa * polarizability / cfg.mass;
  return per_s2 * 1e-12;
}

HessianSpec build_hessian(Axis axis, const TrapConfig& cfg, const CrystalGeometry& geom,
                          const std::array<double, 2>& pol_per_ion) {
  const SecularFrequencies sec = secular_frequencies(cfg);
  HessianSpec h;
  h.axis = axis;
  h.omega_chi = units::per_second_to_per_us(axis == Axis::Z ? sec.omega_Z : sec.omega_rho);
  const double kappa = coulomb_constant(cfg) / (cfg.mass * std::pow(geom.r0, 3)) * 1e-12;
  h.coulomb_coupling = coulomb_sign(axis) * kappa;
  if (axis != Axis::Z) {
    for (std::size_t j = 0; j < 2; ++j)
      h.polarizability_shift[j] = polarizability_shift(cfg, pol_per_ion[j]);
  }
  return h;
}

PhononBasis diagonalize(const HessianSpec& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h.matrix());
  const Eigen::Vector2d lambda = es.eigenvalues();
  if (!(lambda.minCoeff() > 0.0)) {
    std::ostringstream msg;
    msg << "Hessian along " << axis_name(h.axis) << " has non-positive eigenvalue "
        << lambda.minCoeff() << " rad^2/us^2";
    throw ModeInstability(msg.str());
  }
  PhononBasis basis;
  basis.frequencies = lambda.cwiseSqrt();
  basis.eigenvectors = es.eigenvectors();
  for (Eigen::Index k = 0; k < 2; ++k) {
    auto col = basis.eigenvectors.col(k);
    const double lead = std::abs(col(0)) > 1e-14 ? col(0) : col(1);
    if (lead < 0.0) col = -col;
  }
  return basis;
}

} // namespace rydgate
