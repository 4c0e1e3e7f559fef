#include "rydgate/trap_geometry.hpp"

#include <cmath>
#include <string>

#include "rydgate/error.hpp"

namespace rydgate {

SecularFrequencies secular_frequencies(const TrapConfig& cfg) {
  if (!(cfg.mass > 0.0) || !(cfg.charge > 0.0) || !(cfg.omega_rf > 0.0))
    throw UnconfinedError("mass, charge and rf frequency must be positive");
  const double q_over_m = cfg.charge / cfg.mass;
  const double axial = q_over_m * cfg.beta;
  if (!(axial > 0.0))
    throw UnconfinedError("no axial confinement (beta <= 0)");
  const double pseudo = q_over_m * cfg.alpha / cfg.omega_rf;
  const double radial = pseudo * pseudo - axial;
  if (!(radial > 0.0))
    throw UnconfinedError("no radial confinement ((e alpha / M Omega)^2 <= e beta / M)");
  return {std::sqrt(2.0 * radial), 2.0 * std::sqrt(axial)};
}

TrapConfig trap_for_frequencies(double omega_rho, double omega_Z,
                                double omega_rf, double mass, double charge) {
  TrapConfig cfg;
  cfg.omega_rf = omega_rf;
  cfg.mass = mass;
  cfg.charge = charge;
  cfg.beta = mass * omega_Z * omega_Z / (4.0 * charge);
  const double pseudo = std::sqrt(0.5 * omega_rho * omega_rho + charge * cfg.beta / mass);
  cfg.alpha = pseudo * mass * omega_rf / charge;
  return cfg;
}

double coulomb_constant(const TrapConfig& cfg) {
  return cfg.charge * cfg.charge / (4.0 * units::pi * units::vacuum_permittivity);
}

CrystalGeometry equilibrium_geometry(const TrapConfig& cfg) {
  if (!(cfg.beta > 0.0))
    throw UnconfinedError("no axial confinement (beta <= 0)");
  CrystalGeometry geom;
  geom.z2 = std::cbrt(coulomb_constant(cfg) / (16.0 * cfg.charge * cfg.beta));
  geom.z1 = -geom.z2;
  geom.r0 = 2.0 * geom.z2;
  // n12 points from ion 2 to ion 1
  geom.n12 = Eigen::Vector3d(0.0, 0.0, -1.0);
  return geom;
}

double lamb_dicke(double k_L, double omega_Z, double mass) {
  if (k_L < 0.0 || !(omega_Z > 0.0) || !(mass > 0.0))
    throw DomainError("lamb_dicke: inputs must be positive");
  const double xi = std::sqrt(units::hbar / (2.0 * (2.0 * mass) * omega_Z));
  return k_L * xi / std::sqrt(2.0);
}

} // namespace rydgate
