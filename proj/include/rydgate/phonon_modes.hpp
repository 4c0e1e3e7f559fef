#pragma once

// State-dependent phonon modes of the two-ion crystal along one trap axis.
//
// Hessian entries are second derivatives of the potential energy divided by
// the ion mass, so every entry is an angular frequency squared (rad^2/us^2).

#include <array>

#include <Eigen/Core>

#include "rydgate/trap_geometry.hpp"

namespace rydgate {

enum class Axis { X, Y, Z };

/// Coulomb curvature sign factor along an axis: +1 transverse, -2 axial.
constexpr double coulomb_sign(Axis axis) { return axis == Axis::Z ? -2.0 : 1.0; }

const char* axis_name(Axis axis);

struct HessianSpec {
  Axis axis = Axis::Z;
  double omega_chi = 0.0;        ///< bare trap frequency along the axis, rad/us
  double coulomb_coupling = 0.0; ///< c_chi * C0 / (M R0^3), rad^2/us^2
  std::array<double, 2> polarizability_shift{0.0, 0.0}; ///< 2 e^2 alpha^2 P_j / M, rad^2/us^2

  Eigen::Matrix2d matrix() const;
};

struct PhononBasis {
  Eigen::Vector2d frequencies = Eigen::Vector2d::Zero(); ///< ascending, rad/us
  Eigen::Matrix2d eigenvectors = Eigen::Matrix2d::Identity(); ///< columns are modes
};

/// Ponderomotive curvature 2 e^2 alpha^2 P / M (rad^2/us^2) for a
/// polarizability P in m^2/J.
double polarizability_shift(const TrapConfig& cfg, double polarizability);

/// Hessian of the crystal along `axis`. Polarizabilities (m^2/J) enter only
/// the transverse axes; the ponderomotive correction has no Z component.
HessianSpec build_hessian(Axis axis, const TrapConfig& cfg, const CrystalGeometry& geom,
                          const std::array<double, 2>& pol_per_ion = {0.0, 0.0});

/// Throws ModeInstability if any eigenvalue is not strictly positive.
PhononBasis diagonalize(const HessianSpec& h);

} // namespace rydgate
