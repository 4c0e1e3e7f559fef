#include "rydgate/mw_dressing.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

struct Coefficients {
  double c_plus;
  double c_minus;
};

// C_+ C_- = -1 exactly; evaluate the branch free of cancellation first.
Coefficients mixing(double delta_minus, double omega_mw) {
  const double root = std::hypot(omega_mw, delta_minus);
  if (delta_minus >= 0.0) {
    const double c_plus = (delta_minus + root) / omega_mw;
    return {c_plus, -1.0 / c_plus};
  }
  const double c_minus = (delta_minus - root) / omega_mw;
  return {-1.0 / c_minus, c_minus};
}

} // namespace

double MWDrive::splitting() const { return std::hypot(omega_mw_rabi, delta_minus()); }

DressedPair dress(const MWDrive& drive, double pol_P, double pol_S) {
  if (!(drive.omega_mw_rabi > 0.0))
    throw DomainError("dress: omega_mw_rabi must be positive");
  const auto [c_plus, c_minus] = mixing(drive.delta_minus(), drive.omega_mw_rabi);
  DressedPair pair;
  pair.c_plus = c_plus;
  pair.c_minus = c_minus;
  pair.n_plus = 1.0 / std::sqrt(1.0 + c_plus * c_plus);
  pair.n_minus = 1.0 / std::sqrt(1.0 + c_minus * c_minus);
  const double half_split = 0.5 * drive.splitting();
  pair.e_plus = 0.5 * drive.delta_plus() + half_split;
  pair.e_minus = 0.5 * drive.delta_plus() - half_split;
  const double np2 = pair.n_plus * pair.n_plus;
  const double nm2 = pair.n_minus * pair.n_minus;
  pair.pol_plus = np2 * (c_plus * c_plus * pol_P + pol_S);
  pair.pol_minus = nm2 * (c_minus * c_minus * pol_P + pol_S);
  return pair;
}

double dressed_polarizability(double delta_minus, double omega_mw_rabi, double pol_P,
                              double pol_S, Branch branch) {
  const auto coeffs = mixing(delta_minus, omega_mw_rabi);
  const double c = branch == Branch::Plus ? coeffs.c_plus : coeffs.c_minus;
  const double c2 = c * c;
  // N^2 (C^2 P_P + P_S) written as a weighted mean
  return (c2 * pol_P + pol_S) / (1.0 + c2);
}

double solve_zero_polarizability(double pol_P, double pol_S, double omega_mw_rabi,
                                 Branch branch, Bracket bracket) {
  if (!(omega_mw_rabi > 0.0))
    throw DomainError("solve_zero_polarizability: omega_mw_rabi must be positive");
  if (!(pol_P * pol_S < 0.0))
    throw NoRoot("solve_zero_polarizability: pol_P and pol_S must have opposite signs");

  auto f = [&](double dm) {
    return dressed_polarizability(dm, omega_mw_rabi, pol_P, pol_S, branch);
  };
  const double lo = bracket.lower * omega_mw_rabi;
  const double hi = bracket.upper * omega_mw_rabi;
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi))
    throw NoRoot("solve_zero_polarizability: no sign change of the dressed polarizability "
                 "inside the Delta_- bracket");

  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 1);
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

double effective_rabi(const MWDrive& drive, double omega_laser_rabi) {
  const auto pair = dress(drive, 0.0, 0.0);
  const double w = drive.omega_mw_rabi;
  const double dm = drive.delta_minus();
  return w * omega_laser_rabi /
         std::sqrt(4.0 * pair.n_minus * pair.n_minus * (w * w + dm * dm));
}

} // namespace rydgate
