#include "rydgate/adiabatic_gate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

constexpr int kQuadratureDepth = 20;
constexpr int kGapSamples = 2001;

// Light shift (s - x) / 2 with s = sqrt(x^2 + w2), written without
// cancellation for x > 0.
double lower_branch(double x, double w2) {
  const double s = std::sqrt(x * x + w2);
  if (x > 0.0) return -0.5 * w2 / (x + s);
  return 0.5 * (x - s);
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  // relative tolerance chosen so that the absolute error stays well below abs_tol
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, kQuadratureDepth,
                                                            1e-3 * abs_tol / std::max(1.0, b - a),
                                                            &error, &l1);
  if (error > abs_tol) {
    std::ostringstream msg;
    msg << "phase quadrature error estimate " << error << " exceeds " << abs_tol;
    throw ToleranceFailure(msg.str());
  }
  return value;
}

AdiabaticityReport check_adiabaticity(const PulseShape& p, double blockade, double factor) {
  AdiabaticityReport report;
  report.required = factor;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGapSamples; ++i) {
    const double t = p.tau * i / (kGapSamples - 1);
    const auto s = pulse_at(t, p);
    const double w2 = s.omega_minus * s.omega_minus;
    const double delta0 = s.e_minus - w2 / (4.0 * s.e_minus + 2.0 * blockade);
    const double gap = std::min(std::sqrt(s.e_minus * s.e_minus + w2),
                                std::sqrt(delta0 * delta0 + 2.0 * w2));
    report.min_gap = std::min(report.min_gap, gap);
  }
  report.max_slew = (std::abs(p.omega0) + std::abs(p.delta0)) * units::pi / p.tau;
  report.ratio = report.max_slew > 0.0 ? report.min_gap / std::sqrt(report.max_slew)
                                       : std::numeric_limits<double>::infinity();
  return report;
}

void validate(const PulseShape& p) {
  if (!(p.tau > 0.0)) throw DomainError("pulse: tau must be positive");
  if (p.omega0 < 0.0) throw DomainError("pulse: omega0 must be non-negative");
}

} // namespace

PulseSample pulse_at(double t, const PulseShape& p) {
  if (!(t >= 0.0 && t <= p.tau)) {
    std::ostringstream msg;
    msg << "pulse_at: t = " << t << " outside [0, " << p.tau << "]";
    throw DomainError(msg.str());
  }
  const double phase = units::pi * t / p.tau;
  const double s = std::sin(phase);
  const double c = std::cos(phase);
  return {p.omega0 * s * s, p.delta0 * (0.5 + c * c)};
}

AdiabaticEnergies adiabatic_energies(double omega_minus, double e_minus, double blockade) {
  const double denom = 4.0 * e_minus + 2.0 * blockade;
  const double scale = std::max({std::abs(4.0 * e_minus), std::abs(2.0 * blockade),
                                 std::numeric_limits<double>::min()});
  if (std::abs(denom) <= 1e-12 * scale) throw SingularDenominator("4 E_- + 2 B vanishes");
  const double w2 = omega_minus * omega_minus;
  const double delta0 = e_minus - w2 / denom;
  return {lower_branch(delta0, 2.0 * w2), lower_branch(e_minus, w2)};
}

double exact_dd_energy(double omega_minus, double e_minus, double blockade) {
  const double g = omega_minus / std::sqrt(2.0);
  Eigen::Matrix3d h;
  h << 0.0, g, 0.0, g, e_minus, g, 0.0, g, 2.0 * e_minus + blockade;
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(h, Eigen::EigenvaluesOnly)
      .eigenvalues()(0);
}

double wrap_phase(double phi) {
  return phi - units::two_pi * std::ceil((phi - units::pi) / units::two_pi);
}

Eigen::Matrix4cd gate_unitary(double phi_ent, double phi_de) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Vector4cd d;
  d << 1.0, std::exp(i * phi_de), std::exp(i * phi_de), std::exp(i * (phi_ent + 2.0 * phi_de));
  return d.asDiagonal();
}

GateDesign entangling_phase(const PulseShape& p, double blockade, const GateOptions& opts) {
  validate(p);
  GateDesign g;
  g.pulse = p;
  g.blockade = blockade;
  g.phi_dd = integrate(
      [&](double t) {
        const auto s = pulse_at(std::clamp(t, 0.0, p.tau), p);
        return adiabatic_energies(s.omega_minus, s.e_minus, blockade).e_dd;
      },
      0.0, p.tau, opts.abs_tolerance);
  g.phi_de = integrate(
      [&](double t) {
        const auto s = pulse_at(std::clamp(t, 0.0, p.tau), p);
        return adiabatic_energies(s.omega_minus, s.e_minus, blockade).e_de;
      },
      0.0, p.tau, opts.abs_tolerance);
  g.phi_ent_unwrapped = g.phi_dd - 2.0 * g.phi_de;
  g.phi_ent = wrap_phase(g.phi_ent_unwrapped);
  g.unitary = gate_unitary(g.phi_ent, g.phi_de);
  g.adiabaticity = check_adiabaticity(p, blockade, opts.adiabatic_factor);
  return g;
}

std::vector<PhaseTracePoint> phase_trace(const PulseShape& p, double blockade, int points,
                                         const GateOptions& opts) {
  validate(p);
  if (points < 2) throw DomainError("phase_trace: need at least 2 points");
  auto e_dd = [&](double t) {
    const auto s = pulse_at(std::clamp(t, 0.0, p.tau), p);
    return adiabatic_energies(s.omega_minus, s.e_minus, blockade).e_dd;
  };
  auto e_de = [&](double t) {
    const auto s = pulse_at(std::clamp(t, 0.0, p.tau), p);
    return adiabatic_energies(s.omega_minus, s.e_minus, blockade).e_de;
  };
  std::vector<PhaseTracePoint> trace(static_cast<std::size_t>(points));
  const double per_interval = opts.abs_tolerance / (points - 1);
  for (int i = 1; i < points; ++i) {
    const double a = p.tau * (i - 1) / (points - 1);
    const double b = p.tau * i / (points - 1);
    auto& cur = trace[static_cast<std::size_t>(i)];
    const auto& prev = trace[static_cast<std::size_t>(i - 1)];
    cur.t = b;
    cur.phi_dd = prev.phi_dd + integrate(e_dd, a, b, per_interval);
    cur.phi_de = prev.phi_de + integrate(e_de, a, b, per_interval);
    cur.phi_ent = cur.phi_dd - 2.0 * cur.phi_de;
  }
  return trace;
}

double optimize_pulse(double omega0, double tau, double blockade, double target,
                      OptimizeBracket bracket, const GateOptions& opts) {
  if (!(omega0 > 0.0))
    throw NoRoot("optimize_pulse: objective is flat for omega0 = 0");
  auto objective = [&](double delta0) {
    return entangling_phase({omega0, delta0, tau}, blockade, opts).phi_ent_unwrapped - target;
  };
  const double lo = bracket.lower * omega0;
  const double hi = bracket.upper * omega0;
  const double f_lo = objective(lo);
  const double f_hi = objective(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi))
    throw NoRoot("optimize_pulse: phi_ent - target has no sign change in the Delta0 bracket");

  boost::uintmax_t max_iter = 200;
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 4);
  const auto [a, b] =
      boost::math::tools::toms748_solve(objective, lo, hi, f_lo, f_hi, tol, max_iter);
  const double f_a = objective(a);
  const double f_b = objective(b);
  const double root = std::abs(f_a) <= std::abs(f_b) ? a : b;
  if (std::min(std::abs(f_a), std::abs(f_b)) >= 1e-6)
    throw NoRoot("optimize_pulse: root finder did not reach |phi_ent - target| < 1e-6");
  return root;
}

} // namespace rydgate
