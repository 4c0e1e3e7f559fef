#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "rydgate/adiabatic_gate.hpp"
#include "rydgate/error.hpp"
#include "support.hpp"

using namespace rydgate;
using rydgate::test::reference_pulse;
using units::mhz;

TEST_CASE("pulse endpoints and midpoint") {
  const PulseShape p = reference_pulse();
  const PulseSample s0 = pulse_at(0.0, p);
  CHECK(s0.omega_minus == 0.0);
  CHECK(s0.e_minus == doctest::Approx(1.5 * p.delta0).epsilon(1e-15));
  const PulseSample mid = pulse_at(0.5 * p.tau, p);
  CHECK(mid.omega_minus == doctest::Approx(p.omega0).epsilon(1e-15));
  CHECK(mid.e_minus == doctest::Approx(0.5 * p.delta0).epsilon(1e-15));
  const PulseSample end = pulse_at(p.tau, p);
  CHECK(std::abs(end.omega_minus) < 1e-30 + 1e-15 * p.omega0);
  CHECK_THROWS_AS(pulse_at(-1e-9, p), DomainError);
  CHECK_THROWS_AS(pulse_at(p.tau * (1 + 1e-12), p), DomainError);
}

TEST_CASE("no drive, no light shift") {
  const AdiabaticEnergies e = adiabatic_energies(0.0, mhz(0.6), mhz(2.5));
  CHECK(e.e_dd == 0.0);
  CHECK(e.e_de == 0.0);
}

TEST_CASE("infinite blockade reduces delta_0 to E_-") {
  // E_DD then equals the two-level light shift with coupling sqrt 2 Omega
  const double w = mhz(0.5);
  const double e = mhz(0.6);
  const AdiabaticEnergies a = adiabatic_energies(w, e, 1e12);
  const double expected = 0.5 * (e - std::sqrt(e * e + 2 * w * w));
  CHECK(a.e_dd == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("singular denominator") {
  CHECK_THROWS_AS(adiabatic_energies(mhz(0.5), mhz(1.0), mhz(-2.0)), SingularDenominator);
}

TEST_CASE("adiabatic branches are non-positive") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(1e-3, 50.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const AdiabaticEnergies a = adiabatic_energies(u(rng), u(rng), u(rng));
    CHECK(a.e_dd <= 0.0);
    CHECK(a.e_de <= 0.0);
  }
}

TEST_CASE("perturbative energy tracks the exact three-level ground state when weakly driven") {
  for (double ratio : {0.01, 0.05}) {
    const double e = mhz(0.6);
    const double w = ratio * e;
    const double b = mhz(2.5);
    const double approx = adiabatic_energies(w, e, b).e_dd;
    const double exact = exact_dd_energy(w, e, b);
    CHECK(std::abs(approx - exact) < 1e-3 * std::abs(exact));
  }
}

TEST_CASE("reference pulse gives a pi entangling phase") {
  const GateDesign g = entangling_phase(reference_pulse(), mhz(2.5));
  CHECK(std::abs(g.phi_ent - units::pi) < 0.05 * units::pi);
  CHECK(g.phi_ent == doctest::Approx(3.14097).epsilon(1e-5));
  CHECK(g.adiabaticity.satisfied());
}

TEST_CASE("no drive gives the identity") {
  PulseShape p = reference_pulse();
  p.omega0 = 0.0;
  const GateDesign g = entangling_phase(p, mhz(2.5));
  CHECK(g.phi_ent == 0.0);
  CHECK((g.unitary - Eigen::Matrix4cd::Identity()).norm() == 0.0);
}

TEST_CASE("no blockade gives no entanglement in the weak-drive regime") {
  const PulseShape p{mhz(0.1), mhz(0.6), 60.0};
  const GateDesign g = entangling_phase(p, 0.0);
  CHECK(std::abs(g.phi_ent) < 0.05);
  // delta_0 = E - Omega^2 / 4E at B = 0
  const auto s = pulse_at(20.0, p);
  const double d0 = s.e_minus - s.omega_minus * s.omega_minus / (4 * s.e_minus);
  const double expected = 0.5 * (d0 - std::sqrt(d0 * d0 + 2 * s.omega_minus * s.omega_minus));
  CHECK(adiabatic_energies(s.omega_minus, s.e_minus, 0.0).e_dd ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("quadrature tolerance convergence") {
  GateOptions loose;
  loose.abs_tolerance = 1e-8;
  GateOptions tight;
  tight.abs_tolerance = 5e-9;
  const double a = entangling_phase(reference_pulse(), mhz(2.5), loose).phi_ent;
  const double b = entangling_phase(reference_pulse(), mhz(2.5), tight).phi_ent;
  CHECK(std::abs(a - b) < 1e-7);
}

TEST_CASE("entangling phase is continuous and monotone in the blockade") {
  double prev = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double b = mhz(10.0) * k / 100.0;
    const double phi = entangling_phase(reference_pulse(), b).phi_ent_unwrapped;
    if (k > 0) CHECK(phi > prev);
    prev = phi;
  }
  for (double b : {0.0, mhz(2.5), mhz(9.0)}) {
    const double base = entangling_phase(reference_pulse(), b).phi_ent_unwrapped;
    double last = std::numeric_limits<double>::infinity();
    for (double step = mhz(0.1); step > mhz(1e-4); step *= 0.5) {
      const double jump = std::abs(entangling_phase(reference_pulse(), b + step).phi_ent_unwrapped - base);
      CHECK(jump < last);
      last = jump;
    }
    CHECK(last < 1e-2);
  }
}

TEST_CASE("phase trace ends at the full integrals") {
  const GateDesign g = entangling_phase(reference_pulse(), mhz(2.5));
  const auto trace = phase_trace(reference_pulse(), mhz(2.5), 61);
  REQUIRE(trace.size() == 61);
  CHECK(trace.front().phi_dd == 0.0);
  CHECK(trace.back().t == doctest::Approx(60.0));
  CHECK(std::abs(trace.back().phi_dd - g.phi_dd) < 1e-7);
  CHECK(std::abs(trace.back().phi_de - g.phi_de) < 1e-7);
  CHECK(std::abs(trace.back().phi_ent - g.phi_ent_unwrapped) < 1e-7);
}

TEST_CASE("optimizer recovers the reference detuning") {
  const double d0 = optimize_pulse(mhz(0.5), 60.0, mhz(2.5), units::pi);
  CHECK(std::abs(d0 / mhz(0.639) - 1.0) < 0.02);
  const double wider = optimize_pulse(mhz(0.5), 60.0, mhz(2.5), units::pi, {0.2, 8.0});
  CHECK(std::abs(wider - d0) < 1e-9 * d0);
  CHECK(std::abs(entangling_phase({mhz(0.5), d0, 60.0}, mhz(2.5)).phi_ent_unwrapped - units::pi) <
        1e-6);
}

TEST_CASE("optimizer failures") {
  CHECK_THROWS_AS(optimize_pulse(0.0, 60.0, mhz(2.5), 0.0), NoRoot);
  CHECK_THROWS_AS(optimize_pulse(mhz(0.5), 60.0, mhz(2.5), 100.0), NoRoot);
}

TEST_CASE("gate unitary structure") {
  const Eigen::Matrix4cd cz = gate_unitary(units::pi, 0.0);
  CHECK((cz.diagonal() - Eigen::Vector4cd(1, 1, 1, -1)).norm() < 1e-15);

  const std::complex<double> i(0.0, 1.0);
  const Eigen::Matrix4cd local = gate_unitary(0.0, 0.7);
  Eigen::Matrix2cd single = Eigen::Matrix2cd::Zero();
  single(0, 0) = 1.0;
  single(1, 1) = std::exp(0.7 * i);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(std::abs(local(2 * a + b, 2 * a + b) - single(a, a) * single(b, b)) < 1e-15);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Matrix4cd u = gate_unitary(ang(rng), ang(rng));
    CHECK((u * u.adjoint() - Eigen::Matrix4cd::Identity()).norm() < 1e-14);
    CHECK((u - Eigen::Matrix4cd(u.diagonal().asDiagonal())).norm() == 0.0);
  }
}

TEST_CASE("optimized gate is a CZ up to single-qubit phases") {
  const double d0 = optimize_pulse(mhz(0.5), 60.0, mhz(2.5), units::pi);
  const GateDesign g = entangling_phase({mhz(0.5), d0, 60.0}, mhz(2.5));
  const std::complex<double> i(0.0, 1.0);
  const double q = g.phi_de;
  Eigen::Vector4cd strip;
  strip << 1.0, std::exp(-i * q), std::exp(-i * q), std::exp(-2.0 * i * q);
  const Eigen::Matrix4cd stripped = g.unitary * strip.asDiagonal();
  const Eigen::Matrix4cd cz = gate_unitary(units::pi, 0.0);
  CHECK(std::abs((stripped * cz.adjoint()).trace()) / 4.0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase wrapping") {
  CHECK(wrap_phase(units::pi) == doctest::Approx(units::pi));
  CHECK(wrap_phase(-units::pi) == doctest::Approx(units::pi));
  CHECK(wrap_phase(3 * units::pi + 0.1) == doctest::Approx(-units::pi + 0.1));
  CHECK(wrap_phase(0.3) == doctest::Approx(0.3));
}
