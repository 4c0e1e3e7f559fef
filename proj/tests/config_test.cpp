#include <doctest.h>

#include <sstream>

#include "rydgate/config.hpp"
#include "rydgate/error.hpp"
#include "rydgate/output.hpp"
#include "support.hpp"

using namespace rydgate;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

template <typename E>
std::string failing_key(const std::string& text) {
  try {
    parse(text);
  } catch (const E& e) {
    return e.key();
  }
  return "<no error>";
}

} // namespace

TEST_CASE("shipped gate config reproduces the gate example") {
  const RunConfig cfg = load_config(RYDGATE_SOURCE_DIR "/configs/fig3_gate.cfg");
  CHECK(cfg.pulse.omega0_mhz == 0.5);
  CHECK(cfg.pulse.delta0_mhz == 0.639);
  CHECK(cfg.pulse.tau_us == 60.0);
  CHECK(cfg.pulse.blockade_mhz.value() == 2.5);
  CHECK(cfg.trap.eta_override.value() == 0.5);
  CHECK(cfg.simulation.n_phonon_max == 5);

  const ResolvedConfig r = resolve(cfg);
  CHECK(units::to_mhz(r.omega_z) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.sim.eta == 0.5);
  CHECK(units::to_mhz(r.blockade) == doctest::Approx(2.5));
  CHECK(units::metres_to_um(r.geometry.r0) == doctest::Approx(5.605).epsilon(1e-3));
}

TEST_CASE("empty file gives the documented defaults") {
  const RunConfig cfg = parse("");
  const RunConfig defaults;
  CHECK(cfg.dressing.omega_mw_mhz == defaults.dressing.omega_mw_mhz);
  CHECK(cfg.pulse.tau_us == 60.0);
  CHECK_FALSE(cfg.pulse.blockade_mhz.has_value());
  CHECK(cfg.output.path == "-");

  // blockade falls back to C3(-) / R0^3 at the trap separation
  const ResolvedConfig r = resolve(cfg);
  CHECK(r.blockade == doctest::Approx(r.interactions.c3_minus / std::pow(r.r0_um, 3)));
}

TEST_CASE("validation errors name the key") {
  CHECK(failing_key<ValidationError>("[dressing]\nomega_mw_mhz = -1\n") == "dressing.omega_mw_mhz");
  CHECK(failing_key<ValidationError>("[pulse]\ntau_us = 0\n") == "pulse.tau_us");
  CHECK(failing_key<ValidationError>("[simulation]\noutput_points = 20\n") ==
        "simulation.output_points");
  CHECK(failing_key<ValidationError>("[pulse]\nomega_mhz = 1\n") == "pulse.omega_mhz");
  CHECK(failing_key<ValidationError>("[output]\nformat = xml\n") == "output.format");
  CHECK(failing_key<ValidationError>("stray = 1\n[pulse]\n") == "stray");
}

TEST_CASE("malformed values and syntax") {
  CHECK(failing_key<ParseError>("[pulse]\ntau_us = sixty\n") == "pulse.tau_us");
  CHECK(failing_key<ParseError>("[simulation]\nn_phonon_max = 5.5\n") == "simulation.n_phonon_max");
  CHECK(failing_key<ParseError>("[pulse]\ntau_us = 60 # trailing\n") == "pulse.tau_us");
  CHECK_THROWS_AS(parse("[pulse\ntau_us = 1\n"), ParseError);
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ParseError);
}

TEST_CASE("both error kinds are input errors") {
  CHECK_THROWS_AS(parse("[pulse]\ntau_us = x\n"), InputError);
  CHECK_THROWS_AS(parse("[pulse]\ntau_us = -1\n"), InputError);
}

TEST_CASE("axial override recomputes the static gradient") {
  const RunConfig cfg = parse("[trap]\nomega_z_mhz_override = 2\n");
  const ResolvedConfig r = resolve(cfg);
  CHECK(units::to_mhz(r.omega_z) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(2.5e-17) == "2.5e-17");
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("CSV quoting") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  Table t;
  t.columns = {"name", "value"};
  t.add_row({std::string("x,y"), 1.5});
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "name,value\n\"x,y\",1.5\n");
  CHECK_THROWS(t.add_row({1.0}));
}
