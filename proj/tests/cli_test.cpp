#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rydgate/cli.hpp"

using namespace rydgate;

namespace {

const std::string kConfig = RYDGATE_SOURCE_DIR "/configs/fig3_gate.cfg";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("gate --optimize recovers delta0") {
  const Run r = run({"--config", kConfig, "gate", "--optimize"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["delta0_mhz"].get<double>() == doctest::Approx(0.639).epsilon(0.02));
  // pi and -pi are the same phase; the wrap may land on either side
  CHECK(std::abs(j["phi_ent"].get<double>()) == doctest::Approx(3.14159265359).epsilon(1e-6));
  CHECK(j["optimized"].get<bool>());
}

TEST_CASE("flags win over the config") {
  const Run r = run({"-c", kConfig, "gate", "--blockade-mhz", "5", "--tau-us", "40"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["blockade_mhz"].get<double>() == 5.0);
  CHECK(j["tau_us"].get<double>() == 40.0);
  CHECK(j["omega0_mhz"].get<double>() == 0.5);
}

TEST_CASE("interactions sweep has one row per point") {
  const std::vector<std::string> args{"-c", kConfig, "interactions", "--r-min", "2",
                                      "--r-max", "10", "--points", "50"};
  const Run a = run(args);
  REQUIRE(a.code == kExitOk);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] ==
        "R0_um,vdw_mhz,dd_minus_mhz,full_branch_1_mhz,full_branch_2_mhz,full_branch_3_mhz,"
        "full_branch_4_mhz");
  CHECK(rows[1].rfind("2,", 0) == 0);
  CHECK(rows[50].rfind("10,", 0) == 0);
  CHECK(a.err.find("WeakDriveWarning") != std::string::npos);

  const Run b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("modes and fc tables") {
  const Run m = run({"-c", kConfig, "modes", "--axis", "Z", "--state", "ground"});
  REQUIRE(m.code == kExitOk);
  const auto rows = lines(m.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "axis,state,mode,frequency_mhz,v1,v2");
  CHECK(rows[1].rfind("Z,ground,1,0.99999", 0) == 0);

  const Run f = run({"-c", kConfig, "fc", "--axis", "X", "--state", "both", "--n-max", "3"});
  REQUIRE(f.code == kExitOk);
  const auto fc_rows = lines(f.out);
  CHECK(fc_rows.size() == 17);
  CHECK(fc_rows[0].rfind("bra,ket_0_0,ket_0_1", 0) == 0);

  const Run json = run({"-c", kConfig, "--format", "json", "modes", "--axis", "X"});
  REQUIRE(json.code == kExitOk);
  CHECK(nlohmann::json::parse(json.out).size() == 8);
}

TEST_CASE("dress reports the zero-polarizability detuning") {
  const Run r = run({"-c", kConfig, "dress", "--solve-zero"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["c_minus"].get<double>()) == doctest::Approx(0.680).epsilon(0.005));
  CHECK(j["c3_minus_mhz_um3"].get<double>() == doctest::Approx(309.0).epsilon(1e-3));
  CHECK(j["zero_polarizability_delta_minus_mhz"].get<double>() ==
        doctest::Approx(157.883).epsilon(1e-5));
}

TEST_CASE("gate trace") {
  const Run r = run({"-c", kConfig, "gate", "--trace", "--trace-points", "11"});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "t_us,phi_DD,phi_DE,phi_ent");
  CHECK(rows[1] == "0,0,0,0");
}

TEST_CASE("evolve writes a CSV and a JSON summary") {
  const auto dir = std::filesystem::temp_directory_path() / "rydgate_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "evolve.csv";
  const Run r = run({"-c", kConfig, "-o", csv.string(), "evolve", "--n-max", "2", "--no-phase"});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "t_us,p_DD,p_Dm,p_mm,p_init,mean_phonon,norm");
  const auto summary = nlohmann::json::parse(slurp(dir / "evolve.csv.summary.json"));
  CHECK(summary["P_loss"].get<double>() == doctest::Approx(0.052).epsilon(0.2));
  CHECK(summary["n_phonon_max"].get<int>() == 2);
  CHECK_FALSE(summary.contains("phi_ent_dynamic"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"-c", "/nonexistent.cfg", "gate"}).code == kExitInvalid);
  CHECK(run({"-c", kConfig, "gate", "--tau-us", "-3"}).code == kExitInvalid);
  CHECK(run({"-c", kConfig, "interactions", "--points", "0"}).code == kExitInvalid);

  // numerical failures map to 3
  CHECK(run({"-c", kConfig, "gate", "--optimize", "--omega0-mhz", "0"}).code == kExitNumerical);
  const Run bad = run({"-c", kConfig, "gate", "--blockade-mhz", "-0.9"});
  CHECK(bad.code == kExitInvalid);
}

TEST_CASE("mode instability exits with the numerical code") {
  const auto path = std::filesystem::temp_directory_path() / "rydgate_unstable.cfg";
  {
    std::ofstream cfg(path);
    cfg << "[dressing]\npol_p = 1e12\npol_s = -1e7\n";
  }
  const Run r = run({"-c", path.string(), "modes", "--state", "both"});
  CHECK(r.code == kExitNumerical);
  CHECK(r.err.find("non-positive eigenvalue") != std::string::npos);
  std::filesystem::remove(path);
}
