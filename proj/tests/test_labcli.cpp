#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stratoflow/manifest.hpp"
#include "stratoflow/snapshot.hpp"
#include "stratoflow/wave_basis.hpp"
#include "test_util.hpp"

using namespace stratoflow;
using namespace stratoflow::testutil;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("stratoflow-test-" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kMinimalManifest = R"(
kind = certify
[torus]
a1 = 1.0
a2 = 1.0
a3 = 0.87
N1 = 8
N2 = 8
N3 = 8
)";

}  // namespace

TEST_CASE("manifest: minimal parse fills defaults; echo round-trips") {
  ExperimentManifest m = parse_manifest_text(kMinimalManifest, "test");
  CHECK(m.kind == "certify");
  CHECK(m.torus.a3 == 0.87);
  CHECK(m.run.nu == 0.1);        // default materialized
  CHECK(m.run.dealias == true);  // default materialized
  std::string echoed = echo_manifest(m);
  ExperimentManifest back = parse_manifest_text(echoed, "echo");
  CHECK(back == m);
}

TEST_CASE("manifest: descriptive validation errors with line numbers") {
  std::string bad = "kind = simulate\n[physics]\nnu = -0.5\n";
  try {
    (void)parse_manifest_text(bad, "bad.manifest");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("physics.nu") != std::string::npos);
  }

  std::string unknown = "kind = simulate\n[torus]\nbogus_field = 3\n";
  try {
    (void)parse_manifest_text(unknown, "u.manifest");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find(":3") != std::string::npos);
    CHECK(msg.find("torus.bogus_field") != std::string::npos);
  }
}

TEST_CASE("initial data recipes: kernel carries no oscillation, amplitudes normalize") {
  TorusSpec t{1.0, 1.0, 0.87, 8, 8, 8};
  WaveFrame frame(t);

  RecipeParams kv;
  kv.kind = "kernel_vortex";
  kv.layers = 2;
  kv.amplitude = 0.7;
  SpectralField kf = make_initial_data(kv, t);
  CHECK(project_osc(frame, kf).l2() < 1e-13);
  CHECK(kf.horizontal_average_mass() == 0.0);

  RecipeParams rs;
  rs.kind = "random_solenoidal";
  rs.s = 1.0;
  rs.amplitude = 1.0;
  SpectralField rf = make_initial_data(rs, t);
  CHECK(sobolev_norm(rf, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(divergence_residual(rf) < 1e-13);
  CHECK(rf.horizontal_average_mass() == 0.0);

  RecipeParams op;
  op.kind = "osc_pack";
  op.modes = 6;
  SpectralField of = make_initial_data(op, t);
  CHECK(project_bar(frame, of).l2() < 1e-13);

  RecipeParams badp;
  badp.kind = "no_such_recipe";
  CHECK_THROWS_AS((void)make_initial_data(badp, t), RecipeError);
}

TEST_CASE("snapshot: bit-identical round trip through the file format") {
  TorusSpec t{1.3, 0.7, 1.9, 8, 8, 8};
  Rng rng(91, "snap");
  SpectralField f = random_solenoidal(t, rng);
  fs::path dir = fresh_dir("snapshot");
  std::string path = (dir / "field.snap").string();
  write_snapshot(path, f, 0.625);
  Snapshot snap = read_snapshot(path);
  CHECK(snap.time == 0.625);
  REQUIRE(snap.field.torus() == t);
  for (std::size_t i = 0; i < f.raw().size(); ++i) {
    CHECK(snap.field.raw()[i].real() == f.raw()[i].real());
    CHECK(snap.field.raw()[i].imag() == f.raw()[i].imag());
  }
  fs::remove_all(dir);
}

TEST_CASE("run: certify produces a certificate, every run echoes its manifest") {
  ExperimentManifest m = parse_manifest_text(kMinimalManifest, "test");
  m.resonance_N = 2;
  fs::path dir = fresh_dir("certify");
  int code = run_experiment(m, dir.string());
  CHECK(code == 0);
  CHECK(fs::exists(dir / "echo.manifest"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "certificate.json"));
  std::string cert = slurp(dir / "certificate.json");
  CHECK(cert.find("\"margin\"") != std::string::npos);
  std::string report = summarize(dir.string());
  CHECK(report.find("certificate") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run: propcheck emits the harmonic-analysis report") {
  ExperimentManifest m = parse_manifest_text(kMinimalManifest, "test");
  m.kind = "propcheck";
  m.propcheck_trials = 12;
  fs::path dir = fresh_dir("propcheck");
  int code = run_experiment(m, dir.string());
  CHECK(code == 0);
  std::string rep = slurp(dir / "propcheck.json");
  CHECK(rep.find("bernstein") != std::string::npos);
  CHECK(rep.find("gagliardo_nirenberg") != std::string::npos);
  std::string human = summarize(dir.string());
  CHECK(human.find("pass") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run: converge writes a decreasing difference column") {
  ExperimentManifest m = parse_manifest_text(kMinimalManifest, "test");
  m.kind = "converge";
  m.run.nu = 0.3;
  m.run.nu_prime = 0.3;
  m.run.dt = 0.01;
  m.run.T = 0.2;
  m.initial.kind = "random_solenoidal";
  m.initial.amplitude = 0.25;
  m.epsilon_list = {3e-1, 1e-1, 3e-2, 1e-2};
  fs::path dir = fresh_dir("converge");
  int code = run_experiment(m, dir.string());
  CHECK(code == 0);
  std::string csv = slurp(dir / "converge.csv");
  int rows = -1;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 4);
  std::string report = summarize(dir.string());
  CHECK(report.find("decreasing") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("determinism: identical manifests give byte-identical artifacts") {
  ExperimentManifest m = parse_manifest_text(kMinimalManifest, "test");
  m.kind = "simulate";
  m.run.nu = 0.3;
  m.run.nu_prime = 0.3;
  m.run.dt = 0.01;
  m.run.T = 0.1;
  m.run.seed = 777;
  m.initial.seed = 777;
  m.initial.amplitude = 0.3;
  fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  CHECK(run_experiment(m, d1.string()) == 0);
  CHECK(run_experiment(m, d2.string()) == 0);
  CHECK(slurp(d1 / "trajectory.csv") == slurp(d2 / "trajectory.csv"));
  CHECK(slurp(d1 / "summary.json") == slurp(d2 / "summary.json"));
  CHECK(slurp(d1 / "echo.manifest") == slurp(d2 / "echo.manifest"));
  CHECK(slurp(d1 / "snapshot_final.snap") == slurp(d2 / "snapshot_final.snap"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("summarize: decay-rate fit on a synthetic exponential; empty dir errors") {
  fs::path dir = fresh_dir("fit");
  // synthetic trajectory with exact rate c nu = 0.35
  std::ostringstream csv;
  csv << "t,L2,Hs,Hs_dissipation_integral,div_residual\n";
  for (int i = 0; i <= 50; ++i) {
    double t = 0.1 * i;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,0,0\n", t, std::exp(-0.35 * t),
                  std::exp(-0.35 * t));
    csv << buf;
  }
  std::ofstream(dir / "trajectory.csv") << csv.str();
  std::ofstream(dir / "summary.json")
      << "{\"kind\": \"simulate\", \"status\": \"ok\", \"invariants\": []}\n";
  std::string report = summarize(dir.string());
  auto pos = report.find("fitted L2 decay rate: ");
  REQUIRE(pos != std::string::npos);
  double rate = std::stod(report.substr(pos + 22));
  CHECK(std::abs(rate - 0.35) < 0.05 * 0.35);
  fs::remove_all(dir);

  fs::path empty = fresh_dir("empty");
  CHECK_THROWS_WITH_AS((void)summarize(empty.string()),
                       doctest::Contains("summary.json"), Error);
  fs::remove_all(empty);
}
