#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stratoflow/corrector.hpp"
#include "stratoflow/errors.hpp"
#include "stratoflow/harmonic.hpp"
#include "stratoflow/manifest.hpp"
#include "stratoflow/operators.hpp"
#include "stratoflow/snapshot.hpp"

namespace stratoflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  os << text;
}

struct InvariantLog {
  json checks = json::array();
  bool all_pass = true;

  void record(const std::string& name, bool pass, double value, const std::string& note = "") {
    checks.push_back({{"name", name}, {"pass", pass}, {"value", value}, {"note", note}});
    all_pass = all_pass && pass;
  }
};

int cutoff_for(const TorusSpec& t) {
  return std::max({t.dealias_limit(0), t.dealias_limit(1), t.dealias_limit(2)});
}

void field_invariants(InvariantLog& log, const SpectralField& f, const std::string& tag) {
  double scale = std::max(1.0, f.l2());
  log.record(tag + ".hermitian_defect", f.hermitian_defect() < 1e-11 * scale,
             f.hermitian_defect());
  log.record(tag + ".divergence_residual", divergence_residual(f) < 1e-10,
             divergence_residual(f));
  log.record(tag + ".zero_mean", cnorm2(f.coeff({0, 0, 0})) == 0.0,
             std::sqrt(cnorm2(f.coeff({0, 0, 0}))));
}

json run_simulate(const ExperimentManifest& m, const fs::path& out, InvariantLog& log) {
  Workspace ws(m.torus);
  WaveFrame frame(m.torus);
  FullStepper stepper(ws, frame, m.run);
  FlowState st{make_initial_data(m.initial, m.torus), 0.0};
  field_invariants(log, st.V, "initial");

  std::vector<TrajectoryRow> rows;
  double diss = 0, prev = std::pow(grad_sobolev_norm(st.V, m.run.s), 2);
  rows.push_back(stepper.diagnostics(st, diss));
  const int steps = static_cast<int>(std::llround(m.run.T / m.run.dt));
  const double e0 = std::pow(sobolev_norm(st.V, 0.0), 2);
  double dissL2 = 0, prevL2 = std::pow(grad_sobolev_norm(st.V, 0.0), 2);
  bool energy_ok = true;
  for (int i = 1; i <= steps; ++i) {
    stepper.step(st);
    double cur = std::pow(grad_sobolev_norm(st.V, m.run.s), 2);
    diss += 0.5 * (prev + cur) * m.run.dt;
    prev = cur;
    double curL2 = std::pow(grad_sobolev_norm(st.V, 0.0), 2);
    dissL2 += 0.5 * (prevL2 + curL2) * m.run.dt;
    prevL2 = curL2;
    double lhs = std::pow(sobolev_norm(st.V, 0.0), 2) +
                 2.0 * std::min(m.run.nu, m.run.nu_prime) * dissL2;
    energy_ok = energy_ok && lhs <= e0 * (1.0 + 1e-3);
    rows.push_back(stepper.diagnostics(st, diss));
    if (m.snapshot_every > 0 && i % m.snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06d.snap", i);
      write_snapshot((out / name).string(), st.V, st.t);
    }
  }
  write_snapshot((out / "snapshot_final.snap").string(), st.V, st.t);
  write_text(out / "trajectory.csv", trajectory_to_csv(rows));
  field_invariants(log, st.V, "final");
  log.record("energy_inequality", energy_ok, energy_ok ? 1.0 : 0.0,
             "||V(t)||^2 + 2 min(nu,nu') int ||grad V||^2 <= ||V0||^2 (1 + 1e-3)");
  return {{"trajectory", "trajectory.csv"}, {"final_snapshot", "snapshot_final.snap"}};
}

json run_limit(const ExperimentManifest& m, const fs::path& out, InvariantLog& log) {
  Workspace ws(m.torus);
  WaveFrame frame(m.torus);
  ResonantTables tables(m.torus, m.resonance_tolerance);
  NonResonanceCertificate cert = certify_nonresonant(m.torus, cutoff_for(m.torus));
  write_text(out / "certificate.json", cert.to_json() + "\n");

  SpectralField U0 = make_initial_data(m.initial, m.torus);
  field_invariants(log, U0, "initial");
  LimitStepper stepper(ws, frame, tables, m.run, cert);
  LimitState ls = make_limit_state(frame, U0);

  std::vector<TrajectoryRow> rows;
  std::vector<double> bar_l2, osc_hs;
  auto record = [&](double diss) {
    SpectralField U = stepper.assemble(ls);
    TrajectoryRow r;
    r.t = ls.t;
    r.l2 = sobolev_norm(U, 0.0);
    r.hs = sobolev_norm(U, m.run.s);
    r.hs_dissipation_integral = diss;
    r.div_residual = divergence_residual(U);
    rows.push_back(r);
    bar_l2.push_back(sobolev_norm(stepper.bar_field(ls), 0.0));
    osc_hs.push_back(sobolev_norm(ls.uosc, m.run.s));
  };
  double diss = 0, prev = std::pow(grad_sobolev_norm(stepper.assemble(ls), m.run.s), 2);
  record(0.0);
  const int steps = static_cast<int>(std::llround(m.run.T / m.run.dt));
  for (int i = 1; i <= steps; ++i) {
    stepper.step(ls);
    double cur = std::pow(grad_sobolev_norm(stepper.assemble(ls), m.run.s), 2);
    diss += 0.5 * (prev + cur) * m.run.dt;
    prev = cur;
    record(diss);
  }
  write_text(out / "trajectory.csv", trajectory_to_csv(rows, {"bar_L2", "osc_Hs"},
                                                       {bar_l2, osc_hs}));
  SpectralField Ufinal = stepper.assemble(ls);
  field_invariants(log, Ufinal, "final");
  log.record("certificate_margin_positive", cert.margin > 0, cert.margin);
  double ha = Ufinal.horizontal_average_mass();
  log.record("zero_horizontal_average", ha < 1e-10 * std::max(1.0, Ufinal.l2()), ha);

  json extra = {{"trajectory", "trajectory.csv"}, {"certificate", "certificate.json"}};
  if (!m.corrector_N_list.empty()) {
    std::ostringstream cs;
    cs << "N,R_eps_N_L2Hs1,Gamma_L2Hs1,Theta_L1,identity_residual_max\n";
    char buf[160];
    for (int N : m.corrector_N_list) {
      CorrectorConfig ccfg;
      ccfg.N = N;
      ccfg.divisor_floor = m.corrector_divisor_floor;
      CorrectorSeries series = corrector_diagnostics(ws, frame, tables, m.run, ccfg, U0, cert,
                                                     m.corrector_stride);
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", N, series.r_eps_N_l2hs1,
                    series.gamma_l2hs1, series.theta_l1, series.identity_residual_max);
      cs << buf;
      log.record("corrector_identity_N" + std::to_string(N),
                 series.identity_residual_max < 1e-8, series.identity_residual_max);
    }
    write_text(out / "corrector.csv", cs.str());
    extra["corrector"] = "corrector.csv";
  }
  return extra;
}

json run_converge(const ExperimentManifest& m, const fs::path& out, InvariantLog& log) {
  Workspace ws(m.torus);
  WaveFrame frame(m.torus);
  ResonantTables tables(m.torus, m.resonance_tolerance);
  NonResonanceCertificate cert = certify_nonresonant(m.torus, cutoff_for(m.torus));
  write_text(out / "certificate.json", cert.to_json() + "\n");
  SpectralField V0 = make_initial_data(m.initial, m.torus);
  field_invariants(log, V0, "initial");
  auto rows = run_convergence_study(ws, frame, tables, m.run, m.epsilon_list, V0, cert);
  write_text(out / "converge.csv", convergence_to_csv(rows));
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    monotone = monotone && rows[i].sup_hs < rows[i - 1].sup_hs;
  log.record("difference_decreasing", monotone, monotone ? 1.0 : 0.0,
             "sup_t ||V^eps - L(-t/eps) U||_{H^s} decreasing along epsilon_list");
  return {{"table", "converge.csv"}, {"certificate", "certificate.json"}};
}

json run_resonance_scan(const ExperimentManifest& m, const fs::path& out, InvariantLog& log) {
  ResonanceOptions opts;
  opts.tolerance = m.resonance_tolerance;
  if (m.resonance_mode == "exact") {
    opts.exact = true;
    opts.rational_squares = m.rational_squares;
  }
  auto triads = enumerate_resonant_triads(m.torus, m.resonance_N, opts);
  write_text(out / "triads.csv", triads_to_csv(triads));
  log.record("triad_count_positive", !triads.empty(), static_cast<double>(triads.size()));
  return {{"table", "triads.csv"}, {"count", triads.size()}};
}

json run_certify(const ExperimentManifest& m, const fs::path& out, InvariantLog& log) {
  ResonanceOptions opts;
  opts.tolerance = m.resonance_tolerance;
  if (m.resonance_mode == "exact") {
    opts.exact = true;
    opts.rational_squares = m.rational_squares;
  }
  NonResonanceCertificate cert = certify_nonresonant(m.torus, m.resonance_N, opts);
  write_text(out / "certificate.json", cert.to_json() + "\n");
  log.record("margin_positive", cert.margin > 0, cert.margin);
  log.record("certificate_validates", cert.validate(), 1.0);
  return {{"certificate", "certificate.json"}, {"margin", cert.margin}};
}

json run_propcheck(const ExperimentManifest& m, const fs::path& out, InvariantLog& log) {
  HarmonicSuiteConfig cfg;
  cfg.seed = m.run.seed;
  cfg.trials = m.propcheck_trials;
  HarmonicReport rep = property_suite_harmonic(m.torus, cfg);
  json checks = json::array();
  for (const HarmonicCheck& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"fitted_constant", c.fitted_constant},
                      {"note", c.note}});
    log.record("harmonic." + c.name, c.pass, c.fitted_constant, c.note);
  }
  write_text(out / "propcheck.json", json({{"checks", checks}}).dump(2) + "\n");
  return {{"report", "propcheck.json"}};
}

}  // namespace

int run_experiment(const ExperimentManifest& m, const std::string& out_dir) {
  fs::path out(out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error("cannot create output directory " + out_dir);
  write_text(out / "echo.manifest", echo_manifest(m));

  InvariantLog log;
  json summary;
  summary["kind"] = m.kind;
  summary["workers"] = m.workers;
  int code = 0;
  try {
    json outputs;
    if (m.kind == "simulate") outputs = run_simulate(m, out, log);
    else if (m.kind == "limit") outputs = run_limit(m, out, log);
    else if (m.kind == "converge") outputs = run_converge(m, out, log);
    else if (m.kind == "resonance-scan") outputs = run_resonance_scan(m, out, log);
    else if (m.kind == "certify") outputs = run_certify(m, out, log);
    else if (m.kind == "propcheck") outputs = run_propcheck(m, out, log);
    else throw ValidationError("unknown kind " + m.kind);
    summary["outputs"] = outputs;
    summary["invariants"] = log.checks;
    summary["all_invariants_pass"] = log.all_pass;
    summary["status"] = log.all_pass ? "ok" : "invariant-failure";
    if (!log.all_pass) code = 4;
  } catch (const ValidationError& e) {
    summary["status"] = "validation-error";
    summary["error"] = e.what();
    code = 2;
  } catch (const Error& e) {
    summary["status"] = "runtime-error";
    summary["error"] = e.what();
    code = 3;
  }
  write_text(out / "summary.json", summary.dump(2) + "\n");
  return code;
}

namespace {

std::vector<std::vector<double>> read_csv_columns(const fs::path& p,
                                                  std::vector<std::string>& names) {
  std::ifstream is(p);
  if (!is) throw Error("summarize: missing expected file " + p.string());
  std::string line;
  if (!std::getline(is, line)) throw Error("summarize: empty file " + p.string());
  names.clear();
  std::istringstream hs(line);
  std::string tok;
  while (std::getline(hs, tok, ',')) names.push_back(tok);
  std::vector<std::vector<double>> cols(names.size());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t i = 0;
    while (std::getline(ls, tok, ',') && i < cols.size()) cols[i++].push_back(std::stod(tok));
  }
  return cols;
}

}  // namespace

std::string summarize(const std::string& out_dir) {
  fs::path out(out_dir);
  std::ostringstream os;
  if (!fs::exists(out / "summary.json"))
    throw Error("summarize: " + out_dir +
                " does not contain summary.json (expected: summary.json, echo.manifest, and the "
                "kind's CSV artifacts)");
  json summary = json::parse(std::ifstream(out / "summary.json"));
  std::string kind = summary.value("kind", "?");
  os << "experiment: " << kind << "  status: " << summary.value("status", "?") << "\n";
  if (summary.contains("invariants")) {
    int pass = 0, total = 0;
    for (const auto& c : summary["invariants"]) {
      ++total;
      pass += c.value("pass", false) ? 1 : 0;
    }
    os << "invariants: " << pass << "/" << total << " pass\n";
    for (const auto& c : summary["invariants"])
      if (!c.value("pass", false))
        os << "  FAIL " << c.value("name", "?") << " value=" << c.value("value", 0.0) << "\n";
  }

  if ((kind == "simulate" || kind == "limit") && fs::exists(out / "trajectory.csv")) {
    std::vector<std::string> names;
    auto cols = read_csv_columns(out / "trajectory.csv", names);
    const auto& t = cols[0];
    const auto& l2 = cols[1];
    os << "trajectory: " << t.size() << " rows, t in [" << t.front() << ", " << t.back()
       << "]\n";
    // least-squares decay-rate fit of log L2 vs t
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (l2[i] <= 0) continue;
      double y = std::log(l2[i]);
      n += 1;
      sx += t[i];
      sy += y;
      sxx += t[i] * t[i];
      sxy += t[i] * y;
    }
    if (n > 1) {
      double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      os << "fitted L2 decay rate: " << -slope << " (log-linear least squares)\n";
    }
    os << "final L2 = " << l2.back() << ", final Hs = " << cols[2].back() << "\n";
  }
  if (kind == "converge") {
    std::vector<std::string> names;
    auto cols = read_csv_columns(out / "converge.csv", names);
    os << "epsilon      sup_Hs_diff      ratio\n";
    for (std::size_t i = 0; i < cols[0].size(); ++i) {
      os << cols[0][i] << "  " << cols[1][i] << "  ";
      if (i > 0) os << cols[1][i] / cols[1][i - 1];
      os << "\n";
    }
    bool monotone = true;
    for (std::size_t i = 1; i < cols[1].size(); ++i)
      monotone = monotone && cols[1][i] < cols[1][i - 1];
    os << "trend: " << (monotone ? "decreasing (converges)" : "NOT monotone") << "\n";
  }
  if (kind == "certify" && fs::exists(out / "certificate.json")) {
    json cert = json::parse(std::ifstream(out / "certificate.json"));
    os << "certificate: N = " << cert.value("N", 0) << ", margin = " << cert.value("margin", 0.0)
       << ", method = " << cert.value("method", "?") << "\n";
  }
  if (kind == "resonance-scan" && fs::exists(out / "triads.csv")) {
    std::ifstream is(out / "triads.csv");
    std::string line;
    long rows = -1;  // header
    while (std::getline(is, line))
      if (!line.empty()) ++rows;
    os << "resonant triads: " << rows << "\n";
  }
  if (kind == "propcheck" && fs::exists(out / "propcheck.json")) {
    json rep = json::parse(std::ifstream(out / "propcheck.json"));
    for (const auto& c : rep["checks"])
      os << (c.value("pass", false) ? "  pass " : "  FAIL ") << c.value("name", "?")
         << "  fitted C = " << c.value("fitted_constant", 0.0) << "\n";
  }
  return os.str();
}

}  // namespace stratoflow
