#include "stratoflow/manifest.hpp"

#include <cinttypes>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "stratoflow/errors.hpp"

namespace stratoflow {

namespace {

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

using RawMap = std::map<std::string, RawEntry>;

RawMap tokenize(const std::string& text, const std::string& origin) {
  RawMap out;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string s = line;
    if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
    auto trim = [](std::string v) {
      auto b = v.find_first_not_of(" \t\r");
      auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ValidationError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty())
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty key");
    std::string full = section.empty() ? key : section + "." + key;
    if (out.count(full))
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": duplicate key " + full);
    out[full] = {value, lineno, false};
  }
  return out;
}

class Reader {
 public:
  Reader(RawMap& raw, std::string origin) : raw_(raw), origin_(std::move(origin)) {}

  std::string str(const std::string& key, const std::string& dflt) {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    it->second.used = true;
    return it->second.value;
  }
  double num(const std::string& key, double dflt) {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    it->second.used = true;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second.value, &used);
      if (used != it->second.value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ValidationError(origin_ + ":" + std::to_string(it->second.line) + ": field " + key +
                            " is not a number: '" + it->second.value + "'");
    }
  }
  long long integer(const std::string& key, long long dflt) {
    double v = num(key, static_cast<double>(dflt));
    long long n = static_cast<long long>(std::llround(v));
    if (v != static_cast<double>(n)) {
      auto it = raw_.find(key);
      throw ValidationError(origin_ + ":" + std::to_string(it->second.line) + ": field " + key +
                            " must be an integer");
    }
    return n;
  }
  bool boolean(const std::string& key, bool dflt) {
    std::string v = str(key, dflt ? "true" : "false");
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    auto it = raw_.find(key);
    throw ValidationError(origin_ + ":" + std::to_string(it == raw_.end() ? 0 : it->second.line) +
                          ": field " + key + " must be a boolean");
  }
  std::vector<double> num_list(const std::string& key, const std::vector<double>& dflt) {
    auto it = raw_.find(key);
    if (it == raw_.end()) return dflt;
    it->second.used = true;
    std::vector<double> out;
    std::istringstream is(it->second.value);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ValidationError(origin_ + ":" + std::to_string(it->second.line) + ": field " + key +
                              " has a non-numeric entry '" + tok + "'");
      }
    }
    return out;
  }
  void reject_unused() const {
    for (const auto& [key, entry] : raw_)
      if (!entry.used)
        throw ValidationError(origin_ + ":" + std::to_string(entry.line) + ": unknown field " +
                              key);
  }

 private:
  RawMap& raw_;
  std::string origin_;
};

void semantic_checks(const ExperimentManifest& m, const std::string& origin) {
  static const char* kinds[] = {"simulate", "limit", "converge", "resonance-scan", "certify",
                                "propcheck"};
  bool ok = false;
  for (const char* k : kinds) ok = ok || m.kind == k;
  if (!ok) throw ValidationError(origin + ": unknown kind '" + m.kind + "'");
  m.torus.validate();
  if (!(m.run.nu > 0)) throw ValidationError(origin + ": field physics.nu must be positive");
  if (!(m.run.nu_prime > 0))
    throw ValidationError(origin + ": field physics.nu_prime must be positive");
  if (!(m.run.epsilon > 0))
    throw ValidationError(origin + ": field physics.epsilon must be positive");
  if (m.workers < 1) throw ValidationError(origin + ": run.workers must be >= 1");
  if (m.kind == "simulate" || m.kind == "limit" || m.kind == "converge")
    m.run.validate(m.torus);
  if (m.resonance_mode != "floating" && m.resonance_mode != "exact")
    throw ValidationError(origin + ": resonance.mode must be floating or exact");
  for (double e : m.epsilon_list)
    if (!(e > 0)) throw ValidationError(origin + ": converge.epsilon_list entries must be > 0");
}

}  // namespace

ExperimentManifest parse_manifest_text(const std::string& text, const std::string& origin) {
  RawMap raw = tokenize(text, origin);
  Reader r(raw, origin);
  ExperimentManifest m;
  m.kind = r.str("kind", m.kind);

  m.torus.a1 = r.num("torus.a1", m.torus.a1);
  m.torus.a2 = r.num("torus.a2", m.torus.a2);
  m.torus.a3 = r.num("torus.a3", m.torus.a3);
  m.torus.N1 = static_cast<int>(r.integer("torus.N1", m.torus.N1));
  m.torus.N2 = static_cast<int>(r.integer("torus.N2", m.torus.N2));
  m.torus.N3 = static_cast<int>(r.integer("torus.N3", m.torus.N3));

  m.run.epsilon = r.num("physics.epsilon", m.run.epsilon);
  m.run.nu = r.num("physics.nu", m.run.nu);
  m.run.nu_prime = r.num("physics.nu_prime", m.run.nu_prime);

  m.run.dt = r.num("time.dt", m.run.dt);
  m.run.T = r.num("time.T", m.run.T);

  m.run.dealias = r.boolean("run.dealias", m.run.dealias);
  m.run.s = r.num("run.s", m.run.s);
  m.run.seed = static_cast<std::uint64_t>(r.integer("run.seed", static_cast<long long>(m.run.seed)));
  m.run.blowup_guard = r.num("run.blowup_guard", m.run.blowup_guard);
  m.run.linearized = r.boolean("run.linearized", m.run.linearized);
  m.workers = static_cast<int>(r.integer("run.workers", m.workers));
  m.snapshot_every = static_cast<int>(r.integer("run.snapshot_every", m.snapshot_every));

  m.initial.kind = r.str("initial.recipe", m.initial.kind);
  m.initial.amplitude = r.num("initial.amplitude", m.initial.amplitude);
  m.initial.layers = static_cast<int>(r.integer("initial.layers", m.initial.layers));
  m.initial.modes = static_cast<int>(r.integer("initial.modes", m.initial.modes));
  m.initial.path = r.str("initial.path", m.initial.path);
  m.initial.s = m.run.s;
  m.initial.seed = m.run.seed;

  m.resonance_N = static_cast<int>(r.integer("resonance.N", m.resonance_N));
  m.resonance_tolerance = r.num("resonance.tolerance", m.resonance_tolerance);
  m.resonance_mode = r.str("resonance.mode", m.resonance_mode);
  m.rational_squares.a1_num = r.integer("resonance.a1_sq_num", m.rational_squares.a1_num);
  m.rational_squares.a1_den = r.integer("resonance.a1_sq_den", m.rational_squares.a1_den);
  m.rational_squares.a2_num = r.integer("resonance.a2_sq_num", m.rational_squares.a2_num);
  m.rational_squares.a2_den = r.integer("resonance.a2_sq_den", m.rational_squares.a2_den);
  m.rational_squares.a3_num = r.integer("resonance.a3_sq_num", m.rational_squares.a3_num);
  m.rational_squares.a3_den = r.integer("resonance.a3_sq_den", m.rational_squares.a3_den);

  m.epsilon_list = r.num_list("converge.epsilon_list", m.epsilon_list);

  std::vector<double> ns;
  for (int n : m.corrector_N_list) ns.push_back(n);
  ns = r.num_list("corrector.N_list", ns);
  m.corrector_N_list.clear();
  for (double v : ns) m.corrector_N_list.push_back(static_cast<int>(std::llround(v)));
  m.corrector_divisor_floor = r.num("corrector.divisor_floor", m.corrector_divisor_floor);
  m.corrector_stride = static_cast<int>(r.integer("corrector.stride", m.corrector_stride));

  m.propcheck_trials = static_cast<int>(r.integer("propcheck.trials", m.propcheck_trials));

  r.reject_unused();
  semantic_checks(m, origin);
  return m;
}

ExperimentManifest parse_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open manifest " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_manifest_text(ss.str(), path);
}

std::string echo_manifest(const ExperimentManifest& m) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "kind = " << m.kind << "\n\n";
  os << "[torus]\n";
  os << "a1 = " << num(m.torus.a1) << "\na2 = " << num(m.torus.a2) << "\na3 = " << num(m.torus.a3)
     << "\n";
  os << "N1 = " << m.torus.N1 << "\nN2 = " << m.torus.N2 << "\nN3 = " << m.torus.N3 << "\n\n";
  os << "[physics]\n";
  os << "epsilon = " << num(m.run.epsilon) << "\nnu = " << num(m.run.nu)
     << "\nnu_prime = " << num(m.run.nu_prime) << "\n\n";
  os << "[time]\n";
  os << "dt = " << num(m.run.dt) << "\nT = " << num(m.run.T) << "\n\n";
  os << "[run]\n";
  os << "dealias = " << (m.run.dealias ? "true" : "false") << "\n";
  os << "s = " << num(m.run.s) << "\n";
  os << "seed = " << m.run.seed << "\n";
  os << "blowup_guard = " << num(m.run.blowup_guard) << "\n";
  os << "linearized = " << (m.run.linearized ? "true" : "false") << "\n";
  os << "workers = " << m.workers << "\n";
  os << "snapshot_every = " << m.snapshot_every << "\n\n";
  os << "[initial]\n";
  os << "recipe = " << m.initial.kind << "\n";
  os << "amplitude = " << num(m.initial.amplitude) << "\n";
  os << "layers = " << m.initial.layers << "\n";
  os << "modes = " << m.initial.modes << "\n";
  os << "path = " << m.initial.path << "\n\n";
  os << "[resonance]\n";
  os << "N = " << m.resonance_N << "\n";
  os << "tolerance = " << num(m.resonance_tolerance) << "\n";
  os << "mode = " << m.resonance_mode << "\n";
  os << "a1_sq_num = " << m.rational_squares.a1_num << "\n";
  os << "a1_sq_den = " << m.rational_squares.a1_den << "\n";
  os << "a2_sq_num = " << m.rational_squares.a2_num << "\n";
  os << "a2_sq_den = " << m.rational_squares.a2_den << "\n";
  os << "a3_sq_num = " << m.rational_squares.a3_num << "\n";
  os << "a3_sq_den = " << m.rational_squares.a3_den << "\n\n";
  os << "[converge]\n";
  os << "epsilon_list = ";
  for (std::size_t i = 0; i < m.epsilon_list.size(); ++i)
    os << (i ? "," : "") << num(m.epsilon_list[i]);
  os << "\n\n";
  os << "[corrector]\n";
  os << "N_list = ";
  for (std::size_t i = 0; i < m.corrector_N_list.size(); ++i)
    os << (i ? "," : "") << m.corrector_N_list[i];
  os << "\n";
  os << "divisor_floor = " << num(m.corrector_divisor_floor) << "\n";
  os << "stride = " << m.corrector_stride << "\n\n";
  os << "[propcheck]\n";
  os << "trials = " << m.propcheck_trials << "\n";
  return os.str();
}

}  // namespace stratoflow
