#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stratoflow/errors.hpp"
#include "stratoflow/manifest.hpp"
#include "stratoflow/wave_basis.hpp"

namespace {

int dump_frame(const stratoflow::TorusSpec& torus, const std::string& spec) {
  int n1 = 0, n2 = 0, n3 = 0;
  if (std::sscanf(spec.c_str(), "%d,%d,%d", &n1, &n2, &n3) != 3) {
    std::fprintf(stderr, "--dump-frame expects n1,n2,n3\n");
    return 2;
  }
  stratoflow::FrameEntry fe = stratoflow::build_frame(torus, {n1, n2, n3});
  nlohmann::json j;
  j["n"] = {n1, n2, n3};
  j["degenerate"] = fe.degenerate;
  j["omega"] = fe.omega;
  auto vec = [](const stratoflow::C4& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : v) out.push_back({c.real(), c.imag()});
    return out;
  };
  if (!fe.degenerate) {
    j["e0"] = vec(fe.e0);
    j["e_plus"] = vec(fe.ep);
    j["e_minus"] = vec(fe.em);
  }
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratoflow: a pseudospectral laboratory for strongly stratified Boussinesq flow"};
  app.require_subcommand(1);

  std::string manifest_path, out_dir = "stratoflow-out", frame_spec;
  int workers = 0;

  const char* kinds[] = {"simulate", "limit", "converge", "resonance-scan", "certify",
                         "propcheck"};
  std::string selected;
  for (const char* kind : kinds) {
    CLI::App* sub = app.add_subcommand(kind, std::string("run a ") + kind + " experiment");
    sub->add_option("--manifest", manifest_path, "experiment manifest file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "worker count (>= 1)");
    sub->add_option("--dump-frame", frame_spec, "print the eigenframe at n1,n2,n3 and exit");
    sub->callback([kind, &selected] { selected = kind; });
  }
  std::string summarize_dir;
  CLI::App* sum = app.add_subcommand("summarize", "report over a produced output directory");
  sum->add_option("dir", summarize_dir, "output directory")->required();
  sum->callback([&selected] { selected = "summarize"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (selected == "summarize") {
      std::printf("%s", stratoflow::summarize(summarize_dir).c_str());
      return 0;
    }
    stratoflow::ExperimentManifest m = stratoflow::parse_manifest(manifest_path);
    if (m.kind != selected) {
      if (m.kind != "simulate") {
        std::fprintf(stderr, "manifest kind '%s' does not match subcommand '%s'\n",
                     m.kind.c_str(), selected.c_str());
        return 2;
      }
      m.kind = selected;
    }
    if (workers > 0) m.workers = workers;
    if (m.workers < 1) {
      std::fprintf(stderr, "--workers must be >= 1\n");
      return 2;
    }
    if (!frame_spec.empty()) return dump_frame(m.torus, frame_spec);
    return stratoflow::run_experiment(m, out_dir);
  } catch (const stratoflow::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
