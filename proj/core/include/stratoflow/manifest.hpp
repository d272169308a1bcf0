#pragma once

#include <string>
#include <vector>

#include "stratoflow/dynamics.hpp"
#include "stratoflow/initial_data.hpp"

namespace stratoflow {

// Flat INI-style manifest: `key = value` lines grouped under [section]
// headers, `#` comments. parse_manifest materializes every default so the
// echoed copy fully determines the run.
struct ExperimentManifest {
  std::string kind = "simulate";  // limit | converge | resonance-scan | certify | propcheck
  TorusSpec torus;
  RunConfig run;
  RecipeParams initial;
  int workers = 1;
  int snapshot_every = 0;  // steps between snapshots; 0 = final only

  // resonance-scan / certify
  int resonance_N = 4;
  double resonance_tolerance = 1e-12;
  std::string resonance_mode = "floating";  // | exact
  RationalSquares rational_squares;

  // converge
  std::vector<double> epsilon_list = {1e-1, 3e-2, 1e-2, 3e-3};

  // corrector diagnostics attached to `limit` runs (empty = off)
  std::vector<int> corrector_N_list;
  double corrector_divisor_floor = 1e-10;
  int corrector_stride = 10;

  // propcheck
  int propcheck_trials = 100;

  bool operator==(const ExperimentManifest&) const = default;
};

ExperimentManifest parse_manifest(const std::string& path);
ExperimentManifest parse_manifest_text(const std::string& text, const std::string& origin);
std::string echo_manifest(const ExperimentManifest& m);

// dispatches the experiment, writes artifacts + echoed manifest +
// summary.json under out_dir; returns the process exit code
// (0 ok, 2 validation, 3 runtime, 4 invariant failure)
int run_experiment(const ExperimentManifest& m, const std::string& out_dir);

// human-readable report over a produced output directory
std::string summarize(const std::string& out_dir);

}  // namespace stratoflow
