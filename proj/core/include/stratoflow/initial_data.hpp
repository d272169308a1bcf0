#pragma once

#include <string>

#include "stratoflow/rng.hpp"
#include "stratoflow/wave_basis.hpp"

namespace stratoflow {

// named analytic initial-data recipes; every output has zero global average,
// zero horizontal average, divergence-free velocity
struct RecipeParams {
  std::string kind = "random_solenoidal";  // | kernel_vortex | osc_pack | snapshot
  double s = 1.0;
  double amplitude = 1.0;
  int layers = 2;    // kernel_vortex: vertical modes
  int modes = 6;     // osc_pack: number of excited e^+- modes
  std::uint64_t seed = 1;
  std::string path;  // snapshot

  bool operator==(const RecipeParams&) const = default;
};

SpectralField make_initial_data(const RecipeParams& p, const TorusSpec& t);

// H^s-normalized random divergence-free field with zero horizontal average,
// supported in the dealias band
SpectralField make_random_solenoidal(const TorusSpec& t, double s, double amplitude, Rng rng);

// kernel-type field (ubar, 0, 0) built from a random stream function over
// `layers` vertical modes; project_osc of it vanishes
SpectralField make_kernel_vortex(const TorusSpec& t, int layers, double amplitude, Rng rng);

// field supported on e^+- modes only; project_bar of it vanishes
SpectralField make_osc_pack(const TorusSpec& t, int modes, double s, double amplitude, Rng rng);

}  // namespace stratoflow
