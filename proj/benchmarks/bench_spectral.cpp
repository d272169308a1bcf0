#include <benchmark/benchmark.h>

#include "stratoflow/norms.hpp"
#include "stratoflow/operators.hpp"
#include "stratoflow/rng.hpp"
#include "stratoflow/transforms.hpp"
#include "stratoflow/wave_basis.hpp"

using namespace stratoflow;

namespace {

TorusSpec torus(int N) { return {1.0, 1.0, 1.0, N, N, N / 2}; }

SpectralField random_solenoidal(const TorusSpec& t, std::uint64_t seed) {
  Rng rng(seed, "bench");
  SpectralField f(t);
  for (int c = 0; c < 4; ++c)
    for_each_mode(t, [&](Idx3 n) {
      if (n.is_zero() || t.on_nyquist(n)) return;
      f.at(c, n) = cplx(rng.normal(), rng.normal()) / (1.0 + t.check(n).norm2());
    });
  f.enforce_hermitian();
  return leray_project(f);
}

}  // namespace

static void BM_TransformRoundtrip(benchmark::State& state) {
  TorusSpec t = torus(static_cast<int>(state.range(0)));
  Workspace ws(t);
  SpectralField f = random_solenoidal(t, 1);
  SpectralScalar s(t);
  for_each_mode(t, [&](Idx3 n) { s.at(n) = f.at(0, n); });
  for (auto _ : state) {
    SpectralScalar r = ws.to_spectral(ws.to_physical(s));
    benchmark::DoNotOptimize(r.raw().data());
  }
}
BENCHMARK(BM_TransformRoundtrip)->Arg(16)->Arg(32);

static void BM_Advect(benchmark::State& state) {
  TorusSpec t = torus(static_cast<int>(state.range(0)));
  Workspace ws(t);
  SpectralField f = random_solenoidal(t, 2);
  for (auto _ : state) {
    SpectralField g = ws.advect(f, f, true);
    benchmark::DoNotOptimize(g.raw().data());
  }
}
BENCHMARK(BM_Advect)->Arg(16)->Arg(32);

static void BM_LerayProject(benchmark::State& state) {
  TorusSpec t = torus(static_cast<int>(state.range(0)));
  SpectralField f = random_solenoidal(t, 3);
  for (auto _ : state) {
    SpectralField g = leray_project(f);
    benchmark::DoNotOptimize(g.raw().data());
  }
}
BENCHMARK(BM_LerayProject)->Arg(16)->Arg(32);

static void BM_FrameBuild(benchmark::State& state) {
  TorusSpec t = torus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    WaveFrame frame(t);
    benchmark::DoNotOptimize(&frame);
  }
}
BENCHMARK(BM_FrameBuild)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
