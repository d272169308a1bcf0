#include "stratoflow/initial_data.hpp"

#include <cmath>

#include "stratoflow/errors.hpp"
#include "stratoflow/norms.hpp"
#include "stratoflow/operators.hpp"
#include "stratoflow/snapshot.hpp"

namespace stratoflow {

namespace {

bool seedable(const TorusSpec& t, Idx3 n) {
  return !n.is_zero() && !n.horizontal_zero() && !t.on_nyquist(n) && t.in_dealias_band(n);
}

void normalize_hs(SpectralField& f, double s, double amplitude) {
  double norm = sobolev_norm(f, s);
  if (norm == 0.0) throw RecipeError("initial data recipe produced the zero field");
  f *= amplitude / norm;
}

}  // namespace

SpectralField make_random_solenoidal(const TorusSpec& t, double s, double amplitude, Rng rng) {
  SpectralField f(t);
  for (int c = 0; c < 4; ++c)
    for_each_mode(t, [&](Idx3 n) {
      if (!seedable(t, n)) return;
      double w = std::pow(1.0 + t.check(n).norm2(), -(s + 1.0) / 2.0);
      f.at(c, n) = w * cplx(rng.normal(), rng.normal());
    });
  f.enforce_hermitian();
  f = leray_project(f);
  f.zero_horizontal_average();
  f.enforce_hermitian();
  normalize_hs(f, s, amplitude);
  return f;
}

SpectralField make_kernel_vortex(const TorusSpec& t, int layers, double amplitude, Rng rng) {
  if (layers < 1 || layers > t.half(2)) throw RecipeError("kernel_vortex: bad layer count");
  // stream function psi(x_h, x3) on low modes; u = grad_h^perp psi
  SpectralScalar psi(t);
  for_each_mode(t, [&](Idx3 n) {
    if (!seedable(t, n)) return;
    if (std::abs(n.n3) > layers || n.sup_norm() > 3) return;
    psi.at(n) = cplx(rng.normal(), rng.normal()) / (1.0 + t.check(n).norm2());
  });
  psi.enforce_hermitian();
  SpectralScalar d1, d2;
  horizontal_gradient_perp(psi, d1, d2);
  SpectralField f(t);
  for_each_mode(t, [&](Idx3 n) {
    f.at(0, n) = d1.at(n);
    f.at(1, n) = d2.at(n);
  });
  f.zero_horizontal_average();
  f.enforce_hermitian();
  normalize_hs(f, 1.0, amplitude);
  return f;
}

SpectralField make_osc_pack(const TorusSpec& t, int modes, double s, double amplitude, Rng rng) {
  if (modes < 1) throw RecipeError("osc_pack: need at least one mode");
  SpectralField f(t);
  int placed = 0;
  for (int attempt = 0; attempt < 1000 && placed < modes; ++attempt) {
    Idx3 n{rng.uniform_int(-t.dealias_limit(0), t.dealias_limit(0)),
           rng.uniform_int(-t.dealias_limit(1), t.dealias_limit(1)),
           rng.uniform_int(-t.dealias_limit(2), t.dealias_limit(2))};
    if (!seedable(t, n)) continue;
    FrameEntry fe = build_frame(t, n);
    C4 add = cplx(rng.normal(), rng.normal()) * fe.ep + cplx(rng.normal(), rng.normal()) * fe.em;
    f.add_coeff(n, add);
    ++placed;
  }
  if (placed == 0) throw RecipeError("osc_pack: could not place modes on this grid");
  f.enforce_hermitian();
  // hermitian averaging keeps span{e+,e-} (conj(e+)(-n) = e-(n)); renormalize
  normalize_hs(f, s, amplitude);
  return f;
}

SpectralField make_initial_data(const RecipeParams& p, const TorusSpec& t) {
  Rng rng(p.seed, "initial-data");
  if (p.kind == "random_solenoidal") return make_random_solenoidal(t, p.s, p.amplitude, rng);
  if (p.kind == "kernel_vortex") return make_kernel_vortex(t, p.layers, p.amplitude, rng);
  if (p.kind == "osc_pack") return make_osc_pack(t, p.modes, p.s, p.amplitude, rng);
  if (p.kind == "snapshot") {
    Snapshot snap = read_snapshot(p.path);
    if (!(snap.field.torus() == t))
      throw RecipeError("snapshot torus/grid does not match the manifest torus");
    return snap.field;
  }
  throw RecipeError("unknown initial-data recipe: " + p.kind);
}

}  // namespace stratoflow
