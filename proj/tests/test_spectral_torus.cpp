#include <cmath>

#include "doctest.h"
#include "stratoflow/dyadic.hpp"
#include "stratoflow/harmonic.hpp"
#include "stratoflow/norms.hpp"
#include "stratoflow/operators.hpp"
#include "stratoflow/transforms.hpp"
#include "test_util.hpp"

using namespace stratoflow;
using namespace stratoflow::testutil;

namespace {
const TorusSpec kUnit{1.0, 1.0, 1.0, 8, 8, 8};
const TorusSpec kAniso{1.3, 0.7, 1.9, 8, 8, 8};
}  // namespace

TEST_CASE("leray projector symbol at a single mode") {
  SpectralField f(kUnit);
  set_mode(f, 0, {1, 1, 0}, 1.0);
  SpectralField p = leray_project(f);
  CHECK(std::abs(p.at(0, {1, 1, 0}) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(p.at(1, {1, 1, 0}) - cplx(-0.5)) < 1e-15);
  CHECK(std::abs(p.at(2, {1, 1, 0})) < 1e-15);
  CHECK(std::abs(p.at(3, {1, 1, 0})) < 1e-15);
}

TEST_CASE("leray projector is idempotent, self-adjoint, kills divergence") {
  Rng rng(42, "leray");
  SpectralField f = random_field(kAniso, rng);
  SpectralField p = leray_project(f);
  SpectralField pp = leray_project(p);
  CHECK(max_coeff_diff(p, pp) < 1e-14);
  CHECK(p.hermitian_defect() < 1e-14);

  // solenoidal input unchanged
  CHECK(max_coeff_diff(p, leray_project(p)) < 1e-14);

  // divergence of the projection vanishes
  SpectralScalar d = divergence(p);
  double worst = 0;
  for (const cplx& v : d.raw()) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-13);

  // self-adjointness in the coefficient inner product
  SpectralField g = random_field(kAniso, rng);
  cplx lhs = 0, rhs = 0;
  for_each_mode(kAniso, [&](Idx3 n) {
    lhs += cdot(leray_project(f).coeff(n), g.coeff(n));
    rhs += cdot(f.coeff(n), leray_project(g).coeff(n));
  });
  CHECK(std::abs(lhs - rhs) < 1e-13 * f.l2() * g.l2());
}

TEST_CASE("divergence of a single mode and of a gradient field") {
  SpectralField f(kUnit);
  f.at(0, {1, 0, 0}) = 1.0;
  SpectralScalar d = divergence(f);
  CHECK(std::abs(d.at({1, 0, 0}) - cplx(0, 1)) < 1e-15);

  // v = grad phi  =>  div v = -|nch|^2 phi
  Rng rng(7, "gradfield");
  SpectralScalar phi = random_scalar(kAniso, rng);
  SpectralScalar d1, d2, d3;
  gradient(phi, d1, d2, d3);
  SpectralField grad(kAniso);
  for_each_mode(kAniso, [&](Idx3 n) {
    grad.at(0, n) = d1.at(n);
    grad.at(1, n) = d2.at(n);
    grad.at(2, n) = d3.at(n);
  });
  SpectralScalar div = divergence(grad);
  double worst = 0;
  for_each_mode(kAniso, [&](Idx3 n) {
    cplx expect = -kAniso.check(n).norm2() * phi.at(n);
    worst = std::max(worst, std::abs(div.at(n) - expect));
  });
  CHECK(worst < 1e-13);
}

TEST_CASE("biot-savart inverts curl_h and respects the multiplier") {
  SpectralScalar omega(kUnit);
  set_mode(omega, {1, 0, 0}, 1.0);
  SpectralField u = biot_savart(omega);
  // uextasciicircum h = i (nch_2, -nch_1) / |nch_h|^2 * omega
  CHECK(std::abs(u.at(0, {1, 0, 0})) < 1e-15);
  CHECK(std::abs(u.at(1, {1, 0, 0}) - cplx(0, -1)) < 1e-15);

  Rng rng(3, "bs");
  SpectralScalar w = random_scalar(kAniso, rng, 1.0, /*zero_h_avg=*/true);
  SpectralScalar back = curl_h(biot_savart(w));
  double worst = 0;
  for_each_mode(kAniso, [&](Idx3 n) { worst = std::max(worst, std::abs(back.at(n) - w.at(n))); });
  CHECK(worst < 1e-13 * std::max(1.0, w.l2()));
}

TEST_CASE("horizontal laplacian on an n_h = 0 mode and inverse domain error") {
  SpectralScalar f(kUnit);
  set_mode(f, {0, 0, 2}, 1.0);
  SpectralScalar lap = horizontal_laplacian(f);
  CHECK(std::abs(lap.at({0, 0, 2})) < 1e-16);
  CHECK_THROWS_AS((void)inverse_horizontal_laplacian(f), DomainError);
  CHECK_THROWS_AS((void)inverse_horizontal_sqrt_laplacian(f), DomainError);
}

TEST_CASE("transform round trip and spectral products") {
  Workspace ws(kAniso);
  Rng rng(11, "fft");
  SpectralField f = random_field(kAniso, rng);
  SpectralField back(kAniso);
  for (int c = 0; c < 4; ++c) {
    SpectralScalar s(kAniso);
    for_each_mode(kAniso, [&](Idx3 n) { s.at(n) = f.at(c, n); });
    SpectralScalar r = ws.to_spectral(ws.to_physical(s));
    for_each_mode(kAniso, [&](Idx3 n) { back.at(c, n) = r.at(n); });
  }
  CHECK(max_coeff_diff(f, back) < 1e-13 * std::max(1.0, f.l2()));

  // product of single modes: e^{i k.x} e^{i m.x} = e^{i (k+m).x}
  Workspace wu(kUnit);
  SpectralScalar a(kUnit), b(kUnit);
  set_mode(a, {1, 0, 0}, 1.0);
  set_mode(b, {0, 1, 1}, 1.0);
  SpectralScalar prod = wu.product(a, b, false);
  CHECK(std::abs(prod.at({1, 1, 1}) - cplx(1.0)) < 1e-14);
  CHECK(std::abs(prod.at({1, -1, -1}) - cplx(1.0)) < 1e-14);  // conjugate partners
  CHECK(std::abs(prod.at({1, 1, 0})) < 1e-14);

  // dealiased product with k+m outside the 2/3 band vanishes
  SpectralScalar c(kUnit), d(kUnit);
  set_mode(c, {2, 0, 0}, 1.0);
  set_mode(d, {1, 0, 0}, 1.0);
  SpectralScalar pd = wu.product(c, d, true);  // 2+1 = 3 > 8/3 limit = 2
  CHECK(std::abs(pd.at({3, 0, 0})) < 1e-15);
  double out_of_band = 0;
  for_each_mode(kUnit, [&](Idx3 n) {
    if (!kUnit.in_dealias_band(n)) out_of_band = std::max(out_of_band, std::abs(pd.at(n)));
  });
  CHECK(out_of_band < 1e-15);
  // the difference mode k - m survives inside the band
  CHECK(std::abs(pd.at({1, 0, 0}) - cplx(1.0)) < 1e-14);
}

TEST_CASE("sobolev norms: single mode, zero field, Plancherel") {
  SpectralField f(kUnit);
  f.at(3, {1, 0, 0}) = 1.0;  // |nch| = 1, |u| = 1
  for (double s : {0.0, 0.7, 1.0, 2.0}) {
    CHECK(sobolev_norm(f, s) == doctest::Approx(std::pow(2.0, s / 2)).epsilon(1e-14));
  }
  CHECK(sobolev_norm(SpectralField(kUnit), 1.3) == 0.0);
  CHECK(aniso_sobolev_norm(f, 0.7, 0.0) ==
        doctest::Approx(std::pow(2.0, 0.7 / 2)).epsilon(1e-14));

  Workspace ws(kAniso);
  Rng rng(5, "plancherel");
  SpectralField g = random_field(kAniso, rng);
  CHECK(sobolev_norm(g, 0.0) == doctest::Approx(lp_norm(ws, g, 2.0)).epsilon(1e-10));
}

TEST_CASE("anisotropic lebesgue norms: constant, separable, p=q=2") {
  Workspace ws(kUnit);
  SpectralField one(kUnit);
  one.at(0, {0, 0, 0}) = 1.0;  // constant-1 first component
  for (double p : {1.0, 2.0, 4.0, kInfinity}) {
    CHECK(aniso_lebesgue_norm(ws, one, p, p, MixedOrder::HV) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(aniso_lebesgue_norm(ws, one, p, p, MixedOrder::VH) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // separable f(x_h) g(x3): mixed norm factorizes
  SpectralField sep(kUnit);
  // f = cos(x1) (horizontal), g = cos(x3) (vertical): product via coefficients
  // cos(x1)cos(x3) = 1/4 (e^{i(x1+x3)} + e^{i(x1-x3)} + cc)
  set_mode(sep, 0, {1, 0, 1}, 0.25);
  set_mode(sep, 0, {1, 0, -1}, 0.25);
  double p = 4.0, q = 2.0;
  double full = aniso_lebesgue_norm(ws, sep, p, q, MixedOrder::HV);
  // 1D factors: mean-measure L^4 of cos over a period, L^2 of cos
  double l4cos = std::pow(3.0 / 8.0, 0.25);  // (mean cos^4)^{1/4}
  double l2cos = std::sqrt(0.5);
  CHECK(full == doctest::Approx(l4cos * l2cos).epsilon(1e-10));

  Rng rng(9, "pq2");
  SpectralField g2 = random_field(kUnit, rng);
  CHECK(aniso_lebesgue_norm(ws, g2, 2.0, 2.0, MixedOrder::HV) ==
        doctest::Approx(sobolev_norm(g2, 0.0)).epsilon(1e-10));
  CHECK(aniso_lebesgue_norm(ws, g2, 2.0, 2.0, MixedOrder::VH) ==
        doctest::Approx(sobolev_norm(g2, 0.0)).epsilon(1e-10));
}

TEST_CASE("L^p_v(H^sigma_h) agrees with L^2 when p = 2, sigma = 0") {
  Workspace ws(kAniso);
  Rng rng(13, "lpv");
  SpectralField f = random_field(kAniso, rng);
  CHECK(lpv_hsigma_norm(ws, f, 2.0, 0.0) == doctest::Approx(sobolev_norm(f, 0.0)).epsilon(1e-10));
}

TEST_CASE("dyadic blocks: partition of unity, support, Nyquist") {
  CHECK(partition_of_unity_defect(64.0, 4096) < 1e-12);

  // a mode with |nch| = 2^q is retained in block q with weight phi(1) > 0
  SpectralField f(kUnit);
  set_mode(f, 0, {2, 0, 0}, 1.0);  // |nch| = 2 = 2^1
  SpectralField b1 = dyadic_block(f, 1);
  CHECK(std::abs(b1.at(0, {2, 0, 0}) - cplx(lp_phi(1.0))) < 1e-15);
  CHECK(lp_phi(1.0) > 0.05);

  // resummation on a random field
  Rng rng(21, "dyadic");
  SpectralField g = random_field(kAniso, rng);
  for (DyadicAxis axis : {DyadicAxis::Isotropic, DyadicAxis::Horizontal}) {
    SpectralField sum(kAniso);
    for (int q = -1; q <= max_dyadic_index(kAniso) + 2; ++q) sum += dyadic_block(g, q, axis);
    CHECK(max_coeff_diff(sum, g) < 1e-12 * std::max(1.0, g.l2()));
  }

  // block far above the grid Nyquist is empty
  SpectralField hi = dyadic_block(g, 12);
  CHECK(hi.l2() == 0.0);
}

TEST_CASE("poincare constant values and brute-force inequality") {
  CHECK(poincare_constant_h(kUnit) == 1.0);
  TorusSpec t21{2.0, 1.0, 1.0, 8, 8, 8};
  CHECK(poincare_constant_h(t21) == doctest::Approx(0.25));

  Rng rng(17, "poincare");
  double c = poincare_constant_h(kAniso);
  for (int i = 0; i < 50; ++i) {
    SpectralScalar f = random_scalar(kAniso, rng, 0.8, /*zero_h_avg=*/true);
    double grad2 = 0, mass = 0;
    for_each_mode(kAniso, [&](Idx3 n) {
      grad2 += kAniso.check(n).h_norm2() * std::norm(f.at(n));
      mass += std::norm(f.at(n));
    });
    CHECK(grad2 >= c * mass * (1.0 - 1e-12));
  }
}

TEST_CASE("harmonic property suite passes on a small torus") {
  HarmonicSuiteConfig cfg;
  cfg.trials = 24;
  cfg.seed = 99;
  HarmonicReport rep = property_suite_harmonic(kUnit, cfg);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": fitted=", c.fitted_constant, " note=", c.note);
    CHECK(c.pass);
  }

  // single-mode Bernstein with equality up to the multiplier value:
  // |grad| of e^{i nch.x} scales exactly by |nch|
  SpectralScalar u(kUnit);
  set_mode(u, {0, 2, 0}, 1.0);
  Workspace ws(kUnit);
  SpectralScalar du(kUnit);
  for_each_mode(kUnit, [&](Idx3 n) { du.at(n) = kUnit.check(n).norm() * u.at(n); });
  CHECK(lp_norm(ws, du, 2.0) == doctest::Approx(2.0 * lp_norm(ws, u, 2.0)).epsilon(1e-13));
}

TEST_CASE("hermitian symmetry is preserved by module operations") {
  Rng rng(31, "herm");
  SpectralField f = random_field(kAniso, rng);
  CHECK(leray_project(f).hermitian_defect() < 1e-14);
  CHECK(dyadic_block(f, 1).hermitian_defect() < 1e-14);
  Workspace ws(kAniso);
  SpectralField adv = ws.advect(leray_project(f), leray_project(f), true);
  CHECK(adv.hermitian_defect() < 1e-12 * std::max(1.0, adv.l2()));
}
