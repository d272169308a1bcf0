#include "stratoflow/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "stratoflow/dyadic.hpp"
#include "stratoflow/operators.hpp"
#include "stratoflow/rng.hpp"

namespace stratoflow {

double poincare_constant_h(const TorusSpec& t) {
  return std::min(1.0 / (t.a1 * t.a1), 1.0 / (t.a2 * t.a2));
}

namespace {

SpectralScalar random_scalar(const TorusSpec& t, Rng& rng, double decay,
                             bool zero_horizontal_average) {
  SpectralScalar f(t);
  for_each_mode(t, [&](Idx3 n) {
    if (n.is_zero() || t.on_nyquist(n)) return;
    if (zero_horizontal_average && n.horizontal_zero()) return;
    double w = std::pow(1.0 + t.check(n).norm2(), -decay / 2.0);
    f.at(n) = w * cplx(rng.normal(), rng.normal());
  });
  f.enforce_hermitian();
  return f;
}

SpectralField random_field4(const TorusSpec& t, Rng& rng, double decay,
                            bool zero_horizontal_average) {
  SpectralField f(t);
  for (int c = 0; c < 4; ++c) {
    SpectralScalar s = random_scalar(t, rng, decay, zero_horizontal_average);
    for_each_mode(t, [&](Idx3 n) { f.at(c, n) = s.at(n); });
  }
  f.enforce_hermitian();
  return f;
}

double hgrad_l2(const SpectralScalar& f) {
  double s = 0;
  for_each_mode(f.torus(), [&](Idx3 n) {
    s += f.torus().check(n).h_norm2() * std::norm(f.at(n));
  });
  return std::sqrt(s);
}

double grad_lp(Workspace& ws, const SpectralScalar& f, double p) {
  SpectralScalar d1, d2, d3;
  gradient(f, d1, d2, d3);
  PhysicalScalar g1 = ws.to_physical(d1), g2 = ws.to_physical(d2), g3 = ws.to_physical(d3);
  std::vector<double> m(g1.v.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = std::sqrt(g1.v[i] * g1.v[i] + g2.v[i] * g2.v[i] + g3.v[i] * g3.v[i]);
  if (p >= kInfinity) return *std::max_element(m.begin(), m.end());
  double s = 0;
  for (double v : m) s += std::pow(v, p);
  return std::pow(s / m.size(), 1.0 / p);
}

SpectralScalar half_laplacian_pow(const SpectralScalar& f, double k) {
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    out.at(n) = std::pow(f.torus().check(n).norm(), k) * f.at(n);
  });
  return out;
}

double gn_fitted_constant(const TorusSpec& t, Workspace& ws, Rng rng, int trials) {
  double worst = 0;
  for (int i = 0; i < trials; ++i) {
    SpectralScalar u = random_scalar(t, rng, 1.0, /*zero_horizontal_average=*/true);
    SpectralField u4(t);
    for_each_mode(t, [&](Idx3 n) { u4.at(0, n) = u.at(n); });
    double lhs = aniso_lebesgue_norm(ws, u4, 4.0, 2.0, MixedOrder::VH);  // L^2_v L^4_h
    double l2 = u.l2();
    double dh = hgrad_l2(u);
    if (l2 == 0 || dh == 0) continue;
    worst = std::max(worst, lhs / std::sqrt(l2 * dh));
  }
  return worst;
}

}  // namespace

HarmonicReport property_suite_harmonic(const TorusSpec& t, const HarmonicSuiteConfig& cfg) {
  HarmonicReport rep;
  Workspace ws(t);
  Rng root(cfg.seed, "harmonic-suite");

  // Bernstein: C^-k 2^{qk} ||u||_p <= ||(-Lap)^{k/2} u||_p <= C^k 2^{qk} ||u||_p
  {
    Rng rng = root.stream("bernstein");
    const int k = 1;
    double fitted = 1.0;
    bool ok = true;
    int qmax = max_dyadic_index(t) - 1;
    for (int i = 0; i < cfg.trials; ++i) {
      int q = rng.uniform_int(0, std::max(0, qmax));
      SpectralScalar u = dyadic_block(random_scalar(t, rng, 0.5, false), q);
      for (double p : {2.0, 4.0, kInfinity}) {
        double den = lp_norm(ws, u, p);
        if (den < 1e-14) continue;
        double num = lp_norm(ws, half_laplacian_pow(u, k), p);
        double ratio = num / den / std::exp2(q * k);
        if (!std::isfinite(ratio) || ratio <= 0) ok = false;
        fitted = std::max({fitted, ratio, 1.0 / ratio});
      }
    }
    rep.checks.push_back({"bernstein", ok && fitted < 16.0, fitted,
                          "two-sided shell bound, k=1, p in {2,4,inf}"});
  }

  // Gagliardo-Nirenberg, with a stability probe on a refined grid
  {
    Rng rng = root.stream("gn");
    double c1 = gn_fitted_constant(t, ws, rng.stream("coarse"), cfg.trials);
    TorusSpec t2 = t;
    t2.N1 *= 2;
    t2.N2 *= 2;
    Workspace ws2(t2);
    double c2 = gn_fitted_constant(t2, ws2, rng.stream("fine"), std::max(8, cfg.trials / 4));
    bool ok = std::isfinite(c1) && std::isfinite(c2) && c1 > 0 &&
              std::max(c1, c2) / std::min(c1, c2) < 2.0;
    rep.checks.push_back({"gagliardo_nirenberg", ok, std::max(c1, c2),
                          "L^2_v L^4_h interpolation; grid-stability factor " +
                              std::to_string(std::max(c1, c2) / std::min(c1, c2))});
  }

  // ordering: ||f||_{L^q_v L^p_h} <= ||f||_{L^p_h L^q_v} for p <= q
  {
    Rng rng = root.stream("ordering");
    bool ok = true;
    double worst = 0;
    const double pairs[][2] = {{1, 2}, {2, 4}, {2, kInfinity}, {3, 6}, {1, kInfinity}};
    for (int i = 0; i < cfg.trials; ++i) {
      SpectralField f = random_field4(t, rng, 1.0, false);
      auto [p, q] = pairs[i % 5];
      double lhs = aniso_lebesgue_norm(ws, f, p, q, MixedOrder::VH);
      double rhs = aniso_lebesgue_norm(ws, f, p, q, MixedOrder::HV);
      double r = lhs / rhs;
      worst = std::max(worst, r);
      if (r > 1.0 + 1e-10) ok = false;
    }
    rep.checks.push_back({"lp_lq_ordering", ok, worst, "worst L^q_v L^p_h / L^p_h L^q_v"});
  }

  // horizontal Poincare with the sharp constant
  {
    Rng rng = root.stream("poincare");
    double c = poincare_constant_h(t);
    bool ok = true;
    double worst = 0;
    for (int i = 0; i < cfg.trials; ++i) {
      SpectralScalar f = random_scalar(t, rng, 0.7, true);
      double l2 = f.l2();
      if (l2 == 0) continue;
      double lhs = hgrad_l2(f);
      double r = c * l2 * l2 / (lhs * lhs);
      worst = std::max(worst, r);
      if (r > 1.0 + 1e-12) ok = false;
    }
    rep.checks.push_back({"poincare_h", ok, c, "c = min(1/a1^2, 1/a2^2); worst c||f||^2/||grad_h f||^2 = " +
                                                   std::to_string(worst)});
  }

  // commutator decay ||[Delta_q, u] v||_{L^2} <= C 2^-q ||grad u||_{L^4} ||v||_{L^4}
  if (cfg.run_commutator) {
    Rng rng = root.stream("commutator");
    double fitted = 0;
    bool ok = true;
    int qmax = max_dyadic_index(t) - 1;
    for (int i = 0; i < std::max(10, cfg.trials / 4); ++i) {
      SpectralScalar u = random_scalar(t, rng, 1.5, false);
      SpectralScalar v = random_scalar(t, rng, 1.0, false);
      int q = rng.uniform_int(0, std::max(0, qmax));
      SpectralScalar uv = ws.product(u, v, false);
      SpectralScalar lhs_s = dyadic_block(uv, q);
      SpectralScalar udqv = ws.product(u, dyadic_block(v, q), false);
      for_each_mode(t, [&](Idx3 n) { lhs_s.at(n) -= udqv.at(n); });
      double lhs = lp_norm(ws, lhs_s, 2.0);
      double rhs = grad_lp(ws, u, 4.0) * lp_norm(ws, v, 4.0) / std::exp2(q);
      if (rhs < 1e-14) continue;
      double r = lhs / rhs;
      if (!std::isfinite(r)) ok = false;
      fitted = std::max(fitted, r);
    }
    rep.checks.push_back({"commutator", ok && fitted < 64.0, fitted,
                          "||[Delta_q,u]v||_2 * 2^q / (||grad u||_4 ||v||_4)"});
  }

  return rep;
}

}  // namespace stratoflow
