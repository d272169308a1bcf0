#include "stratoflow/norms.hpp"

#include <cmath>
#include <vector>

namespace stratoflow {

namespace {

double weighted_coeff_norm(const SpectralField& f, auto&& weight) {
  double s = 0;
  for_each_mode(f.torus(), [&](Idx3 n) { s += weight(n) * cnorm2(f.coeff(n)); });
  return std::sqrt(s);
}

// |f|(x) over the grid; 4-component fields use the pointwise euclidean norm
std::vector<double> magnitude_grid(Workspace& ws, const SpectralField& f) {
  const TorusSpec& t = f.torus();
  std::vector<double> m(static_cast<std::size_t>(t.N1) * t.N2 * t.N3, 0.0);
  for (int c = 0; c < 4; ++c) {
    PhysicalScalar g = ws.component_to_physical(f, c);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += g.v[i] * g.v[i];
  }
  for (double& v : m) v = std::sqrt(v);
  return m;
}

double reduce_lp(const std::vector<double>& vals, double p) {
  if (p >= kInfinity) {
    double mx = 0;
    for (double v : vals) mx = std::max(mx, std::abs(v));
    return mx;
  }
  double s = 0;
  for (double v : vals) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(vals.size()), 1.0 / p);
}

double mixed_norm(const TorusSpec& t, const std::vector<double>& m, double p, double q,
                  MixedOrder order) {
  const std::size_t nh = static_cast<std::size_t>(t.N1) * t.N2;
  if (order == MixedOrder::HV) {
    // inner vertical L^q per horizontal point, outer horizontal L^p
    std::vector<double> inner(nh, 0.0);
    for (std::size_t ih = 0; ih < nh; ++ih) {
      std::vector<double> column(t.N3);
      for (int i3 = 0; i3 < t.N3; ++i3) column[i3] = m[static_cast<std::size_t>(i3) * nh + ih];
      inner[ih] = reduce_lp(column, q);
    }
    return reduce_lp(inner, p);
  }
  // VH: inner horizontal L^p per layer, outer vertical L^q
  std::vector<double> inner(t.N3, 0.0);
  for (int i3 = 0; i3 < t.N3; ++i3) {
    std::vector<double> layer(m.begin() + static_cast<std::size_t>(i3) * nh,
                              m.begin() + static_cast<std::size_t>(i3 + 1) * nh);
    inner[i3] = reduce_lp(layer, p);
  }
  return reduce_lp(inner, q);
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  return weighted_coeff_norm(
      f, [&](Idx3 n) { return std::pow(1.0 + f.torus().check(n).norm2(), s); });
}

double sobolev_norm(const SpectralScalar& f, double s) {
  double acc = 0;
  for_each_mode(f.torus(), [&](Idx3 n) {
    acc += std::pow(1.0 + f.torus().check(n).norm2(), s) * std::norm(f.at(n));
  });
  return std::sqrt(acc);
}

double aniso_sobolev_norm(const SpectralField& f, double s, double sp) {
  return weighted_coeff_norm(f, [&](Idx3 n) {
    Vec3 ck = f.torus().check(n);
    return std::pow(1.0 + ck.h_norm2(), s) * std::pow(1.0 + ck.x3 * ck.x3, sp);
  });
}

double grad_sobolev_norm(const SpectralField& f, double s) {
  return weighted_coeff_norm(f, [&](Idx3 n) {
    double k2 = f.torus().check(n).norm2();
    return k2 * std::pow(1.0 + k2, s);
  });
}

double grad_sobolev_norm(const SpectralScalar& f, double s) {
  double acc = 0;
  for_each_mode(f.torus(), [&](Idx3 n) {
    double k2 = f.torus().check(n).norm2();
    acc += k2 * std::pow(1.0 + k2, s) * std::norm(f.at(n));
  });
  return std::sqrt(acc);
}

double lp_norm(Workspace& ws, const SpectralField& f, double p) {
  return reduce_lp(magnitude_grid(ws, f), p);
}

double lp_norm(Workspace& ws, const SpectralScalar& f, double p) {
  PhysicalScalar g = ws.to_physical(f);
  return reduce_lp(g.v, p);
}

double aniso_lebesgue_norm(Workspace& ws, const SpectralField& f, double p, double q,
                           MixedOrder order) {
  return mixed_norm(f.torus(), magnitude_grid(ws, f), p, q, order);
}

double aniso_lebesgue_norm(Workspace& ws, const SpectralScalar& f, double p, double q,
                           MixedOrder order) {
  PhysicalScalar g = ws.to_physical(f);
  std::vector<double> m(g.v.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(g.v[i]);
  return mixed_norm(f.torus(), m, p, q, order);
}

double lpv_hsigma_norm(Workspace& ws, const SpectralField& f, double p, double sigma) {
  const TorusSpec& t = f.torus();
  // per-layer horizontal coefficients by partial synthesis over n3
  std::vector<double> layer_norm(t.N3, 0.0);
  for (int i3 = 0; i3 < t.N3; ++i3) {
    double x3_phase = 2.0 * M_PI * i3 / t.N3;  // nch_3 x_3 = 2 pi n3 i3 / N3
    double acc = 0;
    for (int n2 = -t.half(1); n2 <= t.half(1); ++n2)
      for (int n1 = -t.half(0); n1 <= t.half(0); ++n1) {
        C4 uh{};
        for (int n3 = -t.half(2); n3 <= t.half(2); ++n3) {
          cplx ph = std::polar(1.0, x3_phase * n3);
          C4 c = f.coeff({n1, n2, n3});
          for (int k = 0; k < 4; ++k) uh[k] += ph * c[k];
        }
        Vec3 ck = t.check({n1, n2, 0});
        acc += std::pow(1.0 + ck.h_norm2(), sigma) * cnorm2(uh);
      }
    layer_norm[i3] = std::sqrt(acc);
  }
  (void)ws;
  std::vector<double> vals(layer_norm.begin(), layer_norm.end());
  if (p >= kInfinity) {
    double mx = 0;
    for (double v : vals) mx = std::max(mx, v);
    return mx;
  }
  double s = 0;
  for (double v : vals) s += std::pow(v, p);
  return std::pow(s / static_cast<double>(vals.size()), 1.0 / p);
}

double lpv_l2h_norm(Workspace& ws, const SpectralField& f, double p) {
  return lpv_hsigma_norm(ws, f, p, 0.0);
}

}  // namespace stratoflow
