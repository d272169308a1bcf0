#include "stratoflow/operators.hpp"

#include <cmath>

#include "stratoflow/errors.hpp"

namespace stratoflow {

C4 leray_project_mode(const TorusSpec& t, Idx3 n, const C4& v) {
  if (n.is_zero()) return v;
  Vec3 ck = t.check(n);
  double k2 = ck.norm2();
  cplx kdotv = ck.x1 * v[0] + ck.x2 * v[1] + ck.x3 * v[2];
  cplx s = kdotv / k2;
  return {v[0] - ck.x1 * s, v[1] - ck.x2 * s, v[2] - ck.x3 * s, v[3]};
}

SpectralField leray_project(const SpectralField& f) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    out.set_coeff(n, leray_project_mode(f.torus(), n, f.coeff(n)));
  });
  return out;
}

SpectralScalar divergence(const SpectralField& f) {
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    Vec3 ck = f.torus().check(n);
    out.at(n) = cplx(0, 1) * (ck.x1 * f.at(0, n) + ck.x2 * f.at(1, n) + ck.x3 * f.at(2, n));
  });
  return out;
}

double divergence_residual(const SpectralField& f) {
  SpectralScalar d = divergence(f);
  double worst = 0;
  for (const cplx& v : d.raw()) worst = std::max(worst, std::abs(v));
  return worst / std::max(1.0, f.l2());
}

SpectralScalar curl_h(const SpectralField& f) {
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    Vec3 ck = f.torus().check(n);
    out.at(n) = cplx(0, 1) * (-ck.x2 * f.at(0, n) + ck.x1 * f.at(1, n));
  });
  return out;
}

SpectralScalar laplacian(const SpectralScalar& f) {
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) { out.at(n) = -f.torus().check(n).norm2() * f.at(n); });
  return out;
}

SpectralScalar horizontal_laplacian(const SpectralScalar& f) {
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) { out.at(n) = -f.torus().check(n).h_norm2() * f.at(n); });
  return out;
}

namespace {

void require_zero_horizontal_average(const SpectralScalar& f, const char* op) {
  double mass = 0;
  for (int n3 = -f.torus().half(2); n3 <= f.torus().half(2); ++n3)
    mass += std::norm(f.at({0, 0, n3}));
  if (std::sqrt(mass) > 1e-12 * std::max(1.0, f.l2()))
    throw DomainError(std::string(op) + ": nonzero n_h = 0 coefficients");
}

}  // namespace

SpectralScalar inverse_horizontal_laplacian(const SpectralScalar& f) {
  require_zero_horizontal_average(f, "inverse_horizontal_laplacian");
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    if (n.horizontal_zero()) return;
    out.at(n) = -f.at(n) / f.torus().check(n).h_norm2();
  });
  return out;
}

SpectralScalar inverse_horizontal_sqrt_laplacian(const SpectralScalar& f) {
  require_zero_horizontal_average(f, "inverse_horizontal_sqrt_laplacian");
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    if (n.horizontal_zero()) return;
    out.at(n) = f.at(n) / (cplx(0, 1) * f.torus().check(n).h_norm());
  });
  return out;
}

void gradient(const SpectralScalar& f, SpectralScalar& d1, SpectralScalar& d2, SpectralScalar& d3) {
  d1 = SpectralScalar(f.torus());
  d2 = SpectralScalar(f.torus());
  d3 = SpectralScalar(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    Vec3 ck = f.torus().check(n);
    d1.at(n) = cplx(0, ck.x1) * f.at(n);
    d2.at(n) = cplx(0, ck.x2) * f.at(n);
    d3.at(n) = cplx(0, ck.x3) * f.at(n);
  });
}

void horizontal_gradient(const SpectralScalar& f, SpectralScalar& d1, SpectralScalar& d2) {
  d1 = SpectralScalar(f.torus());
  d2 = SpectralScalar(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    Vec3 ck = f.torus().check(n);
    d1.at(n) = cplx(0, ck.x1) * f.at(n);
    d2.at(n) = cplx(0, ck.x2) * f.at(n);
  });
}

void horizontal_gradient_perp(const SpectralScalar& f, SpectralScalar& d1, SpectralScalar& d2) {
  d1 = SpectralScalar(f.torus());
  d2 = SpectralScalar(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    Vec3 ck = f.torus().check(n);
    d1.at(n) = cplx(0, -ck.x2) * f.at(n);
    d2.at(n) = cplx(0, ck.x1) * f.at(n);
  });
}

SpectralField biot_savart(const SpectralScalar& omega) {
  require_zero_horizontal_average(omega, "biot_savart");
  SpectralField out(omega.torus());
  for_each_mode(omega.torus(), [&](Idx3 n) {
    if (n.horizontal_zero()) return;
    Vec3 ck = omega.torus().check(n);
    cplx w = omega.at(n) / ck.h_norm2();
    out.at(0, n) = cplx(0, ck.x2) * w;
    out.at(1, n) = cplx(0, -ck.x1) * w;
  });
  return out;
}

}  // namespace stratoflow
