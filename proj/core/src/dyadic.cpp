#include "stratoflow/dyadic.hpp"

#include <cmath>

namespace stratoflow {

namespace {

// C^inf transition: 0 for s <= 0, 1 for s >= 1
double smoothstep(double s) {
  if (s <= 0) return 0;
  if (s >= 1) return 1;
  double a = std::exp(-1.0 / s);
  double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double block_weight(double r, int q) {
  if (q < -1) return 0;
  if (q == -1) return lp_chi(r);
  return lp_phi(r / std::exp2(q));
}

double axis_radius(const TorusSpec& t, Idx3 n, DyadicAxis axis) {
  Vec3 ck = t.check(n);
  return axis == DyadicAxis::Isotropic ? ck.norm() : ck.h_norm();
}

}  // namespace

// chi = 1 on [0, 3/4], transition on (3/4, 4/3), 0 beyond; then
// phi(1) = 1 - chi(1) > 0 so a mode with |nch| = 2^q sits in block q.
double lp_chi(double t) { return 1.0 - smoothstep((std::abs(t) - 0.75) / (4.0 / 3.0 - 0.75)); }

double lp_phi(double t) { return lp_chi(t / 2.0) - lp_chi(t); }

SpectralField dyadic_block(const SpectralField& f, int q, DyadicAxis axis) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    double w = block_weight(axis_radius(f.torus(), n, axis), q);
    if (w != 0) out.set_coeff(n, cplx(w) * f.coeff(n));
  });
  return out;
}

SpectralScalar dyadic_block(const SpectralScalar& f, int q, DyadicAxis axis) {
  SpectralScalar out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    double w = block_weight(axis_radius(f.torus(), n, axis), q);
    if (w != 0) out.at(n) = w * f.at(n);
  });
  return out;
}

SpectralField low_frequency_cutoff(const SpectralField& f, int q, DyadicAxis axis) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    double r = axis_radius(f.torus(), n, axis);
    double w = 0;
    for (int qp = -1; qp <= q - 1; ++qp) w += block_weight(r, qp);
    if (w != 0) out.set_coeff(n, cplx(w) * f.coeff(n));
  });
  return out;
}

int max_dyadic_index(const TorusSpec& t) {
  double rmax = 0;
  for_each_mode(t, [&](Idx3 n) { rmax = std::max(rmax, t.check(n).norm()); });
  int q = 0;
  while (std::exp2(q) * (3.0 / 4.0) <= rmax) ++q;
  return q;
}

double partition_of_unity_defect(double tmax, int samples) {
  int qmax = 2 + static_cast<int>(std::ceil(std::log2(std::max(2.0, tmax))));
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    double t = tmax * (i + 0.5) / samples;
    double s = lp_chi(t);
    for (int q = 0; q <= qmax; ++q) s += lp_phi(t / std::exp2(q));
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

}  // namespace stratoflow
