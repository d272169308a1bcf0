#pragma once

#include "stratoflow/operators.hpp"
#include "stratoflow/rng.hpp"
#include "stratoflow/spectral_field.hpp"

namespace stratoflow::testutil {

inline SpectralScalar random_scalar(const TorusSpec& t, Rng& rng, double decay = 1.0,
                                    bool zero_h_avg = false) {
  SpectralScalar f(t);
  for_each_mode(t, [&](Idx3 n) {
    if (n.is_zero() || t.on_nyquist(n)) return;
    if (zero_h_avg && n.horizontal_zero()) return;
    double w = std::pow(1.0 + t.check(n).norm2(), -decay / 2.0);
    f.at(n) = w * cplx(rng.normal(), rng.normal());
  });
  f.enforce_hermitian();
  return f;
}

inline SpectralField random_field(const TorusSpec& t, Rng& rng, double decay = 1.0,
                                  bool zero_h_avg = false) {
  SpectralField f(t);
  for (int c = 0; c < 4; ++c) {
    SpectralScalar s = random_scalar(t, rng, decay, zero_h_avg);
    for_each_mode(t, [&](Idx3 n) { f.at(c, n) = s.at(n); });
  }
  f.enforce_hermitian();
  return f;
}

inline SpectralField random_solenoidal(const TorusSpec& t, Rng& rng, double decay = 1.0,
                                       bool zero_h_avg = true) {
  SpectralField f = leray_project(random_field(t, rng, decay, zero_h_avg));
  if (zero_h_avg) f.zero_horizontal_average();
  f.enforce_hermitian();
  return f;
}

// real single mode: coefficient v at n, conj(v) at -n
inline void set_mode(SpectralField& f, int c, Idx3 n, cplx v) {
  f.at(c, n) = v;
  f.at(c, -n) = std::conj(v);
}

inline void set_mode(SpectralScalar& f, Idx3 n, cplx v) {
  f.at(n) = v;
  f.at(-n) = std::conj(v);
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    worst = std::max(worst, std::abs(a.raw()[i] - b.raw()[i]));
  return worst;
}

}  // namespace stratoflow::testutil
