#pragma once

#include <vector>

#include "stratoflow/wave_basis.hpp"

namespace stratoflow {

// ordered pairs (n, m), both nondegenerate, with omega(n) = omega(m) and
// k = n - m nonzero: the gather set for the kernel/oscillating coupling
struct OscPair {
  Idx3 n, m;
};

class ResonantTables {
 public:
  explicit ResonantTables(const TorusSpec& t, double tolerance = 1e-12);
  const TorusSpec& torus() const { return torus_; }
  double tolerance() const { return tol_; }
  const std::vector<OscPair>& osc_pairs() const { return pairs_; }

 private:
  TorusSpec torus_;
  double tol_;
  std::vector<OscPair> pairs_;
};

// the limit bilinear form: restricted convolution over resonant triads
// (omega^{a,b,c} = 0), symmetrized in its arguments, projected on the
// eigenframe per output frequency; zero at degenerate outputs (their kernel
// pairs vanish termwise and the pm pairs cancel by the beta identity)
SpectralField limit_Q(const WaveFrame& frame, const ResonantTables& tables,
                      const SpectralField& A, const SpectralField& B);

// fast gather of 2 Q(bar, osc) using the precomputed pair table
SpectralField limit_Q_coupling(const WaveFrame& frame, const ResonantTables& tables,
                               const SpectralField& bar, const SpectralField& osc);

// limit dissipation D U by direct symbol evaluation: rate nu |nch|^2 on e0,
// (nu+nu')/2 |nch|^2 on e+-, the raw diagonal on degenerate modes
SpectralField limit_D_apply(const WaveFrame& frame, const SpectralField& U, double nu,
                            double nu_prime);

// horizontal-average (underline) form: per n3, the resonant-set evaluation
// of the first two components at n_h = 0; identically zero in exact
// arithmetic for divergence-free U
std::vector<std::array<cplx, 2>> underline_Q(const WaveFrame& frame, const SpectralField& U,
                                             double tolerance = 1e-12);

}  // namespace stratoflow
