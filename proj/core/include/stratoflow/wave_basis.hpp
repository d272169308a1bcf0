#pragma once

#include <optional>
#include <vector>

#include "stratoflow/spectral_field.hpp"

namespace stratoflow {

// Per-frequency eigen data of PA. For n_h != 0 the eigenvalues are
// 0, +i omega, -i omega with omega = |nch_h|/|nch| and the orthonormal
// divergence-free frame {e0, e+, e-}; at n_h = 0 every eigenvalue collapses
// to zero and the mode is kept in physical coordinates.
struct FrameEntry {
  bool degenerate = true;  // n_h = 0 (or n = 0)
  double omega = 0.0;
  C4 e0{}, ep{}, em{};
};

FrameEntry build_frame(const TorusSpec& t, Idx3 n);

class WaveFrame {
 public:
  explicit WaveFrame(const TorusSpec& t);
  const TorusSpec& torus() const { return torus_; }
  const FrameEntry& at(Idx3 n) const { return entries_[torus_.flat(n)]; }
  double omega(Idx3 n) const { return at(n).omega; }

 private:
  TorusSpec torus_;
  std::vector<FrameEntry> entries_;
};

// action of PA = Leray . A (A couples v3 and theta) per frequency
C4 penalized_apply_mode(const TorusSpec& t, Idx3 n, const C4& v);
SpectralField penalized_apply(const WaveFrame& frame, const SpectralField& f);

// orthogonal projections onto span{e0}, span{e+, e-} and the n_h = 0 modes
SpectralField project_bar(const WaveFrame& frame, const SpectralField& f);
SpectralField project_osc(const WaveFrame& frame, const SpectralField& f);
SpectralField project_degenerate(const WaveFrame& frame, const SpectralField& f);

// L(tau) = e^{tau PA}: multiplies the e^+/e^- coefficients by e^{+-i tau omega},
// fixes kernel and degenerate modes, leaves non-solenoidal residue unchanged.
SpectralField propagate(const WaveFrame& frame, const SpectralField& f, double tau);

// coefficients in the eigenbasis
struct ModeCoordinates {
  TorusSpec torus;
  std::vector<cplx> u0, up, um;  // per stored frequency
  std::vector<C4> degenerate;    // raw 4-tuples at n_h = 0 modes

  explicit ModeCoordinates(const TorusSpec& t)
      : torus(t), u0(t.modes()), up(t.modes()), um(t.modes()), degenerate(t.modes()) {}
  std::size_t flat(Idx3 n) const { return torus.flat(n); }
};

// residual_tol: relative energy allowed outside span{e0,e+,e-} before
// ResidualError (divergence-free fields have none).
ModeCoordinates to_eigen(const WaveFrame& frame, const SpectralField& f,
                         double residual_tol = 1e-8);
SpectralField from_eigen(const WaveFrame& frame, const ModeCoordinates& coords);

}  // namespace stratoflow
