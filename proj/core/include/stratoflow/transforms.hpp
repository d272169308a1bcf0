#pragma once

#include <memory>
#include <vector>

#include "stratoflow/spectral_field.hpp"

namespace stratoflow {

// Physical-space scalar sampled on the collocation grid, x1 fastest.
struct PhysicalScalar {
  TorusSpec torus;
  std::vector<double> v;  // size N1*N2*N3

  explicit PhysicalScalar(const TorusSpec& t)
      : torus(t), v(static_cast<std::size_t>(t.N1) * t.N2 * t.N3, 0.0) {}
  double& at(int i1, int i2, int i3) {
    return v[(static_cast<std::size_t>(i3) * torus.N2 + i2) * torus.N1 + i1];
  }
  double at(int i1, int i2, int i3) const {
    return v[(static_cast<std::size_t>(i3) * torus.N2 + i2) * torus.N1 + i1];
  }
};

// FFT workspace bound to one torus. Plans are FFTW_ESTIMATE so runs are
// bit-reproducible. All spectral <-> physical traffic goes through here.
class Workspace {
 public:
  explicit Workspace(const TorusSpec& t);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const TorusSpec& torus() const { return torus_; }

  // synthesis u(x) = sum u_n e^{i nch.x}; Hermitian input -> real output
  PhysicalScalar to_physical(const SpectralScalar& f);
  PhysicalScalar component_to_physical(const SpectralField& f, int c);

  // analysis with 1/(N1 N2 N3); Nyquist bins are dropped (pinned planes)
  SpectralScalar to_spectral(const PhysicalScalar& g);

  // pointwise product, returned in spectral space; mask = 2/3-rule on output
  SpectralScalar product(const SpectralScalar& a, const SpectralScalar& b, bool dealias);

  // transport term (w . grad) f for a 4-component field; w = first three
  // components of wfield; products dealiased when requested
  SpectralField advect(const SpectralField& wfield, const SpectralField& f, bool dealias);

  void apply_dealias_mask(SpectralField& f) const;
  void apply_dealias_mask(SpectralScalar& f) const;

 private:
  struct Impl;
  TorusSpec torus_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace stratoflow
