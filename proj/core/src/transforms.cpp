#include "stratoflow/transforms.hpp"

#include <fftw3.h>

#include <cstring>

#include "stratoflow/operators.hpp"

namespace stratoflow {

struct Workspace::Impl {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;   // FFTW_FORWARD  (e^{-i...}): analysis
  fftw_plan bwd = nullptr;   // FFTW_BACKWARD (e^{+i...}): synthesis
  std::size_t nglob = 0;

  explicit Impl(const TorusSpec& t) {
    nglob = static_cast<std::size_t>(t.N1) * t.N2 * t.N3;
    buf = fftw_alloc_complex(nglob);
    fwd = fftw_plan_dft_3d(t.N3, t.N2, t.N1, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_3d(t.N3, t.N2, t.N1, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
};

Workspace::Workspace(const TorusSpec& t) : torus_(t), impl_(std::make_unique<Impl>(t)) {
  torus_.validate();
}
Workspace::~Workspace() = default;

namespace {

inline int wrap_bin(int n, int N) { return n >= 0 ? n : n + N; }

}  // namespace

PhysicalScalar Workspace::to_physical(const SpectralScalar& f) {
  const TorusSpec& t = torus_;
  std::memset(impl_->buf, 0, sizeof(fftw_complex) * impl_->nglob);
  for_each_mode(t, [&](Idx3 n) {
    if (t.on_nyquist(n)) return;  // pinned planes
    const cplx v = f.at(n);
    if (v == cplx(0)) return;
    std::size_t b = (static_cast<std::size_t>(wrap_bin(n.n3, t.N3)) * t.N2 + wrap_bin(n.n2, t.N2)) *
                        t.N1 +
                    wrap_bin(n.n1, t.N1);
    impl_->buf[b][0] = v.real();
    impl_->buf[b][1] = v.imag();
  });
  fftw_execute(impl_->bwd);
  PhysicalScalar out(t);
  for (std::size_t i = 0; i < impl_->nglob; ++i) out.v[i] = impl_->buf[i][0];
  return out;
}

PhysicalScalar Workspace::component_to_physical(const SpectralField& f, int c) {
  SpectralScalar s(torus_);
  for_each_mode(torus_, [&](Idx3 n) { s.at(n) = f.at(c, n); });
  return to_physical(s);
}

SpectralScalar Workspace::to_spectral(const PhysicalScalar& g) {
  const TorusSpec& t = torus_;
  for (std::size_t i = 0; i < impl_->nglob; ++i) {
    impl_->buf[i][0] = g.v[i];
    impl_->buf[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  const double scale = 1.0 / static_cast<double>(impl_->nglob);
  SpectralScalar out(t);
  for (int b3 = 0; b3 < t.N3; ++b3) {
    int n3 = b3 <= t.N3 / 2 - 1 ? b3 : b3 - t.N3;
    for (int b2 = 0; b2 < t.N2; ++b2) {
      int n2 = b2 <= t.N2 / 2 - 1 ? b2 : b2 - t.N2;
      for (int b1 = 0; b1 < t.N1; ++b1) {
        int n1 = b1 <= t.N1 / 2 - 1 ? b1 : b1 - t.N1;
        Idx3 n{n1, n2, n3};
        if (t.on_nyquist(n)) continue;  // drop aliased Nyquist bins
        std::size_t b = (static_cast<std::size_t>(b3) * t.N2 + b2) * t.N1 + b1;
        out.at(n) = cplx(impl_->buf[b][0] * scale, impl_->buf[b][1] * scale);
      }
    }
  }
  return out;
}

SpectralScalar Workspace::product(const SpectralScalar& a, const SpectralScalar& b, bool dealias) {
  SpectralScalar am = a, bm = b;
  if (dealias) {
    apply_dealias_mask(am);
    apply_dealias_mask(bm);
  }
  PhysicalScalar pa = to_physical(am);
  PhysicalScalar pb = to_physical(bm);
  for (std::size_t i = 0; i < pa.v.size(); ++i) pa.v[i] *= pb.v[i];
  SpectralScalar out = to_spectral(pa);
  if (dealias) apply_dealias_mask(out);
  return out;
}

SpectralField Workspace::advect(const SpectralField& wfield, const SpectralField& f, bool dealias) {
  const TorusSpec& t = torus_;
  // physical advecting velocity
  std::array<PhysicalScalar, 3> w = {PhysicalScalar(t), PhysicalScalar(t), PhysicalScalar(t)};
  for (int j = 0; j < 3; ++j) {
    SpectralScalar s(t);
    for_each_mode(t, [&](Idx3 n) { s.at(n) = wfield.at(j, n); });
    if (dealias) apply_dealias_mask(s);
    w[j] = to_physical(s);
  }
  SpectralField out(t);
  for (int c = 0; c < 4; ++c) {
    PhysicalScalar acc(t);
    for (int j = 0; j < 3; ++j) {
      SpectralScalar dj(t);
      for_each_mode(t, [&](Idx3 n) {
        Vec3 ck = t.check(n);
        double ckj = j == 0 ? ck.x1 : (j == 1 ? ck.x2 : ck.x3);
        dj.at(n) = cplx(0, ckj) * f.at(c, n);
      });
      if (dealias) apply_dealias_mask(dj);
      PhysicalScalar pd = to_physical(dj);
      for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += w[j].v[i] * pd.v[i];
    }
    SpectralScalar sc = to_spectral(acc);
    if (dealias) apply_dealias_mask(sc);
    for_each_mode(t, [&](Idx3 n) { out.at(c, n) = sc.at(n); });
  }
  out.pin_zero_mode();
  return out;
}

void Workspace::apply_dealias_mask(SpectralField& f) const {
  for_each_mode(torus_, [&](Idx3 n) {
    if (!torus_.in_dealias_band(n)) f.set_coeff(n, C4{});
  });
}

void Workspace::apply_dealias_mask(SpectralScalar& f) const {
  for_each_mode(torus_, [&](Idx3 n) {
    if (!torus_.in_dealias_band(n)) f.at(n) = 0;
  });
}

}  // namespace stratoflow
