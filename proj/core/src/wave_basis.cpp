#include "stratoflow/wave_basis.hpp"

#include <cmath>

#include "stratoflow/errors.hpp"
#include "stratoflow/operators.hpp"

namespace stratoflow {

FrameEntry build_frame(const TorusSpec& t, Idx3 n) {
  FrameEntry fe;
  if (n.is_zero() || n.horizontal_zero()) return fe;  // degenerate
  Vec3 ck = t.check(n);
  double nh = ck.h_norm();
  double nn = ck.norm();
  fe.degenerate = false;
  fe.omega = nh / nn;
  fe.e0 = {cplx(-ck.x2 / nh), cplx(ck.x1 / nh), 0, 0};
  const double r = 1.0 / std::sqrt(2.0);
  cplx i(0, 1);
  fe.ep = {i * (ck.x1 * ck.x3 / (nh * nn)) * r, i * (ck.x2 * ck.x3 / (nh * nn)) * r,
           -i * (nh / nn) * r, cplx(r)};
  fe.em = {std::conj(fe.ep[0]), std::conj(fe.ep[1]), std::conj(fe.ep[2]), std::conj(fe.ep[3])};
  return fe;
}

WaveFrame::WaveFrame(const TorusSpec& t) : torus_(t), entries_(t.modes()) {
  for_each_mode(t, [&](Idx3 n) { entries_[t.flat(n)] = build_frame(t, n); });
}

C4 penalized_apply_mode(const TorusSpec& t, Idx3 n, const C4& v) {
  if (n.is_zero()) return C4{};
  // A(v, theta) = (0, 0, theta, -v3), then Leray on the first three slots
  C4 av{0, 0, v[3], -v[2]};
  return leray_project_mode(t, n, av);
}

SpectralField penalized_apply(const WaveFrame& frame, const SpectralField& f) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    out.set_coeff(n, penalized_apply_mode(f.torus(), n, f.coeff(n)));
  });
  return out;
}

SpectralField project_bar(const WaveFrame& frame, const SpectralField& f) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    const FrameEntry& fe = frame.at(n);
    if (fe.degenerate) return;
    out.set_coeff(n, cdot(f.coeff(n), fe.e0) * fe.e0);
  });
  return out;
}

SpectralField project_osc(const WaveFrame& frame, const SpectralField& f) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    const FrameEntry& fe = frame.at(n);
    if (fe.degenerate) return;
    C4 c = f.coeff(n);
    out.set_coeff(n, cdot(c, fe.ep) * fe.ep + cdot(c, fe.em) * fe.em);
  });
  return out;
}

SpectralField project_degenerate(const WaveFrame& frame, const SpectralField& f) {
  SpectralField out(f.torus());
  for_each_mode(f.torus(), [&](Idx3 n) {
    if (frame.at(n).degenerate && !n.is_zero()) out.set_coeff(n, f.coeff(n));
  });
  return out;
}

SpectralField propagate(const WaveFrame& frame, const SpectralField& f, double tau) {
  SpectralField out = f;
  for_each_mode(f.torus(), [&](Idx3 n) {
    const FrameEntry& fe = frame.at(n);
    if (fe.degenerate) return;
    C4 c = f.coeff(n);
    cplx cp = cdot(c, fe.ep);
    cplx cm = cdot(c, fe.em);
    cplx rot = std::polar(1.0, tau * fe.omega);
    // replace the oscillating content, keep kernel + residue fixed
    out.add_coeff(n, (rot - 1.0) * cp * fe.ep + (std::conj(rot) - 1.0) * cm * fe.em);
  });
  return out;
}

ModeCoordinates to_eigen(const WaveFrame& frame, const SpectralField& f, double residual_tol) {
  ModeCoordinates mc(f.torus());
  double out_of_span = 0;
  for_each_mode(f.torus(), [&](Idx3 n) {
    const FrameEntry& fe = frame.at(n);
    std::size_t i = mc.flat(n);
    if (fe.degenerate) {
      mc.degenerate[i] = f.coeff(n);
      return;
    }
    C4 c = f.coeff(n);
    mc.u0[i] = cdot(c, fe.e0);
    mc.up[i] = cdot(c, fe.ep);
    mc.um[i] = cdot(c, fe.em);
    C4 rec = mc.u0[i] * fe.e0 + mc.up[i] * fe.ep + mc.um[i] * fe.em;
    out_of_span += cnorm2(c - rec);
  });
  double total = f.l2();
  if (total > 0 && std::sqrt(out_of_span) > residual_tol * total)
    throw ResidualError("to_eigen: field has energy outside span{e0, e+, e-}");
  return mc;
}

SpectralField from_eigen(const WaveFrame& frame, const ModeCoordinates& coords) {
  SpectralField out(coords.torus);
  for_each_mode(coords.torus, [&](Idx3 n) {
    const FrameEntry& fe = frame.at(n);
    std::size_t i = coords.flat(n);
    if (fe.degenerate) {
      if (!n.is_zero()) out.set_coeff(n, coords.degenerate[i]);
      return;
    }
    out.set_coeff(n, coords.u0[i] * fe.e0 + coords.up[i] * fe.ep + coords.um[i] * fe.em);
  });
  return out;
}

}  // namespace stratoflow
