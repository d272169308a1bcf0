#include "stratoflow/limit_forms.hpp"

#include <cmath>

#include "stratoflow/operators.hpp"
#include "stratoflow/resonance.hpp"

namespace stratoflow {

namespace {

bool usable(const TorusSpec& t, Idx3 n) {
  return !n.is_zero() && !n.horizontal_zero() && !t.on_nyquist(n);
}

// advection factor sum_j e^{a,j}(k) i mch_j
cplx adv_factor(const TorusSpec& t, const C4& e, Idx3 m) {
  Vec3 mc = t.check(m);
  return cplx(0, 1) * (e[0] * mc.x1 + e[1] * mc.x2 + e[2] * mc.x3);
}

}  // namespace

ResonantTables::ResonantTables(const TorusSpec& t, double tolerance)
    : torus_(t), tol_(tolerance) {
  for_each_mode(t, [&](Idx3 n) {
    if (!usable(t, n)) return;
    double wn = mode_omega(t, n);
    for_each_mode(t, [&](Idx3 m) {
      if (!usable(t, m)) return;
      if ((n - m).is_zero()) return;
      if (std::abs(mode_omega(t, m) - wn) < tol_) pairs_.push_back({n, m});
    });
  });
}

namespace {

// one transport-ordered resonant gather T(A, B); accumulates eigencoefficients
void gather_transport(const WaveFrame& frame, double tol, const SpectralField& A,
                      const SpectralField& B, std::vector<cplx>& acc0, std::vector<cplx>& accp,
                      std::vector<cplx>& accm) {
  const TorusSpec& t = frame.torus();
  const ModeLabel labels[3] = {ModeLabel::Kernel, ModeLabel::Plus, ModeLabel::Minus};
  for_each_mode(t, [&](Idx3 k) {
    if (!usable(t, k)) return;
    const FrameEntry& fk = frame.at(k);
    C4 ak = A.coeff(k);
    cplx ua[3] = {cdot(ak, fk.e0), cdot(ak, fk.ep), cdot(ak, fk.em)};
    if (std::abs(ua[0]) + std::abs(ua[1]) + std::abs(ua[2]) == 0.0) return;
    double wk = fk.omega;
    for_each_mode(t, [&](Idx3 m) {
      if (!usable(t, m)) return;
      Idx3 n = k + m;
      if (!t.in_range(n) || !usable(t, n)) return;  // degenerate outputs vanish
      const FrameEntry& fm = frame.at(m);
      const FrameEntry& fn = frame.at(n);
      C4 bm = B.coeff(m);
      cplx ub[3] = {cdot(bm, fm.e0), cdot(bm, fm.ep), cdot(bm, fm.em)};
      double wm = fm.omega, wn = fn.omega;
      const C4* em[3] = {&fm.e0, &fm.ep, &fm.em};
      const C4* en[3] = {&fn.e0, &fn.ep, &fn.em};
      cplx advf[3] = {cplx(0), cplx(0), cplx(0)};
      bool have_adv[3] = {false, false, false};
      std::size_t slot = t.flat(n);
      for (int ia = 0; ia < 3; ++ia) {
        if (ua[ia] == cplx(0)) continue;
        double wa = static_cast<int>(labels[ia]) * wk;
        for (int ib = 0; ib < 3; ++ib) {
          if (ub[ib] == cplx(0)) continue;
          double s = wa + static_cast<int>(labels[ib]) * wm;
          for (int ic = 0; ic < 3; ++ic) {
            if (std::abs(s - static_cast<int>(labels[ic]) * wn) >= tol) continue;
            if (!have_adv[ia]) {
              const C4& ea = ia == 0 ? fk.e0 : (ia == 1 ? fk.ep : fk.em);
              advf[ia] = ua[ia] * adv_factor(t, ea, m);
              have_adv[ia] = true;
            }
            cplx contrib = advf[ia] * ub[ib] * cdot(*em[ib], *en[ic]);
            (ic == 0 ? acc0 : (ic == 1 ? accp : accm))[slot] += contrib;
          }
        }
      }
    });
  });
}

SpectralField assemble_from_acc(const WaveFrame& frame, const std::vector<cplx>& acc0,
                                const std::vector<cplx>& accp, const std::vector<cplx>& accm) {
  const TorusSpec& t = frame.torus();
  SpectralField out(t);
  for_each_mode(t, [&](Idx3 n) {
    if (!usable(t, n)) return;
    const FrameEntry& fe = frame.at(n);
    std::size_t i = t.flat(n);
    out.set_coeff(n, acc0[i] * fe.e0 + accp[i] * fe.ep + accm[i] * fe.em);
  });
  return out;
}

}  // namespace

SpectralField limit_Q(const WaveFrame& frame, const ResonantTables& tables,
                      const SpectralField& A, const SpectralField& B) {
  const TorusSpec& t = frame.torus();
  std::vector<cplx> acc0(t.modes()), accp(t.modes()), accm(t.modes());
  gather_transport(frame, tables.tolerance(), A, B, acc0, accp, accm);
  gather_transport(frame, tables.tolerance(), B, A, acc0, accp, accm);
  for (auto* v : {&acc0, &accp, &accm})
    for (cplx& c : *v) c *= 0.5;
  return assemble_from_acc(frame, acc0, accp, accm);
}

SpectralField limit_Q_coupling(const WaveFrame& frame, const ResonantTables& tables,
                               const SpectralField& bar, const SpectralField& osc) {
  const TorusSpec& t = frame.torus();
  std::vector<cplx> acc0(t.modes()), accp(t.modes()), accm(t.modes());
  if (osc.l2() == 0.0) return assemble_from_acc(frame, acc0, accp, accm);

  // eigen coefficients once per call, not per pair
  std::vector<cplx> u0bar(t.modes()), up(t.modes()), um(t.modes());
  bool any_bar = false, any_osc = false;
  for_each_mode(t, [&](Idx3 n) {
    if (!usable(t, n)) return;
    const FrameEntry& fe = frame.at(n);
    std::size_t i = t.flat(n);
    u0bar[i] = cdot(bar.coeff(n), fe.e0);
    C4 o = osc.coeff(n);
    up[i] = cdot(o, fe.ep);
    um[i] = cdot(o, fe.em);
    any_bar = any_bar || u0bar[i] != cplx(0);
    any_osc = any_osc || up[i] != cplx(0) || um[i] != cplx(0);
  });
  if (!any_bar || !any_osc) return assemble_from_acc(frame, acc0, accp, accm);

  for (const OscPair& pr : tables.osc_pairs()) {
    const FrameEntry& fn = frame.at(pr.n);
    const FrameEntry& fm = frame.at(pr.m);
    std::size_t slot = t.flat(pr.n);
    std::size_t mslot = t.flat(pr.m);
    Idx3 k = pr.n - pr.m;
    if (k.horizontal_zero() || !t.in_range(k) || t.on_nyquist(k)) continue;
    std::size_t kslot = t.flat(k);

    // T(bar, osc): kernel advects, labels (0, b, b)
    if (u0bar[kslot] != cplx(0) && (up[mslot] != cplx(0) || um[mslot] != cplx(0))) {
      const FrameEntry& fk = frame.at(k);
      cplx adv = u0bar[kslot] * adv_factor(t, fk.e0, pr.m);
      if (up[mslot] != cplx(0)) accp[slot] += adv * up[mslot] * cdot(fm.ep, fn.ep);
      if (um[mslot] != cplx(0)) accm[slot] += adv * um[mslot] * cdot(fm.em, fn.em);
    }

    // T(osc, bar): the oscillating mode at k' = pr.m advects the kernel at
    // m' = pr.n - pr.m, labels (a, 0, a)
    if (u0bar[kslot] != cplx(0) && (up[mslot] != cplx(0) || um[mslot] != cplx(0))) {
      const FrameEntry& fkp = fm;
      const FrameEntry& fmp = frame.at(k);
      if (up[mslot] != cplx(0))
        accp[slot] += up[mslot] * adv_factor(t, fkp.ep, k) * u0bar[kslot] * cdot(fmp.e0, fn.ep);
      if (um[mslot] != cplx(0))
        accm[slot] += um[mslot] * adv_factor(t, fkp.em, k) * u0bar[kslot] * cdot(fmp.e0, fn.em);
    }
  }
  return assemble_from_acc(frame, acc0, accp, accm);
}

SpectralField limit_D_apply(const WaveFrame& frame, const SpectralField& U, double nu,
                            double nu_prime) {
  const TorusSpec& t = frame.torus();
  SpectralField out(t);
  for_each_mode(t, [&](Idx3 n) {
    if (n.is_zero()) return;
    double k2 = t.check(n).norm2();
    const FrameEntry& fe = frame.at(n);
    C4 c = U.coeff(n);
    if (fe.degenerate) {
      out.set_coeff(n, C4{-nu * k2 * c[0], -nu * k2 * c[1], -nu * k2 * c[2],
                          -nu_prime * k2 * c[3]});
      return;
    }
    double mu = 0.5 * (nu + nu_prime) * k2;
    out.set_coeff(n, (-nu * k2) * cdot(c, fe.e0) * fe.e0 + cplx(-mu) * cdot(c, fe.ep) * fe.ep +
                         cplx(-mu) * cdot(c, fe.em) * fe.em);
  });
  return out;
}

std::vector<std::array<cplx, 2>> underline_Q(const WaveFrame& frame, const SpectralField& U,
                                             double tolerance) {
  const TorusSpec& t = frame.torus();
  std::vector<std::array<cplx, 2>> out(2 * t.half(2) + 1, {cplx(0), cplx(0)});
  const ModeLabel labels[3] = {ModeLabel::Kernel, ModeLabel::Plus, ModeLabel::Minus};
  for (int n3 = -t.half(2); n3 <= t.half(2); ++n3) {
    if (n3 == 0) continue;
    cplx in3 = cplx(0, n3 / t.a3);
    std::array<cplx, 2>& acc = out[n3 + t.half(2)];
    for_each_mode(t, [&](Idx3 k) {
      if (!usable(t, k)) return;
      Idx3 m{-k.n1, -k.n2, n3 - k.n3};
      if (!t.in_range(m) || !usable(t, m)) return;
      const FrameEntry& fk = frame.at(k);
      const FrameEntry& fm = frame.at(m);
      C4 uk = U.coeff(k), um = U.coeff(m);
      cplx ca[3] = {cdot(uk, fk.e0), cdot(uk, fk.ep), cdot(uk, fk.em)};
      cplx cb[3] = {cdot(um, fm.e0), cdot(um, fm.ep), cdot(um, fm.em)};
      const C4* ek[3] = {&fk.e0, &fk.ep, &fk.em};
      const C4* em[3] = {&fm.e0, &fm.ep, &fm.em};
      for (int ia = 0; ia < 3; ++ia)
        for (int ib = 0; ib < 3; ++ib) {
          double s = static_cast<int>(labels[ia]) * fk.omega +
                     static_cast<int>(labels[ib]) * fm.omega;
          if (std::abs(s) >= tolerance) continue;
          cplx third = ca[ia] * (*ek[ia])[2];
          if (third == cplx(0)) continue;
          acc[0] += in3 * third * cb[ib] * (*em[ib])[0];
          acc[1] += in3 * third * cb[ib] * (*em[ib])[1];
        }
    });
  }
  return out;
}

}  // namespace stratoflow
