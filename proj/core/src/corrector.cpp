#include "stratoflow/corrector.hpp"

#include <cmath>

#include "stratoflow/errors.hpp"
#include "stratoflow/operators.hpp"

namespace stratoflow {

SpectralField q_eps_form(Workspace& ws, const WaveFrame& frame, double t, double eps,
                         const SpectralField& A, const SpectralField& B, bool dealias) {
  double tau = std::isinf(eps) ? 0.0 : t / eps;
  SpectralField a = propagate(frame, A, -tau);
  SpectralField b = propagate(frame, B, -tau);
  SpectralField sym = leray_project(0.5 * (ws.advect(a, b, dealias) + ws.advect(b, a, dealias)));
  SpectralField out = propagate(frame, sym, tau);
  out.pin_zero_mode();
  return out;
}

namespace {

bool usable(const TorusSpec& t, Idx3 n) {
  return !n.is_zero() && !n.horizontal_zero() && !t.on_nyquist(n);
}

struct EigenView {
  cplx u[3];
  const C4* e[3];
  double omega;
};

EigenView view_at(const WaveFrame& frame, const SpectralField& U, Idx3 n) {
  const FrameEntry& fe = frame.at(n);
  EigenView v;
  C4 c = U.coeff(n);
  v.u[0] = cdot(c, fe.e0);
  v.u[1] = cdot(c, fe.ep);
  v.u[2] = cdot(c, fe.em);
  v.e[0] = &fe.e0;
  v.e[1] = &fe.ep;
  v.e[2] = &fe.em;
  v.omega = fe.omega;
  return v;
}

}  // namespace

SpectralField corrector_triad_sum(Workspace& ws, const WaveFrame& frame, const SpectralField& U,
                                  const SpectralField* dU, int N, double t, double eps,
                                  TriadSumKind kind, double resonance_tol,
                                  double divisor_floor) {
  if (kind == TriadSumKind::TildeTime && dU == nullptr)
    throw ValidationError("corrector_triad_sum: TildeTime needs dU");
  const TorusSpec& ts = frame.torus();
  const int sgn[3] = {0, 1, -1};
  SpectralField out(ts);
  double inv_eps = std::isinf(eps) ? 0.0 : 1.0 / eps;

  for_each_mode(ts, [&](Idx3 n) {
    if (n.is_zero() || ts.on_nyquist(n)) return;
    if (n.sup_norm() > N || !ts.in_dealias_band(n)) return;
    bool deg = n.horizontal_zero();
    const FrameEntry& fn = frame.at(n);
    cplx acc_eig[3] = {cplx(0), cplx(0), cplx(0)};
    C4 acc_deg{};

    for_each_mode(ts, [&](Idx3 k) {
      if (k.sup_norm() > N || !usable(ts, k)) return;
      Idx3 m = n - k;
      if (!ts.in_range(m) || !usable(ts, m)) return;
      EigenView vk = view_at(frame, U, k);
      EigenView vm = view_at(frame, U, m);
      EigenView dvk, dvm;
      if (kind == TriadSumKind::TildeTime) {
        dvk = view_at(frame, *dU, k);
        dvm = view_at(frame, *dU, m);
      }
      Vec3 mc = ts.check(m);
      for (int ia = 0; ia < 3; ++ia) {
        cplx advfac = cplx(0, 1) * ((*vk.e[ia])[0] * mc.x1 + (*vk.e[ia])[1] * mc.x2 +
                                    (*vk.e[ia])[2] * mc.x3);
        for (int ib = 0; ib < 3; ++ib) {
          double wab = sgn[ia] * vk.omega + sgn[ib] * vm.omega;
          // coefficient (and its time derivative) of the bilinear term
          cplx coeff = vk.u[ia] * advfac * vm.u[ib];
          cplx dcoeff = 0;
          if (kind == TriadSumKind::TildeTime)
            dcoeff = (dvk.u[ia] * vm.u[ib] + vk.u[ia] * dvm.u[ib]) * advfac;
          if (coeff == cplx(0) && dcoeff == cplx(0)) continue;

          if (deg) {
            if (std::abs(wab) < resonance_tol) continue;  // resonant part vanishes
            if (kind != TriadSumKind::Remainder && std::abs(wab) < divisor_floor)
              throw DivisorError("corrector divisor |omega| = " + std::to_string(std::abs(wab)) +
                                 " below the floor at n = " + n.str());
            cplx phase = std::polar(1.0, -t * inv_eps * wab);
            cplx w = kind == TriadSumKind::Remainder
                         ? phase * coeff
                         : phase * (kind == TriadSumKind::Tilde ? coeff : dcoeff) /
                               cplx(0, -wab);
            for (int comp = 0; comp < 4; ++comp) acc_deg[comp] += w * (*vm.e[ib])[comp];
          } else {
            for (int ic = 0; ic < 3; ++ic) {
              double wabc = wab - sgn[ic] * fn.omega;
              if (std::abs(wabc) < resonance_tol) continue;
              if (kind != TriadSumKind::Remainder && std::abs(wabc) < divisor_floor)
                throw DivisorError("corrector divisor |omega| = " +
                                   std::to_string(std::abs(wabc)) + " below the floor at n = " +
                                   n.str());
              const C4* en = ic == 0 ? &fn.e0 : (ic == 1 ? &fn.ep : &fn.em);
              cplx gram = cdot(*vm.e[ib], *en);
              if (gram == cplx(0)) continue;
              cplx phase = std::polar(1.0, -t * inv_eps * wabc);
              cplx w = kind == TriadSumKind::Remainder
                           ? phase * coeff * gram
                           : phase * (kind == TriadSumKind::Tilde ? coeff : dcoeff) * gram /
                                 cplx(0, -wabc);
              acc_eig[ic] += w;
            }
          }
        }
      }
    });

    if (deg) {
      out.set_coeff(n, leray_project_mode(ts, n, acc_deg));
    } else {
      out.set_coeff(n, acc_eig[0] * fn.e0 + acc_eig[1] * fn.ep + acc_eig[2] * fn.em);
    }
  });
  (void)ws;
  return out;
}

CorrectorSeries corrector_diagnostics(Workspace& ws, const WaveFrame& frame,
                                      const ResonantTables& tables, const RunConfig& cfg,
                                      const CorrectorConfig& ccfg, const SpectralField& U0,
                                      const NonResonanceCertificate& cert, int stride) {
  CorrectorSeries series;
  LimitStepper limit(ws, frame, tables, cfg, cert);
  FilteredStepper filtered(ws, frame, cfg);
  LimitState ls = make_limit_state(frame, U0);
  FlowState fs{U0, 0.0};

  const int steps = static_cast<int>(std::llround(cfg.T / cfg.dt));
  const double tol = tables.tolerance();
  double delta = ccfg.fd_delta > 0 ? ccfg.fd_delta
                                   : 1e-5 * (std::isinf(cfg.epsilon) ? 1.0 : cfg.epsilon / 0.1);

  double prev_reps_sq = -1, prev_gamma_sq = 0, prev_theta = 0;

  auto take_sample = [&]() {
    CorrectorSample smp;
    smp.t = ls.t;
    SpectralField U = limit.assemble(ls);
    SpectralField dU = limit.time_derivative(ls);

    SpectralField qe = q_eps_form(ws, frame, ls.t, cfg.epsilon, U, U, cfg.dealias);
    SpectralField ql = limit_Q(frame, tables, U, U);
    ws.apply_dealias_mask(ql);
    SpectralField r_osc = qe - ql;

    SpectralField r_N = corrector_triad_sum(ws, frame, U, nullptr, ccfg.N, ls.t, cfg.epsilon,
                                            TriadSumKind::Remainder, tol, ccfg.divisor_floor);
    SpectralField r_hi = r_osc - r_N;
    SpectralField tilde = corrector_triad_sum(ws, frame, U, nullptr, ccfg.N, ls.t, cfg.epsilon,
                                              TriadSumKind::Tilde, tol, ccfg.divisor_floor);
    SpectralField tilde_t = corrector_triad_sum(ws, frame, U, &dU, ccfg.N, ls.t, cfg.epsilon,
                                                TriadSumKind::TildeTime, tol,
                                                ccfg.divisor_floor);

    smp.r_osc_hs1 = sobolev_norm(r_osc, cfg.s - 1.0);
    smp.r_eps_N_hs1 = sobolev_norm(r_hi, cfg.s - 1.0);

    // psi = W + eps tildeR, W = U^eps - U
    SpectralField psi = fs.V - U + cfg.epsilon * tilde;
    smp.psi_hs = sobolev_norm(psi, cfg.s);

    // Gamma = nu lap tildeR + Q^eps(tildeR, eps tildeR + 2U) + tildeR^t
    SpectralField lap_tilde(ws.torus());
    for_each_mode(ws.torus(), [&](Idx3 n) {
      double k2 = ws.torus().check(n).norm2();
      for (int c = 0; c < 4; ++c) lap_tilde.at(c, n) = -k2 * tilde.at(c, n);
    });
    SpectralField gamma = cfg.nu * lap_tilde +
                          q_eps_form(ws, frame, ls.t, cfg.epsilon, tilde,
                                     cfg.epsilon * tilde + 2.0 * U, cfg.dealias) +
                          tilde_t;
    smp.gamma_hs1 = sobolev_norm(gamma, cfg.s - 1.0);

    smp.theta = 2.0 * ccfg.theta_constant *
                (std::pow(sobolev_norm(U, cfg.s + 1.0), 2) +
                 cfg.epsilon * std::pow(sobolev_norm(tilde, cfg.s + 1.0), 2));

    // cancellation identity by central differences of eps * tildeR
    {
      LimitState fwd = ls, bwd = ls;
      limit.step_with(fwd, delta);
      limit.step_with(bwd, -delta);
      SpectralField Uf = limit.assemble(fwd);
      SpectralField Ub = limit.assemble(bwd);
      SpectralField tf = corrector_triad_sum(ws, frame, Uf, nullptr, ccfg.N, ls.t + delta,
                                             cfg.epsilon, TriadSumKind::Tilde, tol,
                                             ccfg.divisor_floor);
      SpectralField tb = corrector_triad_sum(ws, frame, Ub, nullptr, ccfg.N, ls.t - delta,
                                             cfg.epsilon, TriadSumKind::Tilde, tol,
                                             ccfg.divisor_floor);
      SpectralField fd = (cfg.epsilon / (2.0 * delta)) * (tf - tb);
      SpectralField rhs = r_N + cfg.epsilon * tilde_t;
      double den = std::max(1e-300, rhs.l2());
      smp.identity_residual = (fd - rhs).l2() / den;
    }
    return smp;
  };

  auto accumulate = [&](const CorrectorSample& smp, double dt_window) {
    double reps_sq = smp.r_eps_N_hs1 * smp.r_eps_N_hs1;
    double gamma_sq = smp.gamma_hs1 * smp.gamma_hs1;
    if (prev_reps_sq >= 0) {
      series.r_eps_N_l2hs1 += 0.5 * (prev_reps_sq + reps_sq) * dt_window;
      series.gamma_l2hs1 += 0.5 * (prev_gamma_sq + gamma_sq) * dt_window;
      series.theta_l1 += 0.5 * (prev_theta + smp.theta) * dt_window;
    }
    prev_reps_sq = reps_sq;
    prev_gamma_sq = gamma_sq;
    prev_theta = smp.theta;
    series.identity_residual_max = std::max(series.identity_residual_max, smp.identity_residual);
    series.samples.push_back(smp);
  };

  accumulate(take_sample(), 0.0);
  for (int i = 1; i <= steps; ++i) {
    limit.step(ls);
    filtered.step(fs);
    if (i % stride == 0 || i == steps) {
      double window = cfg.dt * stride;
      if (i == steps && steps % stride != 0) window = cfg.dt * (steps % stride);
      accumulate(take_sample(), window);
    }
  }
  series.r_eps_N_l2hs1 = std::sqrt(series.r_eps_N_l2hs1);
  series.gamma_l2hs1 = std::sqrt(series.gamma_l2hs1);
  return series;
}

}  // namespace stratoflow
