#pragma once

#include "stratoflow/dynamics.hpp"

namespace stratoflow {

struct CorrectorConfig {
  int N = 4;                    // frequency cutoff (sup norm) of the truncations
  double divisor_floor = 1e-10;  // DivisorError below this
  double theta_constant = 1.0;   // C in Theta
  double fd_delta = 0.0;         // 0: auto-scaled central-difference step
};

enum class TriadSumKind {
  Remainder,  // R_{osc,N}: truncated nonresonant sum with phases
  Tilde,      // the same sum divided by the divisor -i omega^{a,b,c}
  TildeTime,  // divided sum with d/dt of the bilinear coefficients
};

// explicit truncated triad sums over |n|inf <= N, |k|inf <= N, nonresonant
// labels; dU required for TildeTime
SpectralField corrector_triad_sum(Workspace& ws, const WaveFrame& frame, const SpectralField& U,
                                  const SpectralField* dU, int N, double t, double eps,
                                  TriadSumKind kind, double resonance_tol,
                                  double divisor_floor);

// symmetrized filtered bilinear form at absolute time t (free-standing)
SpectralField q_eps_form(Workspace& ws, const WaveFrame& frame, double t, double eps,
                         const SpectralField& A, const SpectralField& B, bool dealias);

struct CorrectorSample {
  double t = 0;
  double r_osc_hs1 = 0;       // ||R_osc||_{H^{s-1}}
  double r_eps_N_hs1 = 0;     // ||R_osc - R_{osc,N}||_{H^{s-1}}
  double gamma_hs1 = 0;
  double theta = 0;
  double psi_hs = 0;          // ||psi||_{H^s}
  double identity_residual = 0;  // relative defect of d/dt(eps tildeR) = R_N + eps tildeR^t
};

struct CorrectorSeries {
  std::vector<CorrectorSample> samples;
  double r_eps_N_l2hs1 = 0;  // L^2-in-time of r_eps_N_hs1
  double gamma_l2hs1 = 0;
  double theta_l1 = 0;
  double identity_residual_max = 0;
};

// advances the limit and filtered systems from U0 over [0, cfg.T], sampling
// every `stride` steps; evaluates the corrector quantities at each sample
CorrectorSeries corrector_diagnostics(Workspace& ws, const WaveFrame& frame,
                                      const ResonantTables& tables, const RunConfig& cfg,
                                      const CorrectorConfig& ccfg, const SpectralField& U0,
                                      const NonResonanceCertificate& cert, int stride = 10);

}  // namespace stratoflow
