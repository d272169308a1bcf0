#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratoflow/limit_forms.hpp"
#include "stratoflow/norms.hpp"
#include "stratoflow/resonance.hpp"
#include "stratoflow/transforms.hpp"
#include "stratoflow/wave_basis.hpp"

namespace stratoflow {

struct RunConfig {
  double epsilon = 1e-2;
  double nu = 0.1;
  double nu_prime = 0.1;
  double dt = 1e-3;
  double T = 1.0;
  bool dealias = true;
  double s = 1.0;  // Sobolev diagnostic exponent, > 1/2
  std::uint64_t seed = 1;
  double blowup_guard = 1e6;   // H^s ceiling for BlowupError
  double cfl_constant = 4.0;   // dt <= cfl_constant / (max(nu,nu') max|nch|^2)
  bool linearized = false;     // drop the transport term

  bool operator==(const RunConfig&) const = default;
  void validate(const TorusSpec& t) const;
};

struct FlowState {
  SpectralField V;
  double t = 0.0;
};

// exact per-frequency flow of D - PA/eps over a step theta (closed form on
// span{e+, e-}; heat on the kernel and degenerate modes), plus its exact
// conjugate for the filtered system
class LinearFlow {
 public:
  LinearFlow(const WaveFrame& frame, double nu, double nu_prime, double epsilon);
  void apply_full(SpectralField& f, double theta) const;
  // filtered flow from absolute time t0 over theta
  void apply_filtered(SpectralField& f, double t0, double theta) const;

 private:
  const WaveFrame& frame_;
  double nu_, nu_prime_, inv_eps_;
};

// P(v . grad V), dealiased on request; energy-neutral on band-limited fields
SpectralField nonlinear_term(Workspace& ws, const SpectralField& V, bool dealias = true);

// one per-step record of the trajectory CSV
struct TrajectoryRow {
  double t = 0, l2 = 0, hs = 0, hs_dissipation_integral = 0, div_residual = 0;
};
std::string trajectory_to_csv(const std::vector<TrajectoryRow>& rows,
                              const std::vector<std::string>& extra_names = {},
                              const std::vector<std::vector<double>>& extra_cols = {});

// Lawson (integrating factor) RK4 for the full system (PBS_eps)
class FullStepper {
 public:
  FullStepper(Workspace& ws, const WaveFrame& frame, const RunConfig& cfg);
  void step(FlowState& st);
  TrajectoryRow diagnostics(const FlowState& st, double diss_integral) const;

 private:
  SpectralField transport(const SpectralField& V);
  Workspace& ws_;
  const WaveFrame& frame_;
  RunConfig cfg_;
  LinearFlow flow_;
};

// Lawson RK4 for the filtered system (S_eps); the nonlinearity is
// Q^eps(U, U) evaluated at exact stage times
class FilteredStepper {
 public:
  FilteredStepper(Workspace& ws, const WaveFrame& frame, const RunConfig& cfg);
  void step(FlowState& st);
  // symmetrized filtered bilinear form at absolute time t
  SpectralField q_eps(double t, const SpectralField& A, const SpectralField& B);

 private:
  SpectralField transport_at(double t, const SpectralField& U);
  Workspace& ws_;
  const WaveFrame& frame_;
  RunConfig cfg_;
  LinearFlow flow_;
};

// limit system state: kernel vorticity (per layer) + oscillating part
struct LimitState {
  SpectralScalar omega_bar;  // curl_h of the kernel flow
  SpectralField uosc;        // span{e+, e-} content
  double t = 0.0;
};

class LimitStepper {
 public:
  // the certificate is required whenever a nonzero oscillating part is
  // evolved; the kernel (bar) system alone needs none
  LimitStepper(Workspace& ws, const WaveFrame& frame, const ResonantTables& tables,
               const RunConfig& cfg, std::optional<NonResonanceCertificate> cert);
  void step(LimitState& st) { step_with(st, cfg_.dt); }
  // raw advance over a caller-chosen step (the corrector's finite differences
  // use tiny and negative steps)
  void step_with(LimitState& st, double h);

  SpectralField bar_field(const LimitState& st) const;  // (u1, u2, 0, 0)
  SpectralField assemble(const LimitState& st) const;   // bar + osc
  // d/dt of the assembled limit solution, via the evolution equations
  SpectralField time_derivative(const LimitState& st);

  SpectralScalar omega_rhs(const LimitState& st);      // -u.grad_h omega + nu lap omega
  SpectralField osc_rhs(const LimitState& st);         // -2Q(bar,osc) + D_osc osc

 private:
  Workspace& ws_;
  const WaveFrame& frame_;
  const ResonantTables& tables_;
  RunConfig cfg_;
  bool certified_ = false;
};

LimitState make_limit_state(const WaveFrame& frame, const SpectralField& U0);

// sampled limit trajectories (one row per step)
struct LimitTrajectory {
  std::vector<double> times;
  std::vector<SpectralScalar> omega_bar;
  std::vector<SpectralField> uosc;
};

// kernel flow alone (2D stratified Navier-Stokes in vorticity form per
// layer, 3D diffusion); initial is a kernel-type field (u_h, 0, 0)
LimitTrajectory solve_limit_bar(Workspace& ws, const WaveFrame& frame,
                                const ResonantTables& tables, const RunConfig& cfg,
                                const SpectralField& initial_bar);

// linear oscillating equation driven by a kernel trajectory; requires a
// certificate for the torus
LimitTrajectory solve_limit_osc(Workspace& ws, const WaveFrame& frame,
                                const ResonantTables& tables, const RunConfig& cfg,
                                const SpectralField& initial_osc,
                                const LimitTrajectory& bar_trajectory,
                                const NonResonanceCertificate& cert);

// a priori bound evaluators (constants C, K, c exposed; defaults per config)
struct AprioriConstants {
  double C = 1.0;
  double K = 2.0;
  std::optional<double> c;  // default: poincare_constant_h(torus)
  double p = kInfinity;     // L^p_v exponent in the gradient norm
  double sigma = -1.0;      // < 0 means "use cfg.s"
};
struct AprioriBounds {
  double Phi = 0, E1 = 0, E2 = 0;
};
AprioriBounds apriori_bounds(Workspace& ws, const WaveFrame& frame, const SpectralField& U0,
                             const RunConfig& cfg, const AprioriConstants& k = {});

// convergence study: for each epsilon, sup_t ||V^eps - L(-t/eps) U||_{H^s}
// and the L^2-in-time H^{s+1} difference
struct ConvergenceRow {
  double epsilon = 0, sup_hs = 0, l2t_hs1 = 0;
};
std::vector<ConvergenceRow> run_convergence_study(Workspace& ws, const WaveFrame& frame,
                                                  const ResonantTables& tables,
                                                  const RunConfig& cfg,
                                                  const std::vector<double>& epsilon_list,
                                                  const SpectralField& V0,
                                                  const NonResonanceCertificate& cert);
std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace stratoflow
