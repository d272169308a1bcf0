#pragma once

#include "stratoflow/transforms.hpp"

namespace stratoflow {

// Physical-space norms use the normalized (mean) measure: L^p means
// (vol^-1 int |f|^p)^{1/p}, so Plancherel is exact, sobolev_norm(f,0)
// equals the coefficient l2, and a constant c has every L^p norm |c|.

#include <limits>

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();  // p = inf marker

enum class MixedOrder { HV, VH };  // HV = L^p_h L^q_v (horizontal outer)

double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const SpectralScalar& f, double s);
// sum (1+|nch_h|^2)^s (1+|nch_3|^2)^{s'} |u_n|^2
double aniso_sobolev_norm(const SpectralField& f, double s, double sp);

// H^s norm of the gradient, i.e. (sum |nch|^2 (1+|nch|^2)^s |u_n|^2)^{1/2}
double grad_sobolev_norm(const SpectralField& f, double s);
double grad_sobolev_norm(const SpectralScalar& f, double s);

double lp_norm(Workspace& ws, const SpectralField& f, double p);
double lp_norm(Workspace& ws, const SpectralScalar& f, double p);

double aniso_lebesgue_norm(Workspace& ws, const SpectralField& f, double p, double q,
                           MixedOrder order);
double aniso_lebesgue_norm(Workspace& ws, const SpectralScalar& f, double p, double q,
                           MixedOrder order);

// L^p_v(H^sigma_h)
double lpv_hsigma_norm(Workspace& ws, const SpectralField& f, double p, double sigma);
// L^p_v(L^2_h) convenience (the decay diagnostics use it)
double lpv_l2h_norm(Workspace& ws, const SpectralField& f, double p);

}  // namespace stratoflow
