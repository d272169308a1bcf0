#pragma once

#include "stratoflow/spectral_field.hpp"

namespace stratoflow {

// Smooth Littlewood-Paley pair: supp chi in B(0, 4/3), supp phi in the
// annulus (3/4, 8/3), chi(t) + sum_{q>=0} phi(2^-q t) = 1.
double lp_chi(double t);
double lp_phi(double t);

enum class DyadicAxis { Isotropic, Horizontal };

// Delta_q: multiplies coefficients by phi(|nch|/2^q) (chi(|nch|) for q = -1);
// zero for q <= -2. Horizontal variant uses |nch_h|.
SpectralField dyadic_block(const SpectralField& f, int q, DyadicAxis axis = DyadicAxis::Isotropic);
SpectralScalar dyadic_block(const SpectralScalar& f, int q, DyadicAxis axis = DyadicAxis::Isotropic);

// S_q = sum_{q' <= q-1} Delta_q'
SpectralField low_frequency_cutoff(const SpectralField& f, int q,
                                   DyadicAxis axis = DyadicAxis::Isotropic);

// largest q with nonempty block on this grid
int max_dyadic_index(const TorusSpec& t);

// max_t |chi(t) + sum phi(2^-q t) - 1| over a sample grid (numerical check)
double partition_of_unity_defect(double tmax, int samples);

}  // namespace stratoflow
