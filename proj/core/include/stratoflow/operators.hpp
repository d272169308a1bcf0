#pragma once

#include "stratoflow/spectral_field.hpp"

namespace stratoflow {

// Leray projector: P_n = delta_ij - nch_i nch_j / |nch|^2 on (v1,v2,v3),
// identity on theta; identity at n = 0 (that coefficient is pinned anyway).
SpectralField leray_project(const SpectralField& f);
C4 leray_project_mode(const TorusSpec& t, Idx3 n, const C4& v);

// i sum_j nch_j v_j per frequency
SpectralScalar divergence(const SpectralField& f);
double divergence_residual(const SpectralField& f);  // max_n |div| / max(1, l2)

// scalar Fourier multipliers
SpectralScalar curl_h(const SpectralField& f);                  // -d2 v1 + d1 v2
SpectralScalar laplacian(const SpectralScalar& f);              // -|nch|^2
SpectralScalar horizontal_laplacian(const SpectralScalar& f);   // -|nch_h|^2
// inverse horizontal operators; DomainError when n_h = 0 content is present
SpectralScalar inverse_horizontal_laplacian(const SpectralScalar& f);
SpectralScalar inverse_horizontal_sqrt_laplacian(const SpectralScalar& f);  // symbol 1/(i|nch_h|)

// gradient families applied to a scalar
void gradient(const SpectralScalar& f, SpectralScalar& d1, SpectralScalar& d2, SpectralScalar& d3);
void horizontal_gradient(const SpectralScalar& f, SpectralScalar& d1, SpectralScalar& d2);
void horizontal_gradient_perp(const SpectralScalar& f, SpectralScalar& d1, SpectralScalar& d2);

// per-layer 2D Biot-Savart u = grad_h^perp lap_h^{-1} omega
// (u1, u2 returned in the first two components, 0 elsewhere)
SpectralField biot_savart(const SpectralScalar& omega);

}  // namespace stratoflow
