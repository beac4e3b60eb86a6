#pragma once

#include "dform/field.hpp"

namespace dform {

/// Helmholtz-Leray projection u_k - k (k . u_k) / |k|^2. Throws
/// std::invalid_argument when the input mean is not zero (relative 1e-12).
SpectralField leray_project(const SpectralField& field);

/// Projection without the mean check; the mean is set to zero.
void leray_project_in_place(SpectralField& u);

/// A^alpha u: multiplies coefficient k by (kappa0^2 |k|^2)^alpha, alpha in [-1, 2].
SpectralField stokes_apply(const SpectralField& u, double alpha);

/// Zeroes the mean and every coefficient outside the 2/3-rule band.
void dealias(SpectralField& u);

/// B(u, v) = P((u . grad) v), pseudo-spectral with 2/3-rule dealiasing.
/// Inputs are truncated to the dealiased band first, so B is exactly the
/// Galerkin-truncated bilinear form on that band.
SpectralField bilinear(const SpectralField& u, const SpectralField& v);

/// B(u, u) via the rotational form P(omega z x u); equal to bilinear(u, u)
/// to round-off, with five transforms instead of eight.
SpectralField bilinear_self(const SpectralField& u);

/// Scalar vorticity omega = d1 u2 - d2 u1, stored in component 0.
SpectralField vorticity(const SpectralField& u);

/// Spatial derivative d/dx_dir (dir = 0 or 1) of both components.
SpectralField derivative(const SpectralField& u, int dir);

}  // namespace dform
