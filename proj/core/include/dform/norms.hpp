#pragma once

#include "dform/field.hpp"

namespace dform {

/// The norms used throughout: |u|, ||u|| = |A^{1/2} u|, |Au|, |A^{3/2} u|, ||u||_inf.
struct NormBundle {
    double h = 0.0;
    double v = 0.0;
    double da = 0.0;
    double a32 = 0.0;
    double linf = 0.0;
};

/// L^2 inner product (u, v) = L^2 sum_k Re(u_k . conj(v_k)).
double inner(const SpectralField& u, const SpectralField& v);

/// |A^alpha u| computed from Parseval; for non-solenoidal fields this is
/// the corresponding power of -Delta.
double power_norm(const SpectralField& u, double alpha);

inline double norm_h(const SpectralField& u) { return power_norm(u, 0.0); }
inline double norm_v(const SpectralField& u) { return power_norm(u, 0.5); }
inline double norm_da(const SpectralField& u) { return power_norm(u, 1.0); }

/// Max over the collocation grid of the pointwise Euclidean magnitude.
/// Under-estimates the true supremum; converges with resolution.
double norm_linf(const SpectralField& u);

/// L^4 norm of the pointwise magnitude, evaluated on a grid padded to 2n so
/// the quadrature is exact for band-limited fields.
double norm_l4(const SpectralField& u);

NormBundle norms(const SpectralField& u);

}  // namespace dform
