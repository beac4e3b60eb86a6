#pragma once

#include <vector>

#include "dform/field.hpp"

namespace dform {

/// One forcing term (amp1, amp2) sin(kappa0 k . x); the projected sum is f.
struct ForcingMode {
    int k1 = 0;
    int k2 = 1;
    double amp1 = 0.0;
    double amp2 = 0.0;
};

struct ForcingSpec {
    std::vector<ForcingMode> modes;
};

struct PhysicalParams {
    double nu = 1.0;
    double length = 6.283185307179586;
    ForcingSpec forcing;
    /// Relaxation coefficient; multiplies nu kappa0^2 in the feedback term.
    double mu = 0.0;

    double kappa0() const;
    /// 1 / (nu kappa0^2)
    double viscous_time() const;
};

/// Throws std::invalid_argument unless nu > 0 and L > 0.
void validate(const PhysicalParams& params);

/// f = P(sum of forcing modes) on an n x n grid. Every mode must lie inside
/// the dealiased band of the grid.
SpectralField forcing_field(const PhysicalParams& params, int resolution);

/// |f| after projection.
double forcing_norm(const PhysicalParams& params);

/// G = |f| / (nu^2 kappa0^2).
double grashof(const PhysicalParams& params);

/// Kolmogorov forcing f = a (sin(j kappa0 x2), 0) with a chosen so that
/// grashof() returns `target_grashof`.
PhysicalParams kolmogorov_params(double nu, double length, int mode, double target_grashof);

/// (nu A)^{-1} f, returned only when it solves the steady NSE
/// (residual |nu A u + B(u, u) - f| <= 1e-12 |f|), as it does for shear forcing.
SpectralField steady_state(const PhysicalParams& params, int resolution);

/// |nu A u + B(u, u) - f| for a candidate steady state.
double steady_residual_norm(const PhysicalParams& params, const SpectralField& u);

}  // namespace dform
