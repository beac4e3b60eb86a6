#include "dform/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dform/norms.hpp"
#include "dform/operators.hpp"

namespace dform {

double PhysicalParams::kappa0() const { return 2.0 * std::numbers::pi / length; }

double PhysicalParams::viscous_time() const {
    const double k0 = kappa0();
    return 1.0 / (nu * k0 * k0);
}

void validate(const PhysicalParams& params) {
    if (!(params.nu > 0.0)) throw std::invalid_argument("viscosity must be positive");
    if (!(params.length > 0.0)) throw std::invalid_argument("domain length must be positive");
    if (params.mu < 0.0) throw std::invalid_argument("relaxation coefficient mu must be non-negative");
}

SpectralField forcing_field(const PhysicalParams& params, int resolution) {
    validate(params);
    SpectralField f(resolution, params.length);
    const int cutoff = f.grid().dealias_cutoff;
    for (const auto& m : params.forcing.modes) {
        if (m.k1 == 0 && m.k2 == 0) throw std::invalid_argument("forcing mode k = 0 is not zero-mean");
        if (std::abs(m.k1) > cutoff || std::abs(m.k2) > cutoff)
            throw std::invalid_argument("forcing mode outside the dealiased band of the grid");
        // sin(k.x) = (e^{ik.x} - e^{-ik.x}) / 2i: coefficient -i a / 2 at +k.
        const Complex half_i{0.0, -0.5};
        const double amps[2] = {m.amp1, m.amp2};
        for (int c = 0; c < 2; ++c) {
            const Complex current = f.mode(c, m.k1, m.k2);
            f.set_mode(c, m.k1, m.k2, current + half_i * amps[c]);
        }
    }
    leray_project_in_place(f);
    return f;
}

double forcing_norm(const PhysicalParams& params) {
    int kmax = 1;
    for (const auto& m : params.forcing.modes) kmax = std::max({kmax, std::abs(m.k1), std::abs(m.k2)});
    int n = std::max(16, 3 * kmax + 2);
    if (n % 2 != 0) ++n;
    return norm_h(forcing_field(params, n));
}

double grashof(const PhysicalParams& params) {
    validate(params);
    const double k0 = params.kappa0();
    return forcing_norm(params) / (params.nu * params.nu * k0 * k0);
}

PhysicalParams kolmogorov_params(double nu, double length, int mode, double target_grashof) {
    if (mode < 1) throw std::invalid_argument("Kolmogorov forcing mode must be >= 1");
    if (target_grashof < 0.0) throw std::invalid_argument("target Grashof number must be >= 0");
    PhysicalParams p;
    p.nu = nu;
    p.length = length;
    validate(p);
    // |a sin(j kappa0 x2)| = a L / sqrt(2)
    const double k0 = p.kappa0();
    const double amplitude = target_grashof * nu * nu * k0 * k0 * std::numbers::sqrt2 / length;
    if (amplitude > 0.0) p.forcing.modes.push_back({0, mode, amplitude, 0.0});
    return p;
}

double steady_residual_norm(const PhysicalParams& params, const SpectralField& u) {
    SpectralField r = stokes_apply(u, 1.0);
    r *= params.nu;
    r += bilinear_self(u);
    r -= forcing_field(params, u.resolution());
    return norm_h(r);
}

SpectralField steady_state(const PhysicalParams& params, int resolution) {
    SpectralField u = stokes_apply(forcing_field(params, resolution), -1.0);
    u *= 1.0 / params.nu;
    const double fnorm = forcing_norm(params);
    if (steady_residual_norm(params, u) > 1e-12 * std::max(fnorm, 1e-300) && fnorm > 0.0)
        throw std::invalid_argument("forcing does not admit the Stokes solution as a steady state");
    return u;
}

}  // namespace dform
