#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dform/field.hpp"
#include "dform/integrator.hpp"
#include "dform/interpolant.hpp"
#include "dform/params.hpp"

namespace dform {

/// One row of the diagnostics CSV. delta_* measure the difference to a
/// reference field (zero when none is supplied).
struct DiagnosticsRow {
    double s = 0.0;
    double E = 0.0;
    double Z = 0.0;
    double norm_V = 0.0;
    double norm_DA = 0.0;
    double delta_H = 0.0;
    double delta_V = 0.0;
    double delta_DA = 0.0;
};

DiagnosticsRow diagnostics_row(double s, const SpectralField& u, const SpectralField* reference);

/// Supplies v(s) for the nudged equation; throws when s is not covered.
using FieldProvider = std::function<SpectralField(double s)>;

struct RunOptions {
    /// Diagnostics cadence in time units; 0 records only the endpoints.
    double record_every = 0.0;
    const SpectralField* reference = nullptr;
    /// Called at each record time with the current field.
    std::function<void(double s, const SpectralField& u)> on_record;
};

struct RunResult {
    SpectralField final;
    double time = 0.0;
    std::vector<DiagnosticsRow> diagnostics;
    std::vector<std::string> warnings;
};

/// du/dt + nu A u + B(u, u) = f from t0 over a span T. Throws NumericalError
/// when the solution stops being finite.
RunResult integrate_nse(const SpectralField& u0, const PhysicalParams& params, const SolverConfig& config, double T,
                        const RunOptions& options = {}, double t0 = 0.0);

/// dw/ds + nu A w + B(w, w) = f - mu nu kappa0^2 P(J w - v(s)), params.mu
/// supplying mu. The feedback term is explicit and requires
/// dt < 1 / (mu nu kappa0^2), unless config.implicit_modal_feedback is set
/// and J is modal. With mu = 0 the step sequence is that of integrate_nse.
RunResult integrate_nudged(const SpectralField& w0, const FieldProvider& v, const PhysicalParams& params,
                           const InterpolantSpec& J, const SolverConfig& config, double T,
                           const RunOptions& options = {}, double t0 = 0.0);

/// Right side f - nu A w - B(w, w) - mu nu kappa0^2 P(J w - v).
SpectralField nudged_rhs(const SpectralField& w, const SpectralField& v, const PhysicalParams& params,
                         const InterpolantSpec& J);

/// Checks the explicit-feedback step restriction; throws std::invalid_argument.
void check_feedback_step(const PhysicalParams& params, const InterpolantSpec& J, const SolverConfig& config);

struct SpinUpResult {
    SpectralField u;
    double time = 0.0;
    /// ||u(T)|| / (nu kappa0 G)
    double norm_ratio = 0.0;
    bool norm_bound_ok = false;
    /// (1/T) int |Au|^2 over the final viscous time, and 2 nu^2 kappa0^4 G^2.
    double mean_Au2 = 0.0;
    double mean_Au2_bound = 0.0;
    bool mean_bound_ok = false;
    /// max |Au| / (nu kappa0^2 G^3) over the final viscous time.
    double c0_sample = 0.0;
};

/// Integrates a seeded random initial field for config.spin_up_time and
/// checks the absorbing-ball bounds (relative tolerance `tol`).
SpinUpResult spin_up(const PhysicalParams& params, const SolverConfig& config, double tol = 1e-3);

/// Seeded random initial field with ||u0|| = 0.5 nu kappa0 max(G, 1).
SpectralField initial_field(const PhysicalParams& params, const SolverConfig& config);

}  // namespace dform
