#pragma once

#include <string>
#include <vector>

#include "dform/field.hpp"
#include "dform/integrator.hpp"
#include "dform/interpolant.hpp"
#include "dform/params.hpp"
#include "dform/trajectory.hpp"

namespace dform {

struct DFormConfig {
    double mu = 10.0;
    /// Relaxation length before the window (absolute time).
    double t_pre = 10.0;
    /// Ball radius and constant checked against the input and mu.
    double rho = 0.0;
    double K = 0.0;
    double R = 0.0;
    /// Lower end of the admissible mu range for W; 0 skips the check.
    double mu_min_W = 0.0;
    SolverConfig solver;
    /// Steady state u*.
    SpectralField u_star;
};

struct WResult {
    Trajectory w;
    std::vector<std::string> warnings;
};

/// Bounded solution of the nudged equation driven by v on the window of v:
/// w = 0 at s0 - t_pre, v held at v(s0) before the window, integrated to s1.
/// w' is the nudged right side at each sample. v.ds must be a whole number
/// of time steps.
WResult compute_W(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J, const DFormConfig& config);

/// g(v) = ||v - J W(v)||_{X,0}.
double g_value(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J, const DFormConfig& config);

struct PreWindowCalibration {
    double t_pre = 0.0;
    /// Relative window change between t_pre / 2 and t_pre.
    double change = 0.0;
    int doublings = 0;
};

/// Doubles t_pre (from config.t_pre) until the window restriction of W(v)
/// changes by less than `tol` relative. Throws NumericalError after
/// `max_doublings` without convergence.
PreWindowCalibration calibrate_pre_window(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J,
                                          const DFormConfig& config, double tol = 1e-8, int max_doublings = 6);

struct EvolutionRow {
    double t = 0.0;
    double a = 0.0;
    double g = 0.0;
    double xnorm_dist = 0.0;
};

struct EvolutionRecord {
    std::vector<EvolutionRow> rows;
    /// da/dt at the last row.
    double final_rate = 0.0;
    bool converged = false;
    std::size_t g_evaluations = 0;
    std::string error;
};

struct EvolveOptions {
    double t_end = 1e6;
    double rtol = 1e-6;
    double atol = 1e-12;
    /// Stop once |da/dt| falls below this.
    double rate_tol = 1e-8;
    std::size_t max_steps = 100000;
};

/// dv/dt = -g(v)^2 (v - J u*) along the ray v = J u* + a (v0 - J u*):
/// da/dt = -g^2 a, a(0) = 1, by Dormand-Prince 5(4). A failing g
/// evaluation ends the run with a partial record and `error` set.
EvolutionRecord evolve_determining_form(const Trajectory& v0, const PhysicalParams& params, const InterpolantSpec& J,
                                        const DFormConfig& config, const EvolveOptions& options = {});

/// g(J u_run).
double steady_residual(const Trajectory& u_run, const PhysicalParams& params, const InterpolantSpec& J,
                       const DFormConfig& config);

/// F(v) = -g(v)^2 (v - J u*) as a trajectory.
Trajectory determining_form_rhs(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J,
                                const DFormConfig& config);

/// Cosine of the angle between two trajectories in the sampled inner
/// product sum_s (A^{1/2} x(s), A^{1/2} y(s)).
double trajectory_cosine(const Trajectory& x, const Trajectory& y);

struct DiscretizationFloor {
    double g_coarse = 0.0;
    double g_fine = 0.0;
    double epsilon = 0.0;
};

/// g(J u) from an NSE run sampled at (dt, ds) and at (dt/2, ds/2), both
/// started from u0 at s0; epsilon = max(10 |g_coarse - g_fine|,
/// 1e-11 ||J u||_{X,0}).
DiscretizationFloor discretization_floor(const SpectralField& u0, double s0, double window, double ds,
                                         const PhysicalParams& params, const InterpolantSpec& J,
                                         const DFormConfig& config);

struct WAuditRow {
    double s = 0.0;
    double norm_w = 0.0;
    double norm_dw = 0.0;
    double norm_Aw = 0.0;
};

std::vector<WAuditRow> w_audit(const Trajectory& w);

}  // namespace dform
