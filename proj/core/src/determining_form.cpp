#include "dform/determining_form.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dform/error.hpp"
#include "dform/nse.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"

namespace dform {

namespace {

PhysicalParams with_mu(const PhysicalParams& params, double mu) {
    PhysicalParams p = params;
    p.mu = mu;
    return p;
}

/// Max over samples of ||x(s) - y(s)|| relative to max ||y(s)||.
double relative_window_change(const Trajectory& x, const Trajectory& y) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        diff = std::max(diff, norm_v(x.values[i] - y.values[i]));
        scale = std::max(scale, norm_v(y.values[i]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

WResult compute_W(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J, const DFormConfig& config) {
    validate(v);
    if (config.t_pre < 0.0) throw std::invalid_argument("pre-window length must be >= 0");
    SolverConfig solver = config.solver;
    solver.resolution = v.values.front().resolution();
    if (v.size() > 1) steps_per_sample(v.ds, solver.dt);
    const PhysicalParams p = with_mu(params, config.mu);

    WResult out;
    if (config.rho > 0.0 && v.has_derivatives()) {
        const double xv = x_norms(v, params).x;
        if (xv > config.rho) {
            std::ostringstream msg;
            msg << "input ||v||_X = " << xv << " exceeds rho = " << config.rho;
            out.warnings.push_back(msg.str());
        }
    }
    if (config.mu_min_W > 0.0 && config.mu < config.mu_min_W) {
        std::ostringstream msg;
        msg << "mu = " << config.mu << " is below the sufficient bound " << config.mu_min_W;
        out.warnings.push_back(msg.str());
    }

    const FieldProvider provider = hermite_provider(v);
    SpectralField w(solver.resolution, v.values.front().length());
    if (config.t_pre > 0.0) {
        try {
            w = integrate_nudged(w, provider, p, J, solver, config.t_pre, {}, v.s0 - config.t_pre).final;
        } catch (const NumericalError& e) {
            throw NumericalError(std::string("W relaxation failed in the pre-window: ") + e.what());
        }
    }
    Trajectory& traj = out.w;
    traj.s0 = v.s0;
    traj.ds = v.ds;
    RunOptions opts;
    opts.record_every = v.ds;
    opts.on_record = [&](double, const SpectralField& f) {
        if (traj.values.size() < v.size()) traj.values.push_back(f);
    };
    try {
        integrate_nudged(w, provider, p, J, solver, v.window(), opts, v.s0);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("W relaxation failed in the window: ") + e.what());
    }
    if (traj.values.size() != v.size()) throw std::logic_error("compute_W recorded an unexpected number of samples");
    for (std::size_t i = 0; i < v.size(); ++i) traj.derivatives.push_back(nudged_rhs(traj.values[i], v.values[i], p, J));
    return out;
}

double g_value(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J, const DFormConfig& config) {
    const WResult W = compute_W(v, params, J, config);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        SpectralField gap = apply_interpolant(J, W.w.values[i]);
        gap -= v.values[i];
        worst = std::max(worst, norm_v(gap));
    }
    return worst / (params.nu * params.kappa0());
}

PreWindowCalibration calibrate_pre_window(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J,
                                          const DFormConfig& config, double tol, int max_doublings) {
    if (!(config.t_pre > 0.0)) throw std::invalid_argument("calibration needs a positive starting pre-window");
    DFormConfig cfg = config;
    Trajectory current = compute_W(v, params, J, cfg).w;
    PreWindowCalibration out;
    for (int d = 0; d < max_doublings; ++d) {
        DFormConfig longer = cfg;
        longer.t_pre = 2.0 * cfg.t_pre;
        Trajectory next = compute_W(v, params, J, longer).w;
        out.change = relative_window_change(current, next);
        out.doublings = d;
        if (out.change < tol) {
            out.t_pre = cfg.t_pre;
            return out;
        }
        cfg = longer;
        current = std::move(next);
    }
    std::ostringstream msg;
    msg << "pre-window calibration did not converge (last change " << out.change << ")";
    throw NumericalError(msg.str());
}

Trajectory determining_form_rhs(const Trajectory& v, const PhysicalParams& params, const InterpolantSpec& J,
                                const DFormConfig& config) {
    const Trajectory ju_star = constant_trajectory(apply_interpolant(J, config.u_star), v);
    const Trajectory d = combine(1.0, v, -1.0, ju_star);
    const double g = g_value(v, params, J, config);
    return combine(-g * g, d, 0.0, d);
}

double trajectory_cosine(const Trajectory& x, const Trajectory& y) {
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const SpectralField gx = stokes_apply(x.values[i], 0.5);
        const SpectralField gy = stokes_apply(y.values[i], 0.5);
        xy += inner(gx, gy);
        xx += inner(gx, gx);
        yy += inner(gy, gy);
    }
    if (xx == 0.0 || yy == 0.0) return 0.0;
    return xy / std::sqrt(xx * yy);
}

EvolutionRecord evolve_determining_form(const Trajectory& v0, const PhysicalParams& params, const InterpolantSpec& J,
                                        const DFormConfig& config, const EvolveOptions& options) {
    validate(v0);
    if (config.u_star.empty()) throw std::invalid_argument("determining form needs the steady state u*");
    const Trajectory ju_star = constant_trajectory(apply_interpolant(J, config.u_star), v0);
    const Trajectory d = combine(1.0, v0, -1.0, ju_star);
    const double d_norm = v0.has_derivatives() ? x_norms(d, params).x : x_norms(d, params).x0;

    EvolutionRecord rec;
    std::map<double, double> cache;
    const auto g_at = [&](double a) {
        if (auto it = cache.find(a); it != cache.end()) return it->second;
        ++rec.g_evaluations;
        const double g = g_value(combine(1.0, ju_star, a, d), params, J, config);
        cache.emplace(a, g);
        return g;
    };
    const auto rhs = [&](double a) {
        const double g = g_at(a);
        return -g * g * a;
    };

    // Dormand-Prince 5(4) tableau.
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                            e6 = 187.0 / 2100, e7 = 1.0 / 40;

    double t = 0.0;
    double a = 1.0;
    try {
        double k1 = rhs(a);
        rec.rows.push_back({t, a, g_at(a), a * d_norm});
        rec.final_rate = k1;
        if (std::abs(k1) < options.rate_tol) {
            rec.converged = true;
            return rec;
        }
        double h = std::min(options.t_end, 0.1 / std::abs(k1 / a));
        for (std::size_t step = 0; step < options.max_steps && t < options.t_end; ++step) {
            h = std::min(h, options.t_end - t);
            const double k2 = rhs(a + h * a21 * k1);
            const double k3 = rhs(a + h * (a31 * k1 + a32 * k2));
            const double k4 = rhs(a + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const double k5 = rhs(a + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const double k6 = rhs(a + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const double a5 = a + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const double k7 = rhs(a5);
            const double a4 = a + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double scale = options.atol + options.rtol * std::max(std::abs(a), std::abs(a5));
            const double err = std::abs(a5 - a4) / scale;
            if (err <= 1.0) {
                t += h;
                a = a5;
                k1 = k7;
                rec.rows.push_back({t, a, g_at(a), std::abs(a) * d_norm});
                rec.final_rate = k1;
                if (std::abs(k1) < options.rate_tol) {
                    rec.converged = true;
                    break;
                }
            }
            const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
            // Keep trial points of the cache bounded to the current step.
            if (cache.size() > 64) {
                const double keep = g_at(a);
                cache.clear();
                cache.emplace(a, keep);
            }
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

double steady_residual(const Trajectory& u_run, const PhysicalParams& params, const InterpolantSpec& J,
                       const DFormConfig& config) {
    return g_value(apply_interpolant(J, u_run), params, J, config);
}

DiscretizationFloor discretization_floor(const SpectralField& u0, double s0, double window, double ds,
                                         const PhysicalParams& params, const InterpolantSpec& J,
                                         const DFormConfig& config) {
    PhysicalParams plain = params;
    plain.mu = 0.0;
    DFormConfig fine = config;
    fine.solver.dt = 0.5 * config.solver.dt;
    const Trajectory coarse_run = sample_nse(u0, plain, config.solver, s0, window, ds);
    const Trajectory fine_run = sample_nse(u0, plain, fine.solver, s0, window, 0.5 * ds);
    DiscretizationFloor out;
    out.g_coarse = steady_residual(coarse_run, params, J, config);
    out.g_fine = steady_residual(fine_run, params, J, fine);
    const double scale = x_norms(apply_interpolant(J, coarse_run), params).x0;
    out.epsilon = std::max(10.0 * std::abs(out.g_coarse - out.g_fine), 1e-11 * scale);
    return out;
}

std::vector<WAuditRow> w_audit(const Trajectory& w) {
    validate(w);
    std::vector<WAuditRow> rows;
    for (std::size_t i = 0; i < w.size(); ++i) {
        WAuditRow row;
        row.s = w.time(i);
        row.norm_w = norm_v(w.values[i]);
        row.norm_dw = w.has_derivatives() ? norm_v(w.derivatives[i]) : 0.0;
        row.norm_Aw = norm_da(w.values[i]);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dform
