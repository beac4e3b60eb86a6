#include "dform/nse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dform/error.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/random_field.hpp"
#include "dform/seed.hpp"

namespace dform {

namespace {

double feedback_coefficient(const PhysicalParams& params) {
    const double k0 = params.kappa0();
    return params.mu * params.nu * k0 * k0;
}

bool implicit_feedback(const InterpolantSpec& J, const SolverConfig& config) {
    return config.implicit_modal_feedback && J.kind == InterpolantKind::modal;
}

void check_finite(const SpectralField& u, double t) {
    const double size = norm_h(u);
    if (!std::isfinite(size) || size > 1e150) {
        std::ostringstream msg;
        msg << "solution blew up at t = " << t << " (|u| = " << size << ")";
        throw NumericalError(msg.str());
    }
}

/// Shared time loop: steps the state, records diagnostics on field 0.
RunResult run_loop(Stepper& stepper, State& state, double t0, long long steps, const SolverConfig& config,
                   const RunOptions& options) {
    RunResult result;
    double t = t0;
    const long long every =
        options.record_every > 0.0 ? std::max(1LL, static_cast<long long>(std::llround(options.record_every / stepper.dt())))
                                   : std::max(1LL, steps);
    bool cfl_warned = false;
    const auto record = [&](double s) {
        const SpectralField& u = state[0];
        result.diagnostics.push_back(diagnostics_row(s, u, options.reference));
        if (options.on_record) options.on_record(s, u);
        if (!cfl_warned) {
            const double cfl = norm_linf(u) * stepper.dt() * config.resolution / u.length();
            if (cfl > 1.0) {
                std::ostringstream msg;
                msg << "CFL number " << cfl << " exceeds 1 at t = " << s;
                result.warnings.push_back(msg.str());
                cfl_warned = true;
            }
        }
    };
    record(t);
    for (long long n = 1; n <= steps; ++n) {
        stepper.step(t, state);
        t = t0 + static_cast<double>(n) * stepper.dt();
        check_finite(state[0], t);
        if (n % every == 0 || n == steps) record(t);
    }
    result.final = state[0];
    result.time = t;
    return result;
}

}  // namespace

DiagnosticsRow diagnostics_row(double s, const SpectralField& u, const SpectralField* reference) {
    DiagnosticsRow row;
    row.s = s;
    const double h = norm_h(u);
    row.norm_V = norm_v(u);
    row.norm_DA = norm_da(u);
    row.E = 0.5 * h * h;
    row.Z = 0.5 * row.norm_V * row.norm_V;
    if (reference) {
        const SpectralField d = u - *reference;
        row.delta_H = norm_h(d);
        row.delta_V = norm_v(d);
        row.delta_DA = norm_da(d);
    }
    return row;
}

RunResult integrate_nse(const SpectralField& u0, const PhysicalParams& params, const SolverConfig& config, double T,
                        const RunOptions& options, double t0) {
    validate(config);
    validate(params);
    if (u0.resolution() != config.resolution) throw std::invalid_argument("initial field resolution does not match config");
    const auto plan = plan_steps(T, config.dt);
    std::vector<LinearPart> linear{{viscous_rate(config.resolution, params.length, params.nu),
                                    forcing_field(params, config.resolution)}};
    Stepper stepper(config.integrator, plan.dt, std::move(linear), [](double, const State& u, State& out) {
        out[0] = bilinear_self(u[0]);
        out[0] *= -1.0;
    });
    State state{u0};
    return run_loop(stepper, state, t0, plan.steps, config, options);
}

void check_feedback_step(const PhysicalParams& params, const InterpolantSpec& J, const SolverConfig& config) {
    const double coeff = feedback_coefficient(params);
    if (coeff > 0.0 && !implicit_feedback(J, config) && !(config.dt * coeff < 1.0)) {
        std::ostringstream msg;
        msg << "dt = " << config.dt << " violates the explicit feedback restriction dt < 1/(mu nu kappa0^2) = "
            << 1.0 / coeff;
        throw std::invalid_argument(msg.str());
    }
}

SpectralField nudged_rhs(const SpectralField& w, const SpectralField& v, const PhysicalParams& params,
                         const InterpolantSpec& J) {
    SpectralField out = forcing_field(params, w.resolution());
    SpectralField aw = stokes_apply(w, 1.0);
    out.axpy(-params.nu, aw);
    out -= bilinear_self(w);
    const double coeff = feedback_coefficient(params);
    if (coeff > 0.0) {
        SpectralField gap = apply_interpolant(J, w);
        gap -= v;
        leray_project_in_place(gap);
        out.axpy(-coeff, gap);
    }
    return out;
}

RunResult integrate_nudged(const SpectralField& w0, const FieldProvider& v, const PhysicalParams& params,
                           const InterpolantSpec& J, const SolverConfig& config, double T, const RunOptions& options,
                           double t0) {
    validate(config);
    validate(params);
    if (w0.resolution() != config.resolution) throw std::invalid_argument("initial field resolution does not match config");
    const auto plan = plan_steps(T, config.dt);
    SolverConfig effective = config;
    effective.dt = plan.dt;
    check_feedback_step(params, J, effective);
    const double coeff = feedback_coefficient(params);
    const bool implicit = implicit_feedback(J, config);

    std::vector<double> rate = viscous_rate(config.resolution, params.length, params.nu);
    if (implicit && coeff > 0.0) {
        const auto& g = SpectralGrid::get(config.resolution);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!g.nyquist[i] && g.ksq[i] > 0.0 && g.ksq[i] <= J.resolution) rate[i] += coeff;
    }
    std::vector<LinearPart> linear{{std::move(rate), forcing_field(params, config.resolution)}};

    NonlinearFn fn;
    if (coeff == 0.0) {
        fn = [](double, const State& u, State& out) {
            out[0] = bilinear_self(u[0]);
            out[0] *= -1.0;
        };
    } else if (implicit) {
        fn = [&v, coeff](double t, const State& u, State& out) {
            SpectralField data = v(t);
            require_same_grid(data, u[0], "integrate_nudged");
            leray_project_in_place(data);
            out[0] = bilinear_self(u[0]);
            out[0] *= -1.0;
            out[0].axpy(coeff, data);
        };
    } else {
        fn = [&v, &J, coeff](double t, const State& u, State& out) {
            const SpectralField data = v(t);
            require_same_grid(data, u[0], "integrate_nudged");
            SpectralField gap = apply_interpolant(J, u[0]);
            gap -= data;
            leray_project_in_place(gap);
            out[0] = bilinear_self(u[0]);
            out[0] *= -1.0;
            out[0].axpy(-coeff, gap);
        };
    }
    Stepper stepper(config.integrator, plan.dt, std::move(linear), std::move(fn));
    State state{w0};
    return run_loop(stepper, state, t0, plan.steps, effective, options);
}

SpectralField initial_field(const PhysicalParams& params, const SolverConfig& config) {
    std::mt19937_64 rng(derive_seed(config.seed, "spin_up"));
    SpectralField u = random_solenoidal(config.resolution, params.length, 0, -3.0, rng);
    const double k0 = params.kappa0();
    const double target = 0.5 * params.nu * k0 * std::max(grashof(params), 1.0);
    u *= target / norm_v(u);
    return u;
}

SpinUpResult spin_up(const PhysicalParams& params, const SolverConfig& config, double tol) {
    validate(config);
    const double G = grashof(params);
    const double k0 = params.kappa0();
    const double tv = params.viscous_time();
    SpectralField u = initial_field(params, config);
    const double T = config.spin_up_time;
    const double tail = std::min(tv, T);
    if (T > tail) u = integrate_nse(u, params, config, T - tail).final;

    // Trapezoidal average of |Au|^2 and the running max of |Au| over the tail.
    SpinUpResult out;
    double integral = 0.0;
    double last_s = 0.0;
    double last_val = 0.0;
    bool first = true;
    double max_au = 0.0;
    RunOptions opts;
    opts.record_every = config.dt;
    opts.on_record = [&](double s, const SpectralField& w) {
        const double au = norm_da(w);
        max_au = std::max(max_au, au);
        const double val = au * au;
        if (!first) integral += 0.5 * (val + last_val) * (s - last_s);
        first = false;
        last_s = s;
        last_val = val;
    };
    auto run = integrate_nse(u, params, config, tail, opts, T - tail);
    out.u = std::move(run.final);
    out.time = T;
    const double scale = params.nu * k0 * G;
    const double size = norm_v(out.u);
    out.norm_ratio = scale > 0.0 ? size / scale : (size > 0.0 ? INFINITY : 0.0);
    out.norm_bound_ok = size <= scale * (1.0 + tol) + 1e-6 * params.nu * k0;
    out.mean_Au2 = tail > 0.0 ? integral / tail : last_val;
    out.mean_Au2_bound = 2.0 * std::pow(params.nu * k0 * k0 * G, 2);
    out.mean_bound_ok = out.mean_Au2 <= out.mean_Au2_bound * (1.0 + tol) + 1e-12 * std::pow(params.nu * k0 * k0, 2);
    out.c0_sample = G > 0.0 ? max_au / (params.nu * k0 * k0 * G * G * G) : 0.0;
    return out;
}

}  // namespace dform
