#include "dform/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "dform/norms.hpp"
#include "dform/operators.hpp"

namespace dform {

void validate(const Trajectory& v) {
    if (v.empty()) throw std::invalid_argument("trajectory window is empty");
    if (v.size() > 1 && !(v.ds > 0.0)) throw std::invalid_argument("trajectory spacing must be positive");
    if (v.has_derivatives() && v.derivatives.size() != v.values.size())
        throw std::invalid_argument("trajectory derivative count does not match value count");
    for (const auto& f : v.values) require_same_grid(f, v.values.front(), "trajectory");
    for (const auto& f : v.derivatives) require_same_grid(f, v.values.front(), "trajectory");
}

XNorms x_norms(const Trajectory& v, const PhysicalParams& params) {
    validate(v);
    const double k0 = params.kappa0();
    XNorms out;
    for (const auto& f : v.values) out.x0 = std::max(out.x0, norm_v(f));
    out.x0 /= params.nu * k0;
    double dmax = 0.0;
    if (v.has_derivatives()) {
        for (const auto& f : v.derivatives) dmax = std::max(dmax, norm_v(f));
    } else if (v.size() > 1) {
        throw std::invalid_argument("X norm needs derivative samples");
    }
    out.x = out.x0 + dmax / (params.nu * params.nu * k0 * k0 * k0);
    return out;
}

Trajectory combine(double a, const Trajectory& x, double b, const Trajectory& y) {
    validate(x);
    validate(y);
    if (x.size() != y.size() || x.s0 != y.s0 || x.ds != y.ds)
        throw std::invalid_argument("trajectories live on different sample grids");
    if (x.has_derivatives() != y.has_derivatives()) throw std::invalid_argument("derivative samples missing on one side");
    Trajectory out;
    out.s0 = x.s0;
    out.ds = x.ds;
    for (std::size_t i = 0; i < x.size(); ++i) out.values.push_back(a * x.values[i] + b * y.values[i]);
    for (std::size_t i = 0; i < x.derivatives.size(); ++i)
        out.derivatives.push_back(a * x.derivatives[i] + b * y.derivatives[i]);
    return out;
}

Trajectory constant_trajectory(const SpectralField& phi, double s0, double ds, std::size_t count) {
    Trajectory out;
    out.s0 = s0;
    out.ds = ds;
    out.values.assign(count, phi);
    out.derivatives.assign(count, SpectralField(phi.resolution(), phi.length()));
    return out;
}

Trajectory constant_trajectory(const SpectralField& phi, const Trajectory& like) {
    return constant_trajectory(phi, like.s0, like.ds, like.size());
}

Trajectory apply_interpolant(const InterpolantSpec& J, const Trajectory& v) {
    validate(v);
    Trajectory out;
    out.s0 = v.s0;
    out.ds = v.ds;
    for (const auto& f : v.values) out.values.push_back(apply_interpolant(J, f));
    for (const auto& f : v.derivatives) out.derivatives.push_back(apply_interpolant(J, f));
    return out;
}

double sup_distance(const Trajectory& v, const Trajectory& w, const PhysicalParams& params) {
    if (v.size() != w.size()) throw std::invalid_argument("trajectories have different lengths");
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, norm_v(v.values[i] - w.values[i]));
    return worst / (params.nu * params.kappa0());
}

FieldProvider hermite_provider(const Trajectory& v) {
    validate(v);
    auto shared = std::make_shared<const Trajectory>(v);
    return [shared](double s) -> SpectralField {
        const Trajectory& t = *shared;
        if (s <= t.s0 || t.size() == 1) {
            if (t.size() == 1 && s > t.s0 + 1e-12 * std::max(1.0, std::abs(t.s0)))
                throw std::out_of_range("trajectory provider queried past its window");
            return t.values.front();
        }
        const double x = (s - t.s0) / t.ds;
        const double last = static_cast<double>(t.size() - 1);
        if (x > last * (1.0 + 1e-12) + 1e-9) throw std::out_of_range("trajectory provider queried past its window");
        auto i = static_cast<std::size_t>(std::min(std::floor(x), last - 1.0));
        const double tau = std::clamp(x - static_cast<double>(i), 0.0, 1.0);
        const double t2 = tau * tau;
        const double t3 = t2 * tau;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + tau;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        SpectralField out = h00 * t.values[i];
        out.axpy(h01, t.values[i + 1]);
        if (t.has_derivatives()) {
            out.axpy(h10 * t.ds, t.derivatives[i]);
            out.axpy(h11 * t.ds, t.derivatives[i + 1]);
        }
        return out;
    };
}

double derivative_consistency(const Trajectory& v) {
    validate(v);
    if (!v.has_derivatives() || v.size() < 3) return 0.0;
    double scale = 0.0;
    for (const auto& d : v.derivatives) scale = std::max(scale, norm_v(d));
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        SpectralField fd = v.values[i + 1] - v.values[i - 1];
        fd *= 1.0 / (2.0 * v.ds);
        fd -= v.derivatives[i];
        worst = std::max(worst, norm_v(fd));
    }
    return scale > 0.0 ? worst / scale : worst;
}

long long steps_per_sample(double ds, double dt) {
    if (!(ds > 0.0) || !(dt > 0.0)) throw std::invalid_argument("sample spacing and time step must be positive");
    const double ratio = ds / dt;
    const auto n = static_cast<long long>(std::llround(ratio));
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
        throw std::invalid_argument("sample spacing must be a whole number of time steps");
    return n;
}

Trajectory sample_nse(const SpectralField& u0, const PhysicalParams& params, const SolverConfig& config, double s0,
                      double window, double ds) {
    steps_per_sample(ds, config.dt);
    const auto count = static_cast<std::size_t>(std::llround(window / ds)) + 1;
    Trajectory out;
    out.s0 = s0;
    out.ds = ds;
    const SpectralField f = forcing_field(params, u0.resolution());
    PhysicalParams plain = params;
    plain.mu = 0.0;
    const auto derivative = [&](const SpectralField& u) {
        SpectralField d = f;
        d.axpy(-params.nu, stokes_apply(u, 1.0));
        d -= bilinear_self(u);
        return d;
    };
    RunOptions opts;
    opts.record_every = ds;
    opts.on_record = [&](double, const SpectralField& u) {
        if (out.values.size() < count) {
            out.values.push_back(u);
            out.derivatives.push_back(derivative(u));
        }
    };
    SolverConfig exact = config;
    integrate_nse(u0, plain, exact, ds * static_cast<double>(count - 1), opts, s0);
    if (out.values.size() != count) throw std::logic_error("sample_nse recorded an unexpected number of samples");
    return out;
}

}  // namespace dform
