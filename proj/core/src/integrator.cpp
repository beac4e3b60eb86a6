#include "dform/integrator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dform {

namespace {

/// y = a .* x (per coefficient, both components)
void scale_into(const std::vector<double>& a, const SpectralField& x, SpectralField& y) {
    for (int c = 0; c < 2; ++c) {
        auto src = x.component(c);
        auto dst = y.component(c);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = a[i] * src[i];
    }
}

/// y += s * a .* x
void scaled_add(SpectralField& y, double s, const std::vector<double>& a, const SpectralField& x) {
    for (int c = 0; c < 2; ++c) {
        auto src = x.component(c);
        auto dst = y.component(c);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] += (s * a[i]) * src[i];
    }
}

}  // namespace

const char* integrator_name(IntegratorKind kind) { return kind == IntegratorKind::if_rk4 ? "if-rk4" : "cnab2"; }

IntegratorKind parse_integrator(std::string_view name) {
    if (name == "if-rk4") return IntegratorKind::if_rk4;
    if (name == "cnab2") return IntegratorKind::cnab2;
    throw std::invalid_argument("unknown integrator '" + std::string(name) + "' (expected if-rk4 or cnab2)");
}

void validate(const SolverConfig& config) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw std::invalid_argument("time step must be positive");
    if (config.resolution < 16 || config.resolution % 2 != 0)
        throw std::invalid_argument("resolution must be even and >= 16");
    if (config.spin_up_time < 0.0) throw std::invalid_argument("spin-up time must be >= 0");
}

std::vector<double> viscous_rate(int resolution, double length, double nu) {
    const auto& g = SpectralGrid::get(resolution);
    const double k0 = 2.0 * std::numbers::pi / length;
    std::vector<double> rate(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rate[i] = nu * k0 * k0 * g.ksq[i];
    return rate;
}

StepPlan plan_steps(double span, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (span <= 0.0) return {0, dt};
    auto steps = static_cast<long long>(std::llround(span / dt));
    if (steps < 1 || std::abs(static_cast<double>(steps) * dt - span) > 1e-9 * span)
        steps = static_cast<long long>(std::ceil(span / dt - 1e-9));
    return {steps, span / static_cast<double>(steps)};
}

Stepper::Stepper(IntegratorKind kind, double dt, std::vector<LinearPart> linear, NonlinearFn nonlinear)
    : kind_(kind), dt_(dt), linear_(std::move(linear)), nonlinear_(std::move(nonlinear)) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    for (const auto& part : linear_) {
        const SpectralField& f = part.forcing;
        if (part.rate.size() != f.size()) throw std::invalid_argument("linear part does not match forcing grid");
        SpectralField shift(f.resolution(), f.length());
        for (int c = 0; c < 2; ++c) {
            auto src = f.component(c);
            auto dst = shift.component(c);
            for (std::size_t i = 0; i < src.size(); ++i) {
                if (part.rate[i] > 0.0) dst[i] = src[i] / part.rate[i];
                else if (src[i] != Complex{}) throw std::invalid_argument("forcing on an undamped mode");
            }
        }
        shift_.push_back(std::move(shift));
        std::vector<double> full(part.rate.size()), half(part.rate.size()), plus(part.rate.size()), minus(part.rate.size());
        for (std::size_t i = 0; i < part.rate.size(); ++i) {
            full[i] = std::exp(-part.rate[i] * dt);
            half[i] = std::exp(-0.5 * part.rate[i] * dt);
            plus[i] = 1.0 / (1.0 + 0.5 * dt * part.rate[i]);
            minus[i] = 1.0 - 0.5 * dt * part.rate[i];
        }
        decay_full_.push_back(std::move(full));
        decay_half_.push_back(std::move(half));
        cn_plus_.push_back(std::move(plus));
        cn_minus_.push_back(std::move(minus));
    }
    for (State* s : {&k1_, &k2_, &k3_, &k4_, &stage_, &base_, &previous_n_})
        for (const auto& f : shift_) s->emplace_back(f.resolution(), f.length());
}

void Stepper::step(double& t, State& u) {
    if (u.size() != linear_.size()) throw std::invalid_argument("state size does not match the stepper");
    if (kind_ == IntegratorKind::if_rk4) step_rk4(t, u);
    else step_cnab2(t, u);
    t += dt_;
}

void Stepper::step_rk4(double t, State& u) {
    const double h = dt_;
    const std::size_t m = u.size();
    // y = u - shift; stages are formed in y and shifted back before N.
    for (std::size_t j = 0; j < m; ++j) {
        base_[j] = u[j];
        base_[j] -= shift_[j];
    }
    nonlinear_(t, u, k1_);
    for (std::size_t j = 0; j < m; ++j) {
        stage_[j] = base_[j];
        stage_[j].axpy(0.5 * h, k1_[j]);
        scale_into(decay_half_[j], stage_[j], stage_[j]);
        stage_[j] += shift_[j];
    }
    nonlinear_(t + 0.5 * h, stage_, k2_);
    for (std::size_t j = 0; j < m; ++j) {
        scale_into(decay_half_[j], base_[j], stage_[j]);
        stage_[j].axpy(0.5 * h, k2_[j]);
        stage_[j] += shift_[j];
    }
    nonlinear_(t + 0.5 * h, stage_, k3_);
    for (std::size_t j = 0; j < m; ++j) {
        scale_into(decay_full_[j], base_[j], stage_[j]);
        scaled_add(stage_[j], h, decay_half_[j], k3_[j]);
        stage_[j] += shift_[j];
    }
    nonlinear_(t + h, stage_, k4_);
    for (std::size_t j = 0; j < m; ++j) {
        SpectralField& y = u[j];
        scale_into(decay_full_[j], base_[j], y);
        scaled_add(y, h / 6.0, decay_full_[j], k1_[j]);
        k2_[j] += k3_[j];
        scaled_add(y, h / 3.0, decay_half_[j], k2_[j]);
        y.axpy(h / 6.0, k4_[j]);
        y += shift_[j];
    }
}

void Stepper::step_cnab2(double t, State& u) {
    const double h = dt_;
    const std::size_t m = u.size();
    nonlinear_(t, u, k1_);
    if (!have_previous_) {
        for (std::size_t j = 0; j < m; ++j) previous_n_[j] = k1_[j];
        have_previous_ = true;
    }
    for (std::size_t j = 0; j < m; ++j) {
        // u+ = (1 + h L/2)^{-1} [(1 - h L/2) u + h (3N - N_prev)/2 + h f]
        scale_into(cn_minus_[j], u[j], stage_[j]);
        stage_[j].axpy(1.5 * h, k1_[j]);
        stage_[j].axpy(-0.5 * h, previous_n_[j]);
        stage_[j].axpy(h, linear_[j].forcing);
        scale_into(cn_plus_[j], stage_[j], u[j]);
        std::swap(previous_n_[j], k1_[j]);
    }
}

}  // namespace dform
