#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "dform/field.hpp"

namespace dform {

enum class IntegratorKind { if_rk4, cnab2 };

const char* integrator_name(IntegratorKind kind);
/// Accepts "if-rk4" and "cnab2".
IntegratorKind parse_integrator(std::string_view name);

struct SolverConfig {
    int resolution = 64;
    double dt = 0.005;
    IntegratorKind integrator = IntegratorKind::if_rk4;
    double spin_up_time = 20.0;
    std::uint64_t seed = 1;
    /// Treat a modal feedback term implicitly (through the linear part).
    bool implicit_modal_feedback = false;
};

/// Throws std::invalid_argument for dt <= 0 or an invalid resolution.
void validate(const SolverConfig& config);

using State = std::vector<SpectralField>;

/// du/dt = -rate .* u + N(t, u) + forcing for one field of the state.
/// `rate` is a per-coefficient decay rate (zero only where forcing is zero).
struct LinearPart {
    std::vector<double> rate;
    SpectralField forcing;
};

/// Evaluates N(t, u) into `out` (same shape as u).
using NonlinearFn = std::function<void(double t, const State& u, State& out)>;

/// Fixed-step integrator for semilinear systems with diagonal linear part.
///
/// if-rk4 is Lawson's integrating-factor RK4 applied to the shifted variable
/// u - rate^{-1} forcing: exact for the linear decay and exact at steady
/// states with N(u*) = 0. cnab2 is Crank-Nicolson / Adams-Bashforth 2 with
/// a forward-Euler-weighted first step (N_{-1} = N_0).
class Stepper {
public:
    Stepper(IntegratorKind kind, double dt, std::vector<LinearPart> linear, NonlinearFn nonlinear);

    double dt() const { return dt_; }
    /// Advances (t, u) by one step.
    void step(double& t, State& u);

private:
    void step_rk4(double t, State& u);
    void step_cnab2(double t, State& u);

    IntegratorKind kind_;
    double dt_;
    std::vector<LinearPart> linear_;
    NonlinearFn nonlinear_;
    State shift_;
    std::vector<std::vector<double>> decay_full_;
    std::vector<std::vector<double>> decay_half_;
    std::vector<std::vector<double>> cn_plus_;
    std::vector<std::vector<double>> cn_minus_;
    State previous_n_;
    bool have_previous_ = false;
    State k1_, k2_, k3_, k4_, stage_, base_;
};

/// nu kappa0^2 |k|^2 for every coefficient of the grid.
std::vector<double> viscous_rate(int resolution, double length, double nu);

/// Number of steps and effective step covering `span` with steps <= dt.
struct StepPlan {
    long long steps;
    double dt;
};
StepPlan plan_steps(double span, double dt);

}  // namespace dform
