#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "dform/error.hpp"
#include "dform/nse.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/params.hpp"
#include "dform/random_field.hpp"
#include "dform/sync.hpp"

using namespace dform;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PhysicalParams unforced(double nu = 1.0, double length = kTwoPi) {
    PhysicalParams p;
    p.nu = nu;
    p.length = length;
    return p;
}

SolverConfig solver(int n, double dt, IntegratorKind kind = IntegratorKind::if_rk4) {
    SolverConfig c;
    c.resolution = n;
    c.dt = dt;
    c.integrator = kind;
    return c;
}

SpectralField random_field(int n, double length, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    return scale * random_solenoidal(n, length, 8, -5.0 / 3.0, rng);
}

}  // namespace

TEST_CASE("physical parameters") {
    CHECK_THROWS_AS(validate(unforced(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(unforced(1.0, -1.0)), std::invalid_argument);
    PhysicalParams neg = unforced();
    neg.mu = -1.0;
    CHECK_THROWS_AS(validate(neg), std::invalid_argument);
    for (double G : {1.0, 5.0, 20.0}) {
        const PhysicalParams p = kolmogorov_params(0.5, 3.0, 2, G);
        CHECK(grashof(p) == doctest::Approx(G).epsilon(1e-13));
    }
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    CHECK(p.viscous_time() == doctest::Approx(1.0));
    CHECK(norm_h(forcing_field(p, 32)) == doctest::Approx(forcing_norm(p)));
    PhysicalParams far = p;
    far.forcing.modes[0].k2 = 12;
    CHECK_THROWS_AS(forcing_field(far, 32), std::invalid_argument);
    far.forcing.modes[0].k2 = 0;
    CHECK_THROWS_AS(forcing_field(far, 32), std::invalid_argument);
}

TEST_CASE("Kolmogorov steady state") {
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    const SpectralField us = steady_state(p, 32);
    CHECK(steady_residual_norm(p, us) <= 1e-12 * forcing_norm(p));
    // ||u*|| = G nu kappa0 / j for a shear at wavenumber j.
    CHECK(norm_v(us) == doctest::Approx(5.0 / 2.0).epsilon(1e-13));
}

TEST_CASE("eigenmode decay is exact for the integrating-factor scheme") {
    for (int n : {32, 64}) {
        const PhysicalParams p = unforced(0.7, 3.0);
        SpectralField u0(n, p.length);
        u0.set_mode(0, 1, 2, Complex{0.0, 1.0});
        u0.set_mode(1, 1, 2, Complex{0.0, -0.5});
        const double lambda = p.nu * std::pow(p.kappa0(), 2) * 5.0;
        const double T = 1.0 / lambda;
        const RunResult r = integrate_nse(u0, p, solver(n, 0.01), T);
        CHECK(r.time == doctest::Approx(T));
        const double exact = norm_h(u0) * std::exp(-lambda * T);
        CHECK(std::abs(norm_h(r.final) - exact) < 1e-12 * exact);
        CHECK(norm_h(r.final - std::exp(-lambda * T) * u0) < 1e-12 * exact);
    }
}

TEST_CASE("CNAB2 converges at second order") {
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    const SpectralField u0 = random_field(32, p.length, 21, 5.0);
    const SpectralField ref = integrate_nse(u0, p, solver(32, 0.0005), 0.5).final;
    double prev = 0.0;
    for (double dt : {0.01, 0.005, 0.0025}) {
        const double err = norm_h(integrate_nse(u0, p, solver(32, dt, IntegratorKind::cnab2), 0.5).final - ref);
        if (prev > 0.0) {
            const double order = std::log2(prev / err);
            CHECK(order > 1.8);
            CHECK(order < 2.3);
        }
        prev = err;
    }
    // IF-RK4 is fourth order.
    const double e1 = norm_h(integrate_nse(u0, p, solver(32, 0.02), 0.5).final - ref);
    const double e2 = norm_h(integrate_nse(u0, p, solver(32, 0.01), 0.5).final - ref);
    CHECK(std::log2(e1 / e2) > 3.5);
}

TEST_CASE("the steady state is held fixed") {
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    const SpectralField us = steady_state(p, 32);
    for (auto kind : {IntegratorKind::if_rk4, IntegratorKind::cnab2}) {
        const RunResult r = integrate_nse(us, p, solver(32, 0.01, kind), 10.0);
        CHECK(norm_h(r.final - us) < 1e-12 * norm_h(us));
    }
}

TEST_CASE("unforced energy decays") {
    const PhysicalParams p = unforced(0.05);
    const SpectralField u0 = random_field(32, p.length, 5, 0.3);
    RunOptions opts;
    opts.record_every = 0.01;
    const RunResult r = integrate_nse(u0, p, solver(32, 0.005), 2.0, opts);
    REQUIRE(r.diagnostics.size() == 201);
    for (std::size_t i = 1; i < r.diagnostics.size(); ++i) CHECK(r.diagnostics[i].E < r.diagnostics[i - 1].E);
    // dE/dt = -nu ||u||^2 with E = |u|^2 / 2 (trapezoid over the records).
    double dissipated = 0.0;
    for (std::size_t i = 1; i < r.diagnostics.size(); ++i)
        dissipated += 0.005 * p.nu * (std::pow(r.diagnostics[i].norm_V, 2) + std::pow(r.diagnostics[i - 1].norm_V, 2));
    const double lost = r.diagnostics.front().E - r.diagnostics.back().E;
    CHECK(lost == doctest::Approx(dissipated).epsilon(1e-3));
}

TEST_CASE("blow-up is reported") {
    const PhysicalParams p = unforced(1e-3);
    const SpectralField u0 = random_field(32, p.length, 2, 1e4);
    CHECK_THROWS_AS(integrate_nse(u0, p, solver(32, 0.5), 50.0), NumericalError);
}

TEST_CASE("nudging with mu = 0 reproduces the free run bit for bit") {
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    const SpectralField u0 = random_field(32, p.length, 8, 2.0);
    const SpectralField v = random_field(32, p.length, 9, 2.0);
    const FieldProvider provider = [&](double) { return v; };
    for (auto kind : {IntegratorKind::if_rk4, IntegratorKind::cnab2}) {
        const RunResult a = integrate_nse(u0, p, solver(32, 0.01, kind), 1.0);
        const RunResult b = integrate_nudged(u0, provider, p, {InterpolantKind::volume, 8, 0.25}, solver(32, 0.01, kind), 1.0);
        CHECK(norm_h(a.final - b.final) == 0.0);
    }
}

TEST_CASE("explicit feedback step restriction") {
    PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    p.mu = 200.0;
    const InterpolantSpec vol{InterpolantKind::volume, 8, 0.25};
    const InterpolantSpec modal{InterpolantKind::modal, 8, 0.25};
    CHECK_THROWS_AS(check_feedback_step(p, vol, solver(32, 0.01)), std::invalid_argument);
    CHECK_NOTHROW(check_feedback_step(p, vol, solver(32, 0.001)));
    SolverConfig implicit = solver(32, 0.01);
    implicit.implicit_modal_feedback = true;
    CHECK_NOTHROW(check_feedback_step(p, modal, implicit));
    CHECK_THROWS_AS(check_feedback_step(p, vol, implicit), std::invalid_argument);
}

TEST_CASE("implicit modal feedback agrees with the explicit treatment") {
    PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    p.mu = 20.0;
    const SpectralField u = steady_state(p, 32);
    const FieldProvider provider = [&](double) { return apply_interpolant({InterpolantKind::modal, 8, 0.25}, u); };
    SolverConfig ex = solver(32, 0.002);
    SolverConfig im = ex;
    im.implicit_modal_feedback = true;
    const InterpolantSpec modal{InterpolantKind::modal, 8, 0.25};
    const SpectralField w0(32, p.length);
    const SpectralField a = integrate_nudged(w0, provider, p, modal, ex, 1.0).final;
    const SpectralField b = integrate_nudged(w0, provider, p, modal, im, 1.0).final;
    CHECK(norm_h(a - b) < 1e-6 * norm_h(a));
}

TEST_CASE("spin-up respects the absorbing bounds") {
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    SolverConfig c = solver(32, 0.01);
    c.spin_up_time = 10.0;
    const SpinUpResult s = spin_up(p, c);
    CHECK(s.norm_bound_ok);
    CHECK(s.mean_bound_ok);
    CHECK(s.time == doctest::Approx(10.0));
    CHECK(norm_v(initial_field(p, c)) == doctest::Approx(0.5 * 5.0));
}

TEST_CASE("step planning and integrator names") {
    const StepPlan plan = plan_steps(1.0, 0.3);
    CHECK(plan.steps == 4);
    CHECK(plan.dt == doctest::Approx(0.25));
    CHECK(plan_steps(1.0, 0.25).steps == 4);
    CHECK(parse_integrator("cnab2") == IntegratorKind::cnab2);
    CHECK(std::string(integrator_name(IntegratorKind::if_rk4)) == "if-rk4");
    CHECK_THROWS_AS(parse_integrator("euler"), std::invalid_argument);
    SolverConfig bad = solver(32, 0.0);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("decay-rate fit") {
    std::vector<DecayRow> rows;
    for (int i = 0; i <= 100; ++i) {
        DecayRow r;
        r.s = 0.1 * i;
        r.delta_V = 3.0 * std::exp(-2.5 * r.s);
        r.norm_V = 1.0;
        rows.push_back(r);
    }
    CHECK(fit_decay_rate(rows) == doctest::Approx(-2.5).epsilon(1e-10));
}

TEST_CASE("synchronization with and without feedback") {
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    SolverConfig c = solver(32, 0.01);
    c.spin_up_time = 5.0;
    const SpectralField u0 = spin_up(p, c).u;
    SyncOptions opts;
    opts.t_max = 10.0;
    opts.record_every = 0.1;
    opts.start = NudgeStart::random;
    const InterpolantSpec J{InterpolantKind::volume, 8, 0.25};
    const DecayRecord on = sync_experiment(u0, p, J, 5.0, c, opts);
    CHECK(on.synchronized);
    CHECK(on.rate < 0.0);
    CHECK(on.status == "ok");
    CHECK(on.sync_time > 0.0);
    const DecayRecord off = sync_experiment(u0, p, J, 0.0, c, opts);
    CHECK_FALSE(off.synchronized);
    CHECK(off.rows.back().s == doctest::Approx(10.0));
}

TEST_CASE("sweep rows keep cell order and capture failures") {
    setenv("DFORM_THREADS", "2", 1);
    CHECK(sweep_threads() == 2);
    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    SolverConfig c = solver(32, 0.01);
    const SpectralField u0 = steady_state(p, 32);
    SyncOptions opts;
    opts.t_max = 2.0;
    opts.record_every = 0.1;
    const std::vector<SweepCell> cells{{4.0, {InterpolantKind::volume, 8, 0.25}},
                                       {4.0, {InterpolantKind::volume, 30, 0.25}},
                                       {8.0, {InterpolantKind::modal, 10, 0.25}}};
    const auto rows = threshold_sweep(cells, u0, p, c, opts);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].kind == "volume");
    CHECK(rows[0].resolution == 8);
    CHECK(rows[1].status.rfind("failed", 0) == 0);
    CHECK_FALSE(rows[1].synchronized);
    CHECK(rows[2].kind == "modal");
    CHECK(rows[2].mu == 8.0);
    unsetenv("DFORM_THREADS");
}
