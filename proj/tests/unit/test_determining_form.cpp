#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dform/determining_form.hpp"
#include "dform/norms.hpp"
#include "dform/random_field.hpp"

using namespace dform;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Fixture {
    PhysicalParams params = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    InterpolantSpec J{InterpolantKind::volume, 6, 0.25};
    DFormConfig config;

    Fixture() {
        config.solver.resolution = 16;
        config.solver.dt = 0.02;
        config.mu = 10.0;
        config.t_pre = 6.0;
        config.u_star = steady_state(params, 16);
    }

    Trajectory ju_star(std::size_t count = 11) const {
        return constant_trajectory(apply_interpolant(J, config.u_star), 0.0, 0.1, count);
    }
};

SpectralField random_field(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_solenoidal(n, kTwoPi, 4, -3.0, rng);
}

/// A cubic-in-s path with exact derivatives.
Trajectory cubic_path(const SpectralField& a, const SpectralField& b, std::size_t count, double ds) {
    Trajectory t;
    t.s0 = 1.0;
    t.ds = ds;
    for (std::size_t i = 0; i < count; ++i) {
        const double s = t.time(i);
        t.values.push_back(a + (s * s * s) * b);
        t.derivatives.push_back((3.0 * s * s) * b);
    }
    return t;
}

}  // namespace

TEST_CASE("trajectory helpers") {
    const SpectralField a = random_field(16, 1), b = random_field(16, 2);
    const Trajectory t = cubic_path(a, b, 6, 0.2);
    CHECK(t.s1() == doctest::Approx(2.0));
    CHECK(t.window() == doctest::Approx(1.0));
    CHECK_NOTHROW(validate(t));
    Trajectory bad = t;
    bad.derivatives.pop_back();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    CHECK_THROWS_AS(validate(Trajectory{}), std::invalid_argument);

    const PhysicalParams p = kolmogorov_params(1.0, kTwoPi, 2, 5.0);
    const XNorms x = x_norms(t, p);
    double vmax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        vmax = std::max(vmax, norm_v(t.values[i]));
        dmax = std::max(dmax, norm_v(t.derivatives[i]));
    }
    CHECK(x.x0 == doctest::Approx(vmax));
    CHECK(x.x == doctest::Approx(vmax + dmax));

    const Trajectory d = combine(2.0, t, -1.0, t);
    CHECK(sup_distance(d, t, p) == doctest::Approx(0.0));
    CHECK(derivative_consistency(constant_trajectory(a, t)) == 0.0);
}

TEST_CASE("Hermite provider is exact on cubics") {
    const SpectralField a = random_field(16, 3), b = random_field(16, 4);
    const Trajectory t = cubic_path(a, b, 5, 0.25);
    const FieldProvider v = hermite_provider(t);
    for (double s : {1.1, 1.37, 1.5, 1.99}) {
        const SpectralField expect = a + (s * s * s) * b;
        CHECK(norm_h(v(s) - expect) < 1e-12 * norm_h(expect));
    }
    CHECK(norm_h(v(0.0) - t.values[0]) == 0.0);
    CHECK_THROWS_AS(v(2.5), std::out_of_range);
}

TEST_CASE("sampled NSE runs carry consistent derivatives") {
    Fixture f;
    const SpectralField u0 = f.config.u_star + 0.3 * random_field(16, 5);
    const Trajectory run = sample_nse(u0, f.params, f.config.solver, 0.0, 1.0, 0.1);
    CHECK(run.size() == 11);
    // Central differences converge to the stored derivatives at second order.
    SolverConfig sc = f.config.solver;
    sc.dt = 0.0025;
    const double coarse = derivative_consistency(sample_nse(u0, f.params, sc, 0.0, 0.2, 0.01));
    const double fine = derivative_consistency(sample_nse(u0, f.params, sc, 0.0, 0.2, 0.005));
    CHECK(coarse / fine > 3.0);
    CHECK(coarse / fine < 5.0);
    CHECK(steps_per_sample(0.1, 0.02) == 5);
    CHECK_THROWS_AS(steps_per_sample(0.1, 0.03), std::invalid_argument);
}

TEST_CASE("W of the steady interpolant is the steady state") {
    Fixture f;
    const WResult W = compute_W(f.ju_star(), f.params, f.J, f.config);
    REQUIRE(W.w.size() == 11);
    for (const auto& w : W.w.values) CHECK(norm_v(w - f.config.u_star) < 1e-10 * norm_v(f.config.u_star));
    CHECK(g_value(f.ju_star(), f.params, f.J, f.config) < 1e-10);
    const auto audit = w_audit(W.w);
    CHECK(audit.size() == 11);
    CHECK(audit[0].norm_w == doctest::Approx(norm_v(f.config.u_star)).epsilon(1e-9));
}

TEST_CASE("W reproduces an NSE trajectory from its measurements") {
    Fixture f;
    SolverConfig sc = f.config.solver;
    sc.spin_up_time = 40.0;
    const SpectralField u0 = spin_up(f.params, sc).u;
    const Trajectory run = sample_nse(u0, f.params, sc, 0.0, 1.0, 0.1);
    const WResult W = compute_W(apply_interpolant(f.J, run), f.params, f.J, f.config);
    for (std::size_t i = 0; i < run.size(); ++i) CHECK(norm_v(W.w.values[i] - run.values[i]) < 1e-6 * norm_v(run.values[i]));
    CHECK(steady_residual(run, f.params, f.J, f.config) < 1e-8);
}

TEST_CASE("W rejects windows off the time grid") {
    Fixture f;
    Trajectory v = f.ju_star();
    v.ds = 0.03;
    CHECK_THROWS_AS(compute_W(v, f.params, f.J, f.config), std::invalid_argument);
}

TEST_CASE("pre-window independence") {
    Fixture f;
    const auto cal = calibrate_pre_window(f.ju_star(), f.params, f.J, f.config);
    CHECK(cal.change < 1e-8);
    CHECK(cal.t_pre >= f.config.t_pre);
}

TEST_CASE("determining-form evolution") {
    Fixture f;
    EvolveOptions eo;
    eo.t_end = 50.0;
    // From the fixed point nothing moves.
    const EvolutionRecord still = evolve_determining_form(f.ju_star(), f.params, f.J, f.config, eo);
    REQUIRE_FALSE(still.rows.empty());
    for (const auto& r : still.rows) CHECK(r.a == 1.0);

    // From a perturbed start the distance to J u* never increases.
    Trajectory v0 = f.ju_star();
    const SpectralField bump = apply_interpolant(f.J, random_field(16, 6));
    for (auto& v : v0.values) v += 0.5 * bump;
    const EvolutionRecord rec = evolve_determining_form(v0, f.params, f.J, f.config, eo);
    REQUIRE(rec.rows.size() > 2);
    CHECK(rec.rows.front().a == 1.0);
    for (std::size_t i = 1; i < rec.rows.size(); ++i) {
        CHECK(rec.rows[i].a <= rec.rows[i - 1].a);
        CHECK(rec.rows[i].xnorm_dist <= rec.rows[i - 1].xnorm_dist);
    }
    CHECK(rec.error.empty());
    CHECK(rec.g_evaluations > 0);

    // F(v) is parallel to v - J u*.
    const Trajectory F = determining_form_rhs(v0, f.params, f.J, f.config);
    CHECK(std::abs(trajectory_cosine(F, combine(1.0, v0, -1.0, f.ju_star()))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frozen snapshots are not solutions") {
    Fixture f;
    const SpectralField u = f.config.u_star + 0.5 * random_field(16, 7);
    const Trajectory frozen = constant_trajectory(u, 0.0, 0.1, 11);
    CHECK(steady_residual(frozen, f.params, f.J, f.config) > 1e-3);
}
