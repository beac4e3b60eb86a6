#include "dform/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dform/csv.hpp"
#include "dform/error.hpp"
#include "dform/nse.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/random_field.hpp"
#include "dform/seed.hpp"
#include "dform/snapshot.hpp"

namespace dform {

namespace fs = std::filesystem;

void Summary::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }

void Summary::add(const std::string& key, double value) { add(key, format_double(value)); }

void Summary::warn(const std::string& message) { add("warning", message); }

std::string Summary::value(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    throw std::out_of_range("summary has no key '" + key + "'");
}

void Summary::print(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

void Summary::write(const fs::path& path) const {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    print(out);
}

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

EnsembleSpec ensemble_spec(const RunConfig& c) {
    EnsembleSpec e;
    e.size = c.ensemble.size;
    e.seed = c.ensemble.seed;
    e.band = c.ensemble.band;
    return e;
}

SpectralField lowest_shear_mode(int n, double length) {
    SpectralField u(n, length);
    // (sin(kappa0 x2), 0)
    u.set_mode(0, 0, 1, Complex{0.0, -0.5});
    return u;
}

SpectralField initial_condition(const RunConfig& c, const PhysicalParams& params, const SolverConfig& solver) {
    const std::string& init = c.run.initial;
    if (init == "random") return initial_field(params, solver);
    if (init == "steady") return steady_state(params, solver.resolution);
    if (init == "eigenmode") return lowest_shear_mode(solver.resolution, params.length);
    Snapshot snap = load_snapshot(init);
    if (snap.field.length() != params.length) throw ConfigError("snapshot domain length does not match the config");
    return resample(snap.field, solver.resolution);
}

InterpolantConstants as_j_constants(const ApproxConstants& a) { return {a.c1, a.c2}; }

std::vector<int> ladder_of(const RunConfig& c, InterpolantKind kind) {
    switch (kind) {
        case InterpolantKind::modal: return c.sweep.modal;
        case InterpolantKind::volume: return c.sweep.volume;
        case InterpolantKind::nodal: return c.sweep.nodal;
    }
    return {};
}

void add_region(Summary& s, const std::string& prefix, const AdmissibleRegion& r) {
    s.add(prefix + "mu_min_sync", r.mu_min_sync);
    s.add(prefix + "cJ", r.cJ);
    if (r.K > 0.0) {
        s.add(prefix + "mu_W_low", r.mu_W_low);
        s.add(prefix + "mu_W_high", r.mu_W_high);
    }
}

}  // namespace

double measure_c0(const RunConfig& config, const std::vector<double>& grashof) {
    double c0 = 0.0;
    for (double G : grashof) {
        RunConfig c = config;
        c.physics.grashof = G;
        const auto res = spin_up(physical_params(c), solver_config(c));
        c0 = std::max(c0, res.c0_sample);
    }
    return c0;
}

ThresholdConstants measure_threshold_constants(const RunConfig& config) {
    const auto est = estimate_inequality_constants(ensemble_spec(config), config.ensemble.resolution, config.physics.length);
    ThresholdConstants t;
    for (const auto& e : est) {
        if (e.id == InequalityId::titi) t.c_T = e.constant;
        if (e.id == InequalityId::brezis) t.c_B = e.constant;
    }
    t.c0 = measure_c0(config);
    return t;
}

ApproxConstants kind_constants(InterpolantKind kind, const std::vector<int>& ladder, const RunConfig& config,
                               double stencil) {
    ApproxConstants out;
    for (int r : ladder) {
        InterpolantSpec spec{kind, r, stencil};
        const auto a = estimate_approx_constants(spec, ensemble_spec(config), config.ensemble.resolution, config.physics.length);
        out.c1 = std::max(out.c1, a.c1);
        out.c2 = std::max(out.c2, a.c2);
        out.c1t = std::max(out.c1t, a.c1t);
        out.c2t = std::max(out.c2t, a.c2t);
        out.samples = a.samples;
    }
    out.cJ = c_J(out.c1, out.c2);
    return out;
}

std::vector<SweepCell> sweep_cells(const std::vector<double>& mu, const RunConfig& config) {
    std::vector<SweepCell> cells;
    for (auto kind : {InterpolantKind::modal, InterpolantKind::volume, InterpolantKind::nodal})
        for (int r : ladder_of(config, kind))
            for (double m : mu) cells.push_back({m, InterpolantSpec{kind, r, config.interpolant.stencil}});
    return cells;
}

Summary run_simulate(const RunConfig& config, const fs::path& out) {
    Summary s;
    const PhysicalParams params = physical_params(config);
    const SolverConfig solver = solver_config(config);
    const SpectralField u0 = initial_condition(config, params, solver);
    const SpectralField reference = (1.0 / params.nu) * stokes_apply(forcing_field(params, solver.resolution), -1.0);
    RunOptions opts;
    opts.record_every = config.nudging.record_every;
    opts.reference = &reference;
    double next_snapshot = config.run.snapshot_every;
    int snapshot_index = 0;
    if (config.run.snapshot_every > 0.0) {
        opts.on_record = [&](double t, const SpectralField& u) {
            if (t + 1e-12 >= next_snapshot) {
                std::ostringstream name;
                name << "snapshot_" << snapshot_index++ << ".dfl";
                save_snapshot(u, params.nu, t, out / name.str());
                next_snapshot += config.run.snapshot_every;
            }
        };
    }
    const RunResult run = integrate_nse(u0, params, solver, config.solver.t_end, opts);
    write_csv(out / "diagnostics.csv", diagnostics_table(run.diagnostics));
    save_snapshot(run.final, params.nu, run.time, out / "final.dfl");
    for (const auto& w : run.warnings) s.warn(w);
    s.add("grashof", grashof(params));
    s.add("t_end", run.time);
    s.add("norm_H_initial", norm_h(u0));
    s.add("norm_H_final", norm_h(run.final));
    s.add("norm_V_final", norm_v(run.final));
    if (config.run.initial == "eigenmode" && params.forcing.modes.empty()) {
        const double k0 = params.kappa0();
        const double exact = norm_h(u0) * std::exp(-params.nu * k0 * k0 * run.time);
        s.add("norm_H_exact", exact);
        s.add("decay_relative_error", std::abs(norm_h(run.final) - exact) / exact);
    }
    s.add("steady_residual_final", steady_residual_norm(params, run.final));
    return s;
}

Summary run_sync(const RunConfig& config, const fs::path& out) {
    Summary s;
    PhysicalParams params = physical_params(config);
    const SolverConfig solver = solver_config(config);
    const InterpolantSpec J = interpolant_spec(config);
    const double G = grashof(params);
    const SpinUpResult spun = spin_up(params, solver);
    s.add("grashof", G);
    s.add("spin_up_norm_ratio", spun.norm_ratio);
    s.add("spin_up_norm_bound_ok", yes_no(spun.norm_bound_ok));
    s.add("spin_up_mean_Au2", spun.mean_Au2);
    s.add("spin_up_mean_Au2_bound", spun.mean_Au2_bound);
    s.add("spin_up_mean_bound_ok", yes_no(spun.mean_bound_ok));

    const ThresholdConstants tc = measure_threshold_constants(config);
    const ApproxConstants jc =
        estimate_approx_constants(J, ensemble_spec(config), config.ensemble.resolution, params.length);
    s.add("c_T", tc.c_T);
    s.add("c_B", tc.c_B);
    s.add("c0", tc.c0);
    s.add("c1", jc.c1);
    s.add("c2", jc.c2);
    const AdmissibleRegion region = admissible_region(G, params.kappa0(), tc, as_j_constants(jc));
    const AdmissibleRegion margin = admissible_region_with_margin(G, params.kappa0(), tc, as_j_constants(jc), 0.0, 2.0);
    for (const auto& w : region.warnings) s.warn(w);
    add_region(s, "", region);
    add_region(s, "margin2_", margin);

    double mu = config.nudging.mu;
    if (config.nudging.auto_mu) mu = std::max(margin.mu_min_sync, 1.0);
    const double h = h_of(J, params.length);
    s.add("mu", mu);
    s.add("h", h);
    s.add("interpolant", J.label());
    s.add("h_max", region.h_max(mu));
    s.add("admissible", yes_no(region.sync_admissible(mu, h)));
    s.add("admissible_margin2", yes_no(margin.sync_admissible(mu, h)));

    SolverConfig local = solver;
    const double coeff = mu * params.nu * params.kappa0() * params.kappa0();
    if (coeff > 0.0) local.dt = std::min(solver.dt, 0.5 / coeff);
    SyncOptions opts;
    opts.t_max = config.nudging.t_sync;
    opts.record_every = config.nudging.record_every;
    opts.threshold = config.nudging.threshold;
    opts.start = config.nudging.start;
    opts.seed = config.run.seed;
    const DecayRecord rec = sync_experiment(spun.u, params, J, mu, local, opts);
    write_csv(out / "sync.csv", decay_table(rec));
    s.add("dt", local.dt);
    s.add("synchronized", yes_no(rec.synchronized));
    s.add("diverged", yes_no(rec.diverged));
    s.add("sync_time", rec.sync_time);
    s.add("decay_rate", rec.rate);
    s.add("final_relative_delta", rec.rows.back().delta_V / std::max(rec.rows.back().norm_V, 1e-300));
    s.add("final_time", rec.rows.back().s);
    return s;
}

Summary run_sweep(const RunConfig& config, const fs::path& out) {
    Summary s;
    const PhysicalParams params = physical_params(config);
    const SolverConfig solver = solver_config(config);
    const double G = grashof(params);
    const double k0 = params.kappa0();
    const ThresholdConstants tc = measure_threshold_constants(config);
    s.add("grashof", G);
    s.add("c_T", tc.c_T);
    s.add("c_B", tc.c_B);
    s.add("c0", tc.c0);

    std::vector<ConstantsRow> constant_rows;
    std::map<InterpolantKind, ApproxConstants> per_kind;
    for (auto kind : {InterpolantKind::modal, InterpolantKind::volume, InterpolantKind::nodal}) {
        ApproxConstants agg;
        for (int r : ladder_of(config, kind)) {
            InterpolantSpec spec{kind, r, config.interpolant.stencil};
            const auto a = estimate_approx_constants(spec, ensemble_spec(config), config.ensemble.resolution, params.length);
            constant_rows.push_back({spec, a, config.ensemble.seed});
            agg.c1 = std::max(agg.c1, a.c1);
            agg.c2 = std::max(agg.c2, a.c2);
        }
        agg.cJ = c_J(agg.c1, agg.c2);
        per_kind[kind] = agg;
        s.add(std::string(kind_name(kind)) + "_c1", agg.c1);
        s.add(std::string(kind_name(kind)) + "_c2", agg.c2);
        s.add(std::string(kind_name(kind)) + "_cJ", agg.cJ);
    }
    write_csv(out / "constants.csv", constants_table(constant_rows));

    const AdmissibleRegion base = admissible_region(G, k0, tc, {});
    for (const auto& w : base.warnings) s.warn(w);
    s.add("mu_min_sync", base.mu_min_sync);
    std::vector<double> mu = config.sweep.mu;
    if (mu.empty()) {
        const double anchor = base.mu_min_sync > 0.0 ? base.mu_min_sync : 1.0;
        for (double f : config.sweep.mu_factors) mu.push_back(anchor * f);
    }
    const auto cells = sweep_cells(mu, config);
    SyncOptions opts;
    opts.t_max = config.sweep.t_max;
    opts.record_every = config.nudging.record_every;
    opts.threshold = config.nudging.threshold;
    opts.start = config.nudging.start;
    opts.seed = config.run.seed;
    std::vector<SweepRow> rows;
    if (!cells.empty()) {
        const SpinUpResult spun = spin_up(params, solver);
        rows = threshold_sweep(cells, spun.u, params, solver, opts);
    }
    write_csv(out / "sweep.csv", sweep_table(rows));

    bool all_contained = true;
    for (auto kind : {InterpolantKind::modal, InterpolantKind::volume, InterpolantKind::nodal}) {
        const AdmissibleRegion region = admissible_region(G, k0, tc, as_j_constants(per_kind[kind]));
        std::size_t admissible = 0, synced = 0, violations = 0, failed = 0;
        for (const auto& r : rows) {
            if (r.kind != kind_name(kind)) continue;
            if (r.status.rfind("failed", 0) == 0) ++failed;
            if (r.synchronized) ++synced;
            if (region.sync_admissible(r.mu, r.h)) {
                ++admissible;
                if (!r.synchronized) ++violations;
            }
        }
        const std::string k = kind_name(kind);
        s.add(k + "_cells_admissible", static_cast<double>(admissible));
        s.add(k + "_cells_synchronized", static_cast<double>(synced));
        s.add(k + "_cells_failed", static_cast<double>(failed));
        s.add(k + "_containment_violations", static_cast<double>(violations));
        all_contained = all_contained && violations == 0;
    }
    s.add("cells", static_cast<double>(rows.size()));
    s.add("containment", yes_no(all_contained));
    return s;
}

DFormSetup prepare_dform(const RunConfig& config) {
    DFormSetup setup;
    RunConfig c = config;
    c.solver.resolution = config.dform.resolution;
    c.solver.dt = config.dform.dt;
    c.solver.spin_up_time = config.dform.spin_up_time;
    setup.params = physical_params(c);
    setup.params.mu = 0.0;
    setup.J = InterpolantSpec::parse(config.dform.interpolant);
    setup.J.stencil = config.interpolant.stencil;
    const SolverConfig solver = solver_config(c);
    setup.u_start = spin_up(setup.params, solver).u;
    setup.u_run = sample_nse(setup.u_start, setup.params, solver, 0.0, config.dform.window, config.dform.ds);
    setup.ju_run = apply_interpolant(setup.J, setup.u_run);
    setup.R = 2.0 * x_norms(setup.ju_run, setup.params).x;

    DFormConfig& d = setup.config;
    d.mu = config.dform.mu;
    d.t_pre = config.dform.t_pre;
    d.solver = solver;
    d.u_star = steady_state(setup.params, solver.resolution);
    d.R = setup.R;
    d.rho = 4.0 * setup.R;
    const double G = grashof(setup.params);
    d.K = std::sqrt(2.0 * d.rho * d.rho + (d.mu > 0.0 ? G * G / d.mu : 0.0) + 1.0);
    return setup;
}

namespace {

Trajectory oscillating_path(const DFormSetup& setup, std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, "dform_perturbation"));
    const int n = setup.config.solver.resolution;
    const double length = setup.params.length;
    const SpectralField a = apply_interpolant(setup.J, random_solenoidal(n, length, 0, -3.0, rng));
    const SpectralField b = apply_interpolant(setup.J, random_solenoidal(n, length, 0, -3.0, rng));
    const Trajectory& grid = setup.u_run;
    const double window = std::max(grid.window(), grid.ds);
    const double omega = 2.0 * std::numbers::pi / window;
    Trajectory p;
    p.s0 = grid.s0;
    p.ds = grid.ds;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double phase = omega * (grid.time(i) - grid.s0);
        p.values.push_back(std::cos(phase) * a + std::sin(phase) * b);
        p.derivatives.push_back((-omega * std::sin(phase)) * a + (omega * std::cos(phase)) * b);
    }
    return p;
}

}  // namespace

Trajectory perturbation_direction(const DFormSetup& setup, std::uint64_t seed) {
    Trajectory p = oscillating_path(setup, seed);
    const double size = x_norms(p, setup.params).x;
    if (!(size > 0.0)) throw NumericalError("perturbation direction vanished under the interpolant");
    return combine(1.0 / size, p, 0.0, p);
}

Trajectory generic_start(const DFormSetup& setup, double radius, std::uint64_t seed) {
    const Trajectory p = perturbation_direction(setup, seed);
    const Trajectory ju_star = constant_trajectory(apply_interpolant(setup.J, setup.config.u_star), p);
    return combine(1.0, ju_star, radius, p);
}

Summary run_dform(const RunConfig& config, const fs::path& out) {
    Summary s;
    DFormSetup setup = prepare_dform(config);
    const PhysicalParams& params = setup.params;
    DFormConfig& dcfg = setup.config;
    const double G = grashof(params);
    const double k0 = params.kappa0();
    s.add("grashof", G);
    s.add("interpolant", setup.J.label());
    s.add("mu", dcfg.mu);
    s.add("R", setup.R);
    s.add("rho", dcfg.rho);
    s.add("K", dcfg.K);

    const ThresholdConstants tc = measure_threshold_constants(config);
    const ApproxConstants jc = estimate_approx_constants(setup.J, ensemble_spec(config), config.ensemble.resolution,
                                                         params.length);
    const AdmissibleRegion region = admissible_region(G, k0, tc, as_j_constants(jc), dcfg.K);
    dcfg.mu_min_W = region.mu_W_low;
    s.add("mu_W_low", region.mu_W_low);
    s.add("mu_W_high", region.mu_W_high);
    s.add("h", h_of(setup.J, params.length));
    s.add("h_max_W", region.h_max_W(dcfg.mu));
    if (dcfg.mu < region.mu_W_low) s.warn("mu below the sufficient range for the W map; proceeding");

    if (config.dform.calibrate) {
        const auto cal = calibrate_pre_window(setup.ju_run, params, setup.J, dcfg);
        dcfg.t_pre = cal.t_pre;
        s.add("pre_window_change", cal.change);
    }
    s.add("t_pre", dcfg.t_pre);

    // W(Ju) against u.
    const WResult W = compute_W(setup.ju_run, params, setup.J, dcfg);
    for (const auto& w : W.warnings) s.warn(w);
    write_csv(out / "w_audit.csv", w_audit_table(w_audit(W.w)));
    double err = 0.0, scale = 0.0, w_sup = 0.0;
    for (std::size_t i = 0; i < W.w.size(); ++i) {
        err = std::max(err, norm_v(W.w.values[i] - setup.u_run.values[i]));
        scale = std::max(scale, norm_v(setup.u_run.values[i]));
        w_sup = std::max(w_sup, norm_v(W.w.values[i]));
    }
    s.add("W_fixed_point_error", scale > 0.0 ? err / scale : err);
    s.add("W_sup_norm", w_sup);
    s.add("W_bound_derived", params.nu * k0 * dcfg.K);
    s.add("W_bound_stated", params.nu * params.nu * k0 * k0 * dcfg.K * dcfg.K);
    s.add("W_bound_derived_ok", yes_no(w_sup <= params.nu * k0 * dcfg.K));
    s.add("W_derivative_consistency", derivative_consistency(W.w));

    const double g_ju = g_value(setup.ju_run, params, setup.J, dcfg);
    const auto floor = discretization_floor(setup.u_start, 0.0, config.dform.window, config.dform.ds, params, setup.J, dcfg);
    s.add("g_Ju", g_ju);
    s.add("g_Ju_fine", floor.g_fine);
    s.add("epsilon_disc", floor.epsilon);
    s.add("g_Ju_below_floor", yes_no(g_ju < floor.epsilon));

    const Trajectory ju_star = constant_trajectory(apply_interpolant(setup.J, dcfg.u_star), setup.ju_run);
    s.add("g_Ju_star", g_value(ju_star, params, setup.J, dcfg));
    // Negative control: an early-transient state frozen in time.
    const SpectralField early = initial_field(params, dcfg.solver);
    const Trajectory frozen = constant_trajectory(early, setup.u_run);
    s.add("residual_frozen_snapshot", steady_residual(frozen, params, setup.J, dcfg));

    // Lipschitz slopes.
    const Trajectory dir = perturbation_direction(setup, config.run.seed + 1);
    for (double eta : {1e-4, 1e-3, 1e-2}) {
        const Trajectory v = combine(1.0, setup.ju_run, eta, dir);
        const WResult Wv = compute_W(v, params, setup.J, dcfg);
        const double slope = sup_distance(Wv.w, W.w, params) / eta;
        std::ostringstream key;
        key << "lipschitz_slope_" << eta;
        s.add(key.str(), slope);
    }

    // Determining-form evolution from a generic start.
    const Trajectory v0 = generic_start(setup, setup.R, config.run.seed);
    const Trajectory d0 = combine(1.0, v0, -1.0, ju_star);
    s.add("start_distance_X", x_norms(d0, params).x);
    s.add("start_distance_limit", 3.0 * setup.R);
    EvolveOptions eo;
    eo.t_end = config.dform.t_end;
    eo.rtol = config.dform.rtol;
    const EvolutionRecord evo = evolve_determining_form(v0, params, setup.J, dcfg, eo);
    write_csv(out / "evolution.csv", evolution_table(evo));
    bool monotone = true;
    for (std::size_t i = 1; i < evo.rows.size(); ++i)
        if (evo.rows[i].xnorm_dist > evo.rows[i - 1].xnorm_dist) monotone = false;
    s.add("evolution_steps", static_cast<double>(evo.rows.size()));
    s.add("evolution_g_evaluations", static_cast<double>(evo.g_evaluations));
    s.add("evolution_monotone", yes_no(monotone));
    s.add("evolution_converged", yes_no(evo.converged));
    s.add("evolution_final_rate", evo.final_rate);
    s.add("evolution_final_a", evo.rows.empty() ? 1.0 : evo.rows.back().a);
    s.add("evolution_final_t", evo.rows.empty() ? 0.0 : evo.rows.back().t);
    if (!evo.error.empty()) s.warn("evolution stopped: " + evo.error);

    // Ray invariance at three recorded times.
    double worst_cos = 1.0;
    if (!evo.rows.empty()) {
        const std::size_t last = evo.rows.size() - 1;
        for (std::size_t idx : {std::size_t{0}, last / 2, last}) {
            const Trajectory v = combine(1.0, ju_star, evo.rows[idx].a, d0);
            const Trajectory F = determining_form_rhs(v, params, setup.J, dcfg);
            const double cosine = trajectory_cosine(F, d0);
            // F = 0 is parallel to every direction.
            const double c = (x_norms(F, params).x0 == 0.0) ? -1.0 : cosine;
            worst_cos = std::min(worst_cos, std::abs(c));
        }
    }
    s.add("ray_parallel_defect", 1.0 - worst_cos);
    return s;
}

Summary run_verify(const RunConfig& config, const fs::path& out) {
    Summary s;
    const double L = config.physics.length;
    const int n = config.ensemble.resolution;
    EnsembleSpec full = ensemble_spec(config);
    full.band = 0;
    const IdentityReport ids = check_identity_suite(full, n, L);
    s.add("identity_flip", ids.flip);
    s.add("identity_ortho", ids.ortho);
    s.add("identity_moveu", ids.moveu);
    s.add("identity_pass", yes_no(ids.pass()));

    const EnsembleSpec ens = ensemble_spec(config);
    const auto est = estimate_inequality_constants(ens, n, L);
    std::vector<InequalityRow> rows;
    rows.push_back({"identity_flip", ids.flip, ids.samples, n, full.seed});
    rows.push_back({"identity_ortho", ids.ortho, ids.samples, n, full.seed});
    rows.push_back({"identity_moveu", ids.moveu, ids.samples, n, full.seed});
    EnsembleSpec holdout = ens;
    holdout.seed = derive_seed(ens.seed, "holdout");
    for (const auto& e : est) {
        rows.push_back({inequality_name(e.id), e.constant, e.used, n, ens.seed});
        s.add(std::string("constant_") + inequality_name(e.id), e.constant);
        if (e.degenerate) s.add(std::string("degenerate_") + inequality_name(e.id), static_cast<double>(e.degenerate));
        const auto bad = count_violations(e.id, e.constant, holdout, n, L);
        s.add(std::string("holdout_violations_") + inequality_name(e.id), static_cast<double>(bad));
    }

    EnsembleSpec linf = ens;
    linf.size = config.ensemble.linf_size;
    linf.band = 0;
    std::vector<int> n_set;
    for (int N = 3; N <= 64; ++N) n_set.push_back(N);
    const LinfReport lr = check_linf_lemma(linf, config.ensemble.linf_resolution, L, n_set);
    rows.push_back({"linf_lemma", lr.max_ratio, lr.samples, config.ensemble.linf_resolution, linf.seed});
    s.add("linf_samples", static_cast<double>(lr.samples));
    s.add("linf_checks", static_cast<double>(lr.checks));
    s.add("linf_violations", static_cast<double>(lr.violations));
    s.add("linf_max_ratio", lr.max_ratio);
    s.add("linf_worst_N", static_cast<double>(lr.worst_N));
    write_csv(out / "inequalities.csv", inequalities_table(rows));
    return s;
}

Summary run_constants(const RunConfig& config, const fs::path& out) {
    Summary s;
    const InterpolantSpec J = interpolant_spec(config);
    const auto a = estimate_approx_constants(J, ensemble_spec(config), config.ensemble.resolution, config.physics.length);
    write_csv(out / "constants.csv", constants_table({{J, a, config.ensemble.seed}}));
    s.add("interpolant", J.label());
    s.add("h", a.h);
    s.add("c1", a.c1);
    s.add("c2", a.c2);
    s.add("c1t", a.c1t);
    s.add("c2t", a.c2t);
    s.add("cJ", a.cJ);
    s.add("rank", static_cast<double>(declared_rank(J)));
    return s;
}

}  // namespace dform
