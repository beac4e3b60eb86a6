#include "dform/sync.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dform/error.hpp"
#include "dform/nse.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/random_field.hpp"
#include "dform/seed.hpp"

namespace dform {

namespace {

DecayRow decay_row(double s, const SpectralField& u, const SpectralField& w) {
    DecayRow row;
    row.s = s;
    const SpectralField d = w - u;
    row.delta_V = norm_v(d);
    row.delta_H = norm_h(d);
    row.delta_DA = norm_da(d);
    const double h = norm_h(u);
    row.norm_V = norm_v(u);
    row.norm_DA = norm_da(u);
    row.E = 0.5 * h * h;
    row.Z = 0.5 * row.norm_V * row.norm_V;
    return row;
}

}  // namespace

double fit_decay_rate(const std::vector<DecayRow>& rows, double floor) {
    if (rows.size() < 2) return 0.0;
    const double s_mid = 0.5 * (rows.front().s + rows.back().s);
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        if (r.s < s_mid || !(r.delta_V > floor * r.norm_V) || r.delta_V <= 0.0) continue;
        const double y = std::log(r.delta_V);
        n += 1;
        sx += r.s;
        sy += y;
        sxx += r.s * r.s;
        sxy += r.s * y;
    }
    const double den = n * sxx - sx * sx;
    if (n < 2 || den <= 0.0) return 0.0;
    return (n * sxy - sx * sy) / den;
}

DecayRecord sync_experiment(const SpectralField& u0, const PhysicalParams& params, const InterpolantSpec& J, double mu,
                            const SolverConfig& config, const SyncOptions& options) {
    validate(config);
    if (mu < 0.0) throw std::invalid_argument("mu must be >= 0");
    if (u0.resolution() != config.resolution) throw std::invalid_argument("reference field resolution does not match config");
    PhysicalParams p = params;
    p.mu = mu;
    const double tv = p.viscous_time();
    const double t_max = options.t_max > 0.0 ? options.t_max : 10.0 * tv;
    const double hold = options.hold > 0.0 ? options.hold : tv;
    const auto plan = plan_steps(t_max, config.dt);
    SolverConfig effective = config;
    effective.dt = plan.dt;
    check_feedback_step(p, J, effective);
    // Validates J against the grid before the run starts.
    (void)apply_interpolant(J, u0);

    SpectralField w0(u0.resolution(), u0.length());
    if (options.start == NudgeStart::random) {
        std::mt19937_64 rng(derive_seed(options.seed, "nudge_start"));
        w0 = random_solenoidal(u0.resolution(), u0.length(), 0, -3.0, rng);
        const double target = norm_v(u0);
        const double size = norm_v(w0);
        w0 *= size > 0.0 ? (target > 0.0 ? target : 1.0) / size : 0.0;
    }

    const double k0 = p.kappa0();
    const double coeff = mu * p.nu * k0 * k0;
    const auto rate = viscous_rate(config.resolution, p.length, p.nu);
    const SpectralField f = forcing_field(p, config.resolution);
    std::vector<LinearPart> linear{{rate, f}, {rate, f}};
    NonlinearFn fn = [&J, coeff](double, const State& y, State& out) {
        out[0] = bilinear_self(y[0]);
        out[0] *= -1.0;
        out[1] = bilinear_self(y[1]);
        out[1] *= -1.0;
        if (coeff > 0.0) {
            SpectralField gap = y[1] - y[0];
            gap = apply_interpolant(J, gap);
            leray_project_in_place(gap);
            out[1].axpy(-coeff, gap);
        }
    };
    Stepper stepper(config.integrator, plan.dt, std::move(linear), std::move(fn));
    State state{u0, w0};

    DecayRecord rec;
    rec.mu = mu;
    rec.h = h_of(J, p.length);
    const long long every =
        options.record_every > 0.0 ? std::max(1LL, static_cast<long long>(std::llround(options.record_every / plan.dt))) : 1;
    rec.rows.push_back(decay_row(0.0, state[0], state[1]));
    const double delta0 = rec.rows.front().delta_V;
    double below_since = -1.0;
    double t = 0.0;
    for (long long n = 1; n <= plan.steps; ++n) {
        stepper.step(t, state);
        t = static_cast<double>(n) * plan.dt;
        // Threshold tracking uses every step; rows follow the cadence.
        const DecayRow row = decay_row(t, state[0], state[1]);
        if (!std::isfinite(row.delta_V) || !std::isfinite(row.norm_V)) {
            std::ostringstream msg;
            msg << "synchronization run blew up at s = " << t;
            throw NumericalError(msg.str());
        }
        if (n % every == 0 || n == plan.steps) rec.rows.push_back(row);
        if (delta0 > 0.0 && row.delta_V > options.divergence_factor * delta0) {
            if (rec.rows.back().s != t) rec.rows.push_back(row);
            rec.diverged = true;
            break;
        }
        const bool below = row.delta_V < options.threshold * row.norm_V || row.delta_V == 0.0;
        if (below) {
            if (below_since < 0.0) below_since = t;
        } else {
            below_since = -1.0;
        }
        if (below_since >= 0.0 && t - below_since >= hold * (1.0 - 1e-12)) {
            rec.synchronized = true;
            rec.sync_time = below_since;
            if (options.stop_when_synchronized) {
                if (rec.rows.back().s != t) rec.rows.push_back(row);
                break;
            }
        }
    }
    if (!rec.synchronized && below_since >= 0.0 && delta0 == 0.0) {
        rec.synchronized = true;
        rec.sync_time = 0.0;
    }
    rec.rate = fit_decay_rate(rec.rows);
    rec.status = rec.diverged ? "diverged" : "ok";
    return rec;
}

unsigned sweep_threads() {
    if (const char* env = std::getenv("DFORM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> threshold_sweep(const std::vector<SweepCell>& cells, const SpectralField& u0,
                                      const PhysicalParams& params, const SolverConfig& config,
                                      const SyncOptions& options, unsigned threads) {
    std::vector<SweepRow> rows(cells.size());
    if (cells.empty()) return rows;
    const unsigned workers = std::min<unsigned>(threads == 0 ? sweep_threads() : threads,
                                                static_cast<unsigned>(cells.size()));
    std::atomic<std::size_t> next{0};
    const auto work = [&]() {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const SweepCell& cell = cells[i];
            SweepRow& row = rows[i];
            row.mu = cell.mu;
            row.kind = kind_name(cell.J.kind);
            row.resolution = cell.J.resolution;
            try {
                row.h = h_of(cell.J, params.length);
                SolverConfig local = config;
                const double k0 = params.kappa0();
                const double coeff = cell.mu * params.nu * k0 * k0;
                if (coeff > 0.0) local.dt = std::min(config.dt, 0.5 / coeff);
                const DecayRecord rec = sync_experiment(u0, params, cell.J, cell.mu, local, options);
                row.decay_rate = rec.rate;
                row.synchronized = rec.synchronized;
                row.status = rec.status;
            } catch (const std::exception& e) {
                row.decay_rate = std::nan("");
                row.synchronized = false;
                row.status = std::string("failed: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return rows;
}

}  // namespace dform
