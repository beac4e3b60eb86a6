#pragma once

#include <string>
#include <vector>

#include "dform/field.hpp"
#include "dform/integrator.hpp"
#include "dform/interpolant.hpp"
#include "dform/params.hpp"

namespace dform {

struct DecayRow {
    double s = 0.0;
    /// ||w - u||, |w - u|, |A(w - u)|
    double delta_V = 0.0;
    double delta_H = 0.0;
    double delta_DA = 0.0;
    /// Energy and enstrophy of the reference u.
    double E = 0.0;
    double Z = 0.0;
    double norm_V = 0.0;
    double norm_DA = 0.0;
};

struct DecayRecord {
    std::vector<DecayRow> rows;
    /// Least-squares slope of log ||w - u|| over the final half of the run.
    double rate = 0.0;
    bool synchronized = false;
    bool diverged = false;
    /// First time from which ||w - u|| / ||u|| stayed below threshold.
    double sync_time = -1.0;
    double mu = 0.0;
    double h = 0.0;
    std::string status;
};

enum class NudgeStart { zero, random };

struct SyncOptions {
    /// Run length in time units; 0 selects 10 viscous times.
    double t_max = 0.0;
    /// Row cadence in time units; 0 selects dt.
    double record_every = 0.0;
    double threshold = 1e-8;
    /// Time the threshold must hold; 0 selects one viscous time.
    double hold = 0.0;
    double divergence_factor = 1e3;
    NudgeStart start = NudgeStart::zero;
    std::uint64_t seed = 1;
    bool stop_when_synchronized = true;
};

/// Runs the reference u (from u0) and the nudged copy w in lockstep:
/// dw/ds = f - nu A w - B(w, w) - mu nu kappa0^2 P J(w - u).
/// With start = random, w0 is a seeded random field with ||w0|| = ||u0||.
DecayRecord sync_experiment(const SpectralField& u0, const PhysicalParams& params, const InterpolantSpec& J, double mu,
                            const SolverConfig& config, const SyncOptions& options = {});

/// Slope of log(y) against s for the final half of the rows, excluding
/// points with y below `floor` times the reference norm.
double fit_decay_rate(const std::vector<DecayRow>& rows, double floor = 1e-13);

struct SweepCell {
    double mu = 0.0;
    InterpolantSpec J;
};

struct SweepRow {
    double mu = 0.0;
    double h = 0.0;
    std::string kind;
    int resolution = 0;
    double decay_rate = 0.0;
    bool synchronized = false;
    std::string status;
};

/// Independent sync_experiment per cell, run on up to `threads` workers
/// (0 reads DFORM_THREADS, falling back to the hardware concurrency). Each
/// cell uses dt = min(config.dt, 0.5 / (mu nu kappa0^2)). Failures are
/// recorded in the row status and do not stop the sweep. Rows follow the
/// order of `cells`.
std::vector<SweepRow> threshold_sweep(const std::vector<SweepCell>& cells, const SpectralField& u0,
                                      const PhysicalParams& params, const SolverConfig& config,
                                      const SyncOptions& options = {}, unsigned threads = 0);

/// Worker count from DFORM_THREADS (>= 1), else hardware concurrency.
unsigned sweep_threads();

}  // namespace dform
