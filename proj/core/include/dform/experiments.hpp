#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dform/admissible.hpp"
#include "dform/approx_constants.hpp"
#include "dform/config.hpp"
#include "dform/determining_form.hpp"
#include "dform/inequality.hpp"
#include "dform/sync.hpp"

namespace dform {

/// Ordered key = value report, echoed to a stream and saved as summary.txt.
class Summary {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void warn(const std::string& message);
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    std::string value(const std::string& key) const;
    void write(const std::filesystem::path& path) const;
    void print(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// max over spin-ups at the given Grashof numbers of |Au| / (nu kappa0^2 G^3)
/// over the final viscous time.
double measure_c0(const RunConfig& config, const std::vector<double>& grashof = {1.0, 5.0, 20.0});

/// c_T and c_B (max over the ensemble) plus c0.
ThresholdConstants measure_threshold_constants(const RunConfig& config);

/// Per-kind interpolant constants: componentwise max of c1, c2, c1t, c2t
/// over the estimates at every resolution of the ladder.
ApproxConstants kind_constants(InterpolantKind kind, const std::vector<int>& ladder, const RunConfig& config,
                               double stencil = 0.25);

/// Sweep cells: mu values x the ladder of each kind.
std::vector<SweepCell> sweep_cells(const std::vector<double>& mu, const RunConfig& config);

/// Inputs of the determining-form experiments at dform.resolution.
struct DFormSetup {
    PhysicalParams params;
    InterpolantSpec J;
    DFormConfig config;
    /// Spun-up reference state at s0 and its sampled run.
    SpectralField u_start;
    Trajectory u_run;
    Trajectory ju_run;
    /// 2 max ||J u||_X over the spun-up runs.
    double R = 0.0;
};

DFormSetup prepare_dform(const RunConfig& config);

/// v0 = J u* + p(s) with ||p||_X = radius and smooth s-dependence.
Trajectory generic_start(const DFormSetup& setup, double radius, std::uint64_t seed);

/// Unit-X-norm perturbation direction built like generic_start.
Trajectory perturbation_direction(const DFormSetup& setup, std::uint64_t seed);

Summary run_simulate(const RunConfig& config, const std::filesystem::path& out);
Summary run_sync(const RunConfig& config, const std::filesystem::path& out);
Summary run_sweep(const RunConfig& config, const std::filesystem::path& out);
Summary run_dform(const RunConfig& config, const std::filesystem::path& out);
Summary run_verify(const RunConfig& config, const std::filesystem::path& out);
Summary run_constants(const RunConfig& config, const std::filesystem::path& out);

}  // namespace dform
