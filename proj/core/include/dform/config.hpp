#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dform/integrator.hpp"
#include "dform/interpolant.hpp"
#include "dform/params.hpp"
#include "dform/sync.hpp"

namespace dform {

/// All run settings. Serialized as INI with sections [physics], [solver],
/// [interpolant], [nudging], [sweep], [dform], [ensemble], [run]. Times are
/// absolute (not scaled by the viscous time).
struct RunConfig {
    struct Physics {
        double nu = 1.0;
        double length = 6.283185307179586;
        int forcing_mode = 2;
        double grashof = 5.0;
        bool operator==(const Physics&) const = default;
    } physics;

    struct Solver {
        int resolution = 128;
        double dt = 0.005;
        IntegratorKind integrator = IntegratorKind::if_rk4;
        double spin_up_time = 20.0;
        bool implicit_modal_feedback = false;
        double t_end = 1.0;
        bool operator==(const Solver&) const = default;
    } solver;

    struct Interpolant {
        InterpolantKind kind = InterpolantKind::volume;
        int resolution = 32;
        double stencil = 0.25;
        bool operator==(const Interpolant&) const = default;
    } interpolant;

    struct Nudging {
        double mu = 0.0;
        double t_sync = 10.0;
        double record_every = 0.05;
        double threshold = 1e-8;
        NudgeStart start = NudgeStart::zero;
        /// Replace mu by the admissible value max(mu_min_sync at 2x margin, 1).
        bool auto_mu = false;
        bool operator==(const Nudging&) const = default;
    } nudging;

    struct Sweep {
        /// Explicit mu values; empty selects mu_min_sync * factor.
        std::vector<double> mu;
        std::vector<double> mu_factors{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
        std::vector<int> modal{2, 5, 10, 20, 40, 80};
        std::vector<int> volume{8, 12, 16, 24, 32, 48};
        std::vector<int> nodal{8, 12, 16, 24, 32, 48};
        double t_max = 10.0;
        bool operator==(const Sweep&) const = default;
    } sweep;

    struct DForm {
        double mu = 10.0;
        int resolution = 32;
        double dt = 0.01;
        double spin_up_time = 50.0;
        /// Interpolant of the determining-form runs as kind:N.
        std::string interpolant = "volume:8";
        double t_pre = 10.0;
        double window = 5.0;
        double ds = 0.1;
        double t_end = 1e6;
        double rtol = 1e-6;
        bool calibrate = true;
        bool operator==(const DForm&) const = default;
    } dform;

    struct Ensemble {
        std::size_t size = 1000;
        std::uint64_t seed = 1;
        int band = 10;
        int resolution = 128;
        std::size_t linf_size = 10000;
        int linf_resolution = 64;
        bool operator==(const Ensemble&) const = default;
    } ensemble;

    struct Run {
        std::uint64_t seed = 1;
        std::string out = "out";
        /// Snapshot cadence in time units; 0 writes only the final state.
        double snapshot_every = 0.0;
        /// random, steady, eigenmode, or the path of a DFL1 snapshot.
        std::string initial = "random";
        bool operator==(const Run&) const = default;
    } run;

    bool operator==(const RunConfig&) const = default;
};

/// Parses INI text. Unknown sections or keys and malformed values throw
/// ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Full INI text of every key; parse_config(to_ini(c)) == c.
std::string to_ini(const RunConfig& config);

/// Throws ConfigError when a dimensioned value is not positive or a
/// choice is out of range.
void validate(const RunConfig& config);

PhysicalParams physical_params(const RunConfig& config);
SolverConfig solver_config(const RunConfig& config);
InterpolantSpec interpolant_spec(const RunConfig& config);

}  // namespace dform
