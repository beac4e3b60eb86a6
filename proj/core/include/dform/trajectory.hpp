#pragma once

#include <cstddef>
#include <vector>

#include "dform/field.hpp"
#include "dform/integrator.hpp"
#include "dform/interpolant.hpp"
#include "dform/nse.hpp"
#include "dform/params.hpp"

namespace dform {

/// Uniform samples s_i = s0 + i ds of a path v(s) and its derivative.
struct Trajectory {
    double s0 = 0.0;
    double ds = 0.0;
    std::vector<SpectralField> values;
    std::vector<SpectralField> derivatives;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double time(std::size_t i) const { return s0 + static_cast<double>(i) * ds; }
    double s1() const { return time(size() == 0 ? 0 : size() - 1); }
    double window() const { return s1() - s0; }
    bool has_derivatives() const { return !derivatives.empty(); }
};

/// Throws std::invalid_argument for an empty window, a non-positive spacing
/// (with more than one sample), mismatched grids or derivative counts.
void validate(const Trajectory& v);

struct XNorms {
    /// ||v||_X = ||v||_{X,0} + max_s ||v'(s)|| / (nu^2 kappa0^3)
    double x = 0.0;
    /// ||v||_{X,0} = max_s ||v(s)|| / (nu kappa0)
    double x0 = 0.0;
};

/// Throws std::invalid_argument on an empty window. Without derivative
/// samples x is reported equal to x0 only when the path is a single sample.
XNorms x_norms(const Trajectory& v, const PhysicalParams& params);

/// a * x + b * y, samplewise (values and derivatives).
Trajectory combine(double a, const Trajectory& x, double b, const Trajectory& y);

/// The constant path v(s) = phi on the grid of `like`.
Trajectory constant_trajectory(const SpectralField& phi, const Trajectory& like);
Trajectory constant_trajectory(const SpectralField& phi, double s0, double ds, std::size_t count);

/// J applied samplewise to values and derivatives.
Trajectory apply_interpolant(const InterpolantSpec& J, const Trajectory& v);

/// Max over samples of ||v(s) - w(s)|| / (nu kappa0).
double sup_distance(const Trajectory& v, const Trajectory& w, const PhysicalParams& params);

/// Cubic Hermite interpolation of the samples; v(s) = v(s0) for s < s0.
/// Requests beyond s1 (past round-off) throw std::out_of_range.
FieldProvider hermite_provider(const Trajectory& v);

/// Largest ||(v_{i+1} - v_{i-1}) / (2 ds) - v'_i|| relative to max ||v'||.
double derivative_consistency(const Trajectory& v);

/// Samples an NSE run from u0 at s0: values every ds over `window`, with
/// derivatives from the equation's right side. ds must be a whole number
/// of time steps.
Trajectory sample_nse(const SpectralField& u0, const PhysicalParams& params, const SolverConfig& config, double s0,
                      double window, double ds);

/// Number of time steps of size dt in ds; throws unless it is an integer.
long long steps_per_sample(double ds, double dt);

}  // namespace dform
