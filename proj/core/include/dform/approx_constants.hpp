#pragma once

#include <cstddef>
#include <span>

#include "dform/interpolant.hpp"
#include "dform/random_field.hpp"

namespace dform {

/// One sample constraint a c1 + b c2 >= r of the constant-fitting problem.
struct BoundSample {
    double a = 0.0;
    double b = 0.0;
    double r = 0.0;
};

struct ConstantPair {
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Minimizes c1 + c2 over c >= 0 subject to every sample constraint, by
/// walking the upper envelope of the constraint lines. Ties go to the
/// smaller c1. Throws NumericalError when a constraint has a = b = 0 < r.
ConstantPair min_sum_bound(std::span<const BoundSample> samples);

/// c_J = c1 + c2^2 / 2.
double c_J(double c1, double c2);

struct ApproxConstants {
    double h = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c1t = 0.0;
    double c2t = 0.0;
    double cJ = 0.0;
    std::size_t samples = 0;
};

/// Smallest constants with |J phi - phi| <= c1 h |grad phi| + c2 h^2 |lap phi|
/// and |grad(J phi - phi)| <= c1t |grad phi| + c2t h |lap phi| over the
/// ensemble evaluated at the given resolution. Throws std::invalid_argument
/// on an empty ensemble.
ApproxConstants estimate_approx_constants(const InterpolantSpec& spec, const EnsembleSpec& ensemble, int resolution,
                                          double length);

}  // namespace dform
