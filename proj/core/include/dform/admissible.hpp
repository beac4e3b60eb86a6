#pragma once

#include <string>
#include <vector>

namespace dform {

/// Constants entering the sufficient conditions. All are dimensionless.
struct ThresholdConstants {
    double c_T = 1.0;
    double c_B = 1.0;
    double c0 = 1.0;
};

struct InterpolantConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double cJ() const { return c1 + 0.5 * c2 * c2; }
};

struct AdmissibleRegion {
    double G = 0.0;
    double kappa0 = 1.0;
    /// 6 c_T G log(c3 G), c3 = (2 c_T c0)^{1/3}
    double mu_min_sync = 0.0;
    /// (c4 K^2 log(c5 K^2), 2 c4 K^2 log(c5 K^2))
    double mu_W_low = 0.0;
    double mu_W_high = 0.0;
    double K = 0.0;
    double cJ = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    std::vector<std::string> warnings;

    /// (2 mu kappa0^2 c_J)^{-1/2}
    double h_max(double mu) const;
    /// Largest h with 2 mu h^2 kappa0^2 (c1^2 + c2) < 1/2, i.e. the supremum
    /// (4 mu kappa0^2 (c1^2 + c2))^{-1/2} (strict).
    double h_max_W(double mu) const;
    /// mu >= mu_min_sync and h <= h_max(mu)
    bool sync_admissible(double mu, double h) const;
};

/// Thresholds from measured constants. K is the constant of the W-map
/// statement (0 skips the W range). G < 1 adds a warning.
AdmissibleRegion admissible_region(double G, double kappa0, const ThresholdConstants& constants,
                                   const InterpolantConstants& J, double K = 0.0);

/// The same region with every constant multiplied by `factor`.
AdmissibleRegion admissible_region_with_margin(double G, double kappa0, const ThresholdConstants& constants,
                                               const InterpolantConstants& J, double K, double factor);

}  // namespace dform
