#include "dform/admissible.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dform {

double AdmissibleRegion::h_max(double mu) const {
    const double d = 2.0 * mu * kappa0 * kappa0 * cJ;
    return d > 0.0 ? 1.0 / std::sqrt(d) : std::numeric_limits<double>::infinity();
}

double AdmissibleRegion::h_max_W(double mu) const {
    const double d = 4.0 * mu * kappa0 * kappa0 * (c1 * c1 + c2);
    return d > 0.0 ? 1.0 / std::sqrt(d) : std::numeric_limits<double>::infinity();
}

bool AdmissibleRegion::sync_admissible(double mu, double h) const { return mu >= mu_min_sync && h <= h_max(mu); }

AdmissibleRegion admissible_region(double G, double kappa0, const ThresholdConstants& constants,
                                   const InterpolantConstants& J, double K) {
    if (!(G >= 0.0)) throw std::invalid_argument("Grashof number must be >= 0");
    if (!(kappa0 > 0.0)) throw std::invalid_argument("kappa0 must be positive");
    AdmissibleRegion r;
    r.G = G;
    r.kappa0 = kappa0;
    r.c1 = J.c1;
    r.c2 = J.c2;
    r.cJ = J.cJ();
    r.K = K;
    if (G < 1.0) r.warnings.push_back("G < 1: the sufficient conditions assume G >= 1");
    const double c3 = std::cbrt(2.0 * constants.c_T * constants.c0);
    r.mu_min_sync = G > 0.0 ? 6.0 * constants.c_T * G * std::log(c3 * G) : 0.0;
    if (K > 0.0) {
        const double s = constants.c_T + constants.c_B + 1.0;
        const double c4 = 80.0 * s * s;
        const double c5 = std::sqrt(8.0) * s;
        const double K2 = K * K;
        r.mu_W_low = c4 * K2 * std::log(c5 * K2);
        r.mu_W_high = 2.0 * r.mu_W_low;
    }
    return r;
}

AdmissibleRegion admissible_region_with_margin(double G, double kappa0, const ThresholdConstants& constants,
                                               const InterpolantConstants& J, double K, double factor) {
    ThresholdConstants c = constants;
    c.c_T *= factor;
    c.c_B *= factor;
    c.c0 *= factor;
    InterpolantConstants j = J;
    j.c1 *= factor;
    j.c2 *= factor;
    return admissible_region(G, kappa0, c, j, K);
}

}  // namespace dform
