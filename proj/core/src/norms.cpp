#include "dform/norms.hpp"

#include <algorithm>
#include <cmath>

namespace dform {

double inner(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u, v, "inner");
    const auto& g = u.grid();
    double sum = 0.0;
    for (int c = 0; c < 2; ++c) {
        const auto a = u.component(c);
        const auto b = v.component(c);
        for (std::size_t i = 0; i < g.size(); ++i)
            sum += g.weight[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    }
    const double l = u.length();
    return l * l * sum;
}

double power_norm(const SpectralField& u, double alpha) {
    const auto& g = u.grid();
    const double k0sq = u.kappa0() * u.kappa0();
    const auto a = u.component(0);
    const auto b = u.component(1);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double mag = std::norm(a[i]) + std::norm(b[i]);
        if (mag == 0.0) continue;
        double factor = 1.0;
        if (alpha != 0.0) {
            if (g.ksq[i] == 0.0) continue;
            factor = std::pow(k0sq * g.ksq[i], 2.0 * alpha);
        }
        sum += g.weight[i] * factor * mag;
    }
    return u.length() * std::sqrt(sum);
}

double norm_linf(const SpectralField& u) {
    const auto p = to_physical(u);
    double worst = 0.0;
    for (std::size_t j = 0; j < p.comp[0].size(); ++j)
        worst = std::max(worst, std::hypot(p.comp[0][j], p.comp[1][j]));
    return worst;
}

double norm_l4(const SpectralField& u) {
    const auto padded = resample(u, 2 * u.resolution());
    const auto p = to_physical(padded);
    double sum = 0.0;
    for (std::size_t j = 0; j < p.comp[0].size(); ++j) {
        const double m2 = p.comp[0][j] * p.comp[0][j] + p.comp[1][j] * p.comp[1][j];
        sum += m2 * m2;
    }
    const double cell = u.length() * u.length() / static_cast<double>(p.comp[0].size());
    return std::pow(sum * cell, 0.25);
}

NormBundle norms(const SpectralField& u) {
    return {norm_h(u), norm_v(u), norm_da(u), power_norm(u, 1.5), norm_linf(u)};
}

}  // namespace dform
