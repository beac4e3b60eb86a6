#include "dform/random_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dform/norms.hpp"
#include "dform/seed.hpp"

namespace dform {

namespace {

enum class Shape { solenoidal, scalar };

SpectralField draw(int resolution, double length, int band, double exponent, std::mt19937_64& rng, Shape shape) {
    SpectralField u(resolution, length);
    const int kb = effective_band(band, resolution);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double k0 = u.kappa0();
    const double power = shape == Shape::solenoidal ? exponent - 3.0 : exponent - 1.0;
    for (int k2 = 0; k2 <= kb; ++k2) {
        for (int k1 = -kb; k1 <= kb; ++k1) {
            if (k2 == 0 && k1 <= 0) continue;
            const double re = normal(rng);
            const double im = normal(rng);
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const Complex amp = Complex{re, im} * std::pow(ksq, 0.25 * power) / std::numbers::sqrt2;
            if (shape == Shape::solenoidal) {
                // u = (-d2 psi, d1 psi)
                const Complex ik0{0.0, k0};
                u.set_mode(0, k1, k2, -ik0 * static_cast<double>(k2) * amp);
                u.set_mode(1, k1, k2, ik0 * static_cast<double>(k1) * amp);
            } else {
                u.set_mode(0, k1, k2, amp);
            }
        }
    }
    const double size = norm_h(u);
    if (size > 0.0) u *= 1.0 / size;
    return u;
}

double draw_exponent(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    return kSpectralExponents[pick(rng)];
}

}  // namespace

int effective_band(int band, int resolution) {
    if (band < 0) throw std::invalid_argument("ensemble band must be >= 0");
    const int cutoff = SpectralGrid::get(resolution).dealias_cutoff;
    return band == 0 ? cutoff : std::min(band, cutoff);
}

SpectralField random_solenoidal(int resolution, double length, int band, double exponent, std::mt19937_64& rng) {
    return draw(resolution, length, band, exponent, rng, Shape::solenoidal);
}

SpectralField random_scalar(int resolution, double length, int band, double exponent, std::mt19937_64& rng) {
    return draw(resolution, length, band, exponent, rng, Shape::scalar);
}

SpectralField ensemble_member(const EnsembleSpec& spec, int resolution, double length, std::size_t index) {
    std::mt19937_64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(index)));
    const double p = draw_exponent(rng);
    return random_solenoidal(resolution, length, spec.band, p, rng);
}

SpectralField scalar_ensemble_member(const EnsembleSpec& spec, int resolution, double length, std::size_t index) {
    std::mt19937_64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(index)));
    const double p = draw_exponent(rng);
    return random_scalar(resolution, length, spec.band, p, rng);
}

}  // namespace dform
