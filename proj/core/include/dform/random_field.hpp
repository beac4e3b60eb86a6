#pragma once

#include <cstdint>
#include <random>

#include "dform/field.hpp"

namespace dform {

/// Random band-limited ensemble. Each member draws a spectral exponent p
/// from {-1, -5/3, -3} and a Gaussian streamfunction (or scalar) with energy
/// spectrum E(k) ~ k^p, restricted to |k_i| <= band. Members are normalized
/// to |u| = 1.
///
/// Modes are drawn in a fixed order over the half-plane of the band, so a
/// given (seed, index) yields the same physical field on every grid whose
/// dealiased band contains it.
struct EnsembleSpec {
    std::size_t size = 1000;
    std::uint64_t seed = 1;
    /// Largest |k_i| drawn; 0 selects the whole dealiased band of the grid.
    int band = 10;
};

/// Exponents used by the ensemble family.
inline constexpr double kSpectralExponents[3] = {-1.0, -5.0 / 3.0, -3.0};

/// Solenoidal zero-mean field u = curl psi with |psi_k|^2 ~ |k|^{p-3}.
SpectralField random_solenoidal(int resolution, double length, int band, double exponent, std::mt19937_64& rng);

/// Zero-mean scalar (stored in component 0, component 1 zero) with
/// |phi_k|^2 ~ |k|^{p-1}.
SpectralField random_scalar(int resolution, double length, int band, double exponent, std::mt19937_64& rng);

/// Member `index` of the solenoidal ensemble.
SpectralField ensemble_member(const EnsembleSpec& spec, int resolution, double length, std::size_t index);

/// Member `index` of the scalar ensemble.
SpectralField scalar_ensemble_member(const EnsembleSpec& spec, int resolution, double length, std::size_t index);

/// Effective band on a given grid: min(spec band, dealias cutoff).
int effective_band(int band, int resolution);

}  // namespace dform
