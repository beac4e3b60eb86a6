#pragma once

#include <span>

#include "dform/aligned.hpp"

namespace dform {

/// Real 2D transforms on an n x n periodic grid.
///
/// Physical arrays are row-major with the first index along x1. Spectral
/// arrays hold n x (n/2 + 1) coefficients (the x2 wavenumber is halved).
/// Forward transforms are scaled by 1/n^2 so that u(x) = sum_k u_k e^{ik.x}.
///
/// Plans are shared process-wide and created once under a mutex with
/// FFTW_ESTIMATE (deterministic algorithm choice); execution is reentrant.
class FourierTransform {
public:
    static const FourierTransform& get(int n);

    int size() const { return n_; }

    /// Spectral -> physical. Input is not modified.
    void to_physical(std::span<const Complex> coeff, std::span<double> out) const;
    /// Physical -> spectral, scaled by 1/n^2.
    void to_spectral(std::span<const double> in, std::span<Complex> out) const;

    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;
    ~FourierTransform();

private:
    explicit FourierTransform(int n);

    int n_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

/// Unnormalized complex 2D DFT on an m x m grid (used by the cell-based
/// interpolants). `sign` is FFTW_FORWARD or FFTW_BACKWARD.
void complex_dft_2d(int m, int sign, std::span<Complex> data);

}  // namespace dform
