#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dform/aligned.hpp"

namespace dform {

/// Wavenumber tables for an n x n periodic grid in the half-spectrum layout
/// used by FourierTransform: row r carries k1 = r (r <= n/2) or r - n, column
/// c carries k2 = c in [0, n/2]. Wavenumbers are integers in units of
/// kappa0 = 2 pi / L.
struct SpectralGrid {
    int n = 0;
    int cols = 0;
    /// Largest |k_i| kept by the 2/3 rule: the largest integer below n/3.
    int dealias_cutoff = 0;
    std::vector<int> k1;
    std::vector<int> k2;
    std::vector<double> ksq;
    /// Parseval multiplicity of a stored coefficient: 1 on the self-conjugate
    /// columns (k2 = 0 and k2 = n/2), 2 elsewhere.
    std::vector<double> weight;
    std::vector<unsigned char> nyquist;
    std::vector<unsigned char> retained;

    static const SpectralGrid& get(int n);

    std::size_t size() const { return k1.size(); }
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(col);
    }

    struct Location {
        std::size_t index;
        bool conjugate;
    };
    /// Storage slot of wavenumber (k1, k2); `conjugate` is set when the slot
    /// stores the value at (-k1, -k2). Requires |k_i| < n/2.
    Location locate(int k1, int k2) const;
};

/// Two-component periodic vector field on [0, L]^2 stored as Fourier
/// coefficients u_k with u(x) = sum_k u_k e^{i kappa0 k.x}.
///
/// Normalization: |u|^2 = L^2 sum_k |u_k|^2 over the full lattice (each stored
/// coefficient off the self-conjugate columns counts twice).
///
/// The container itself accepts any real field. Zero mean, solenoidality and
/// band limits are properties established by the operators (leray_project,
/// bilinear, the integrators); interpolant outputs are zero-mean but in
/// general not solenoidal.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(int resolution, double length);

    int resolution() const { return n_; }
    double length() const { return length_; }
    double kappa0() const;
    bool empty() const { return n_ == 0; }
    const SpectralGrid& grid() const { return *grid_; }
    std::size_t size() const { return comp_[0].size(); }

    std::span<Complex> component(int c) { return comp_[static_cast<std::size_t>(c)]; }
    std::span<const Complex> component(int c) const { return comp_[static_cast<std::size_t>(c)]; }

    /// Coefficient at integer wavevector (k1, k2), either half-plane.
    Complex mode(int c, int k1, int k2) const;
    /// Sets the coefficient at (k1, k2) and keeps the conjugate partner
    /// consistent. The mean (k = 0) must be real.
    void set_mode(int c, int k1, int k2, Complex value);

    bool same_grid(const SpectralField& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

    void set_zero();
    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double a);
    /// this += a * x
    void axpy(double a, const SpectralField& x);

    /// Largest |k . u_k| (physical wavevector) over all coefficients.
    double max_divergence() const;
    /// Largest violation of u_{-k} = conj(u_k) on the self-conjugate columns.
    double hermitian_defect() const;
    /// Largest coefficient magnitude outside the 2/3-rule band.
    double max_outside_band() const;

private:
    int n_ = 0;
    double length_ = 0.0;
    const SpectralGrid* grid_ = nullptr;
    std::array<AlignedVector<Complex>, 2> comp_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what);

/// Values of both components on the collocation grid x = (i, j) L / n.
struct PhysicalField {
    int n = 0;
    std::array<AlignedVector<double>, 2> comp;
};

PhysicalField to_physical(const SpectralField& u);
SpectralField from_physical(const PhysicalField& u, double length);

/// Copies u onto an m x m grid: zero-pads when m > n, truncates to
/// |k_i| < m/2 when m < n.
SpectralField resample(const SpectralField& u, int m);

}  // namespace dform
