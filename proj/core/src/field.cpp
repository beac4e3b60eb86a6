#include "dform/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dform/fft.hpp"

namespace dform {

const SpectralGrid& SpectralGrid::get(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SpectralGrid>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto g = std::make_unique<SpectralGrid>();
        g->n = n;
        g->cols = n / 2 + 1;
        g->dealias_cutoff = (n - 1) / 3;
        const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(g->cols);
        g->k1.resize(total);
        g->k2.resize(total);
        g->ksq.resize(total);
        g->weight.resize(total);
        g->nyquist.resize(total);
        g->retained.resize(total);
        for (int r = 0; r < n; ++r) {
            const int k1 = r <= n / 2 ? r : r - n;
            for (int c = 0; c < g->cols; ++c) {
                const auto i = g->index(r, c);
                g->k1[i] = k1;
                g->k2[i] = c;
                g->ksq[i] = static_cast<double>(k1) * k1 + static_cast<double>(c) * c;
                g->weight[i] = (c == 0 || c == n / 2) ? 1.0 : 2.0;
                g->nyquist[i] = (r == n / 2 || c == n / 2) ? 1 : 0;
                g->retained[i] = (!g->nyquist[i] && std::abs(k1) <= g->dealias_cutoff && c <= g->dealias_cutoff) ? 1 : 0;
            }
        }
        slot = std::move(g);
    }
    return *slot;
}

SpectralGrid::Location SpectralGrid::locate(int a, int b) const {
    if (std::abs(a) >= n / 2 || std::abs(b) >= n / 2)
        throw std::invalid_argument("wavenumber outside the representable range");
    bool conj = false;
    if (b < 0) {
        a = -a;
        b = -b;
        conj = true;
    }
    const int row = a >= 0 ? a : a + n;
    return {index(row, b), conj};
}

SpectralField::SpectralField(int resolution, double length) : n_(resolution), length_(length) {
    if (resolution < 16 || resolution % 2 != 0)
        throw std::invalid_argument("resolution must be even and >= 16, got " + std::to_string(resolution));
    if (!(length > 0.0)) throw std::invalid_argument("domain length must be positive");
    grid_ = &SpectralGrid::get(resolution);
    for (auto& c : comp_) c.assign(grid_->size(), Complex{});
}

double SpectralField::kappa0() const { return 2.0 * std::numbers::pi / length_; }

Complex SpectralField::mode(int c, int k1, int k2) const {
    const auto loc = grid_->locate(k1, k2);
    const Complex v = comp_[static_cast<std::size_t>(c)][loc.index];
    return loc.conjugate ? std::conj(v) : v;
}

void SpectralField::set_mode(int c, int k1, int k2, Complex value) {
    auto& data = comp_[static_cast<std::size_t>(c)];
    if (k1 == 0 && k2 == 0) {
        if (value.imag() != 0.0) throw std::invalid_argument("mean coefficient must be real");
        data[0] = value;
        return;
    }
    const auto loc = grid_->locate(k1, k2);
    data[loc.index] = loc.conjugate ? std::conj(value) : value;
    if (k2 == 0) {
        const auto partner = grid_->locate(-k1, 0);
        data[partner.index] = std::conj(value);
    }
}

void SpectralField::set_zero() {
    for (auto& c : comp_) std::fill(c.begin(), c.end(), Complex{});
}

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what) {
    if (!a.same_grid(b))
        throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(*this, other, "operator+=");
    for (int c = 0; c < 2; ++c) {
        auto& a = comp_[static_cast<std::size_t>(c)];
        const auto& b = other.comp_[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(*this, other, "operator-=");
    for (int c = 0; c < 2; ++c) {
        auto& a = comp_[static_cast<std::size_t>(c)];
        const auto& b = other.comp_[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& comp : comp_)
        for (auto& v : comp) v *= s;
    return *this;
}

void SpectralField::axpy(double a, const SpectralField& x) {
    require_same_grid(*this, x, "axpy");
    for (int c = 0; c < 2; ++c) {
        auto& y = comp_[static_cast<std::size_t>(c)];
        const auto& xs = x.comp_[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * xs[i];
    }
}

double SpectralField::max_divergence() const {
    const auto& g = *grid_;
    const double k0 = kappa0();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nyquist[i]) continue;
        const Complex d = k0 * (static_cast<double>(g.k1[i]) * comp_[0][i] + static_cast<double>(g.k2[i]) * comp_[1][i]);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

double SpectralField::hermitian_defect() const {
    const auto& g = *grid_;
    double worst = 0.0;
    for (const int col : {0, n_ / 2}) {
        for (int r = 0; r < n_; ++r) {
            const int partner = (n_ - r) % n_;
            for (const auto& comp : comp_) {
                const Complex a = comp[g.index(r, col)];
                const Complex b = comp[g.index(partner, col)];
                worst = std::max(worst, std::abs(a - std::conj(b)));
            }
        }
    }
    return worst;
}

double SpectralField::max_outside_band() const {
    const auto& g = *grid_;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.retained[i]) continue;
        worst = std::max({worst, std::abs(comp_[0][i]), std::abs(comp_[1][i])});
    }
    return worst;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

PhysicalField to_physical(const SpectralField& u) {
    const int n = u.resolution();
    const auto& fft = FourierTransform::get(n);
    PhysicalField out;
    out.n = n;
    for (int c = 0; c < 2; ++c) {
        out.comp[static_cast<std::size_t>(c)].resize(static_cast<std::size_t>(n) * n);
        fft.to_physical(u.component(c), out.comp[static_cast<std::size_t>(c)]);
    }
    return out;
}

SpectralField from_physical(const PhysicalField& u, double length) {
    SpectralField out(u.n, length);
    const auto& fft = FourierTransform::get(u.n);
    for (int c = 0; c < 2; ++c) fft.to_spectral(u.comp[static_cast<std::size_t>(c)], out.component(c));
    return out;
}

SpectralField resample(const SpectralField& u, int m) {
    SpectralField out(m, u.length());
    const auto& g = u.grid();
    const int limit = std::min(u.resolution(), m) / 2;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nyquist[i]) continue;
        if (std::abs(g.k1[i]) >= limit || g.k2[i] >= limit) continue;
        const auto loc = out.grid().locate(g.k1[i], g.k2[i]);
        for (int c = 0; c < 2; ++c) out.component(c)[loc.index] = u.component(c)[i];
    }
    return out;
}

}  // namespace dform
