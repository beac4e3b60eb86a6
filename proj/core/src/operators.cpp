#include "dform/operators.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dform/fft.hpp"

namespace dform {

namespace {

const Complex kI{0.0, 1.0};

struct Workspace {
    std::array<AlignedVector<Complex>, 6> spec;
    std::array<AlignedVector<double>, 8> phys;
};

Workspace& workspace(int n) {
    thread_local std::map<int, Workspace> spaces;
    auto& ws = spaces[n];
    const auto spec_size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
    if (ws.spec[0].size() != spec_size) {
        for (auto& s : ws.spec) s.assign(spec_size, Complex{});
        for (auto& p : ws.phys) p.assign(static_cast<std::size_t>(n) * n, 0.0);
    }
    return ws;
}

double mean_tolerance(const SpectralField& u) {
    double sum = 0.0;
    for (int c = 0; c < 2; ++c)
        for (const auto& v : u.component(c)) sum += std::norm(v);
    return 1e-12 * std::sqrt(sum);
}

// Dealias, project and drop the mean of out in a single pass.
void finish_nonlinear(SpectralField& out) {
    const auto& g = out.grid();
    auto a = out.component(0);
    auto b = out.component(1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.retained[i] || g.ksq[i] == 0.0) {
            a[i] = 0.0;
            b[i] = 0.0;
            continue;
        }
        const double k1 = g.k1[i];
        const double k2 = g.k2[i];
        const Complex dot = (k1 * a[i] + k2 * b[i]) / g.ksq[i];
        a[i] -= k1 * dot;
        b[i] -= k2 * dot;
    }
}

}  // namespace

void leray_project_in_place(SpectralField& u) {
    const auto& g = u.grid();
    auto a = u.component(0);
    auto b = u.component(1);
    a[0] = 0.0;
    b[0] = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double k1 = g.k1[i];
        const double k2 = g.k2[i];
        const Complex dot = (k1 * a[i] + k2 * b[i]) / g.ksq[i];
        a[i] -= k1 * dot;
        b[i] -= k2 * dot;
    }
}

SpectralField leray_project(const SpectralField& field) {
    const double tol = mean_tolerance(field);
    if (std::abs(field.component(0)[0]) > tol || std::abs(field.component(1)[0]) > tol)
        throw std::invalid_argument("leray_project: input field has nonzero mean");
    SpectralField out = field;
    leray_project_in_place(out);
    return out;
}

SpectralField stokes_apply(const SpectralField& u, double alpha) {
    if (alpha < -1.0 || alpha > 2.0) throw std::invalid_argument("stokes_apply: alpha must lie in [-1, 2]");
    SpectralField out = u;
    if (alpha == 0.0) return out;
    const auto& g = u.grid();
    const double k0sq = u.kappa0() * u.kappa0();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double factor = g.ksq[i] == 0.0 ? 0.0 : std::pow(k0sq * g.ksq[i], alpha);
        out.component(0)[i] *= factor;
        out.component(1)[i] *= factor;
    }
    return out;
}

void dealias(SpectralField& u) {
    const auto& g = u.grid();
    for (int c = 0; c < 2; ++c) {
        auto data = u.component(c);
        data[0] = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!g.retained[i]) data[i] = 0.0;
    }
}

SpectralField bilinear(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u, v, "bilinear");
    const int n = u.resolution();
    const auto& g = u.grid();
    const auto& fft = FourierTransform::get(n);
    auto& ws = workspace(n);
    const double k0 = u.kappa0();

    // spec: u1, u2, d1 v1, d2 v1, d1 v2, d2 v2 (all band-limited)
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.retained[i]) {
            for (auto& s : ws.spec) s[i] = 0.0;
            continue;
        }
        const Complex ik1 = kI * (k0 * g.k1[i]);
        const Complex ik2 = kI * (k0 * g.k2[i]);
        const Complex v1 = v.component(0)[i];
        const Complex v2 = v.component(1)[i];
        ws.spec[0][i] = u.component(0)[i];
        ws.spec[1][i] = u.component(1)[i];
        ws.spec[2][i] = ik1 * v1;
        ws.spec[3][i] = ik2 * v1;
        ws.spec[4][i] = ik1 * v2;
        ws.spec[5][i] = ik2 * v2;
    }
    for (std::size_t s = 0; s < 6; ++s) fft.to_physical(ws.spec[s], ws.phys[s]);

    const auto& p = ws.phys;
    auto& n1 = ws.phys[6];
    auto& n2 = ws.phys[7];
    for (std::size_t j = 0; j < n1.size(); ++j) {
        n1[j] = p[0][j] * p[2][j] + p[1][j] * p[3][j];
        n2[j] = p[0][j] * p[4][j] + p[1][j] * p[5][j];
    }
    SpectralField out(n, u.length());
    fft.to_spectral(n1, out.component(0));
    fft.to_spectral(n2, out.component(1));
    finish_nonlinear(out);
    return out;
}

SpectralField bilinear_self(const SpectralField& u) {
    const int n = u.resolution();
    const auto& g = u.grid();
    const auto& fft = FourierTransform::get(n);
    auto& ws = workspace(n);
    const double k0 = u.kappa0();

    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.retained[i]) {
            ws.spec[0][i] = ws.spec[1][i] = ws.spec[2][i] = 0.0;
            continue;
        }
        const Complex u1 = u.component(0)[i];
        const Complex u2 = u.component(1)[i];
        ws.spec[0][i] = u1;
        ws.spec[1][i] = u2;
        ws.spec[2][i] = kI * k0 * (static_cast<double>(g.k1[i]) * u2 - static_cast<double>(g.k2[i]) * u1);
    }
    for (std::size_t s = 0; s < 3; ++s) fft.to_physical(ws.spec[s], ws.phys[s]);

    const auto& p = ws.phys;
    auto& n1 = ws.phys[6];
    auto& n2 = ws.phys[7];
    for (std::size_t j = 0; j < n1.size(); ++j) {
        n1[j] = -p[2][j] * p[1][j];
        n2[j] = p[2][j] * p[0][j];
    }
    SpectralField out(n, u.length());
    fft.to_spectral(n1, out.component(0));
    fft.to_spectral(n2, out.component(1));
    finish_nonlinear(out);
    return out;
}

SpectralField vorticity(const SpectralField& u) {
    SpectralField out(u.resolution(), u.length());
    const auto& g = u.grid();
    const double k0 = u.kappa0();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nyquist[i]) continue;
        out.component(0)[i] = kI * k0 * (static_cast<double>(g.k1[i]) * u.component(1)[i] -
                                         static_cast<double>(g.k2[i]) * u.component(0)[i]);
    }
    return out;
}

SpectralField derivative(const SpectralField& u, int dir) {
    if (dir != 0 && dir != 1) throw std::invalid_argument("derivative: direction must be 0 or 1");
    SpectralField out(u.resolution(), u.length());
    const auto& g = u.grid();
    const double k0 = u.kappa0();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nyquist[i]) continue;
        const double k = dir == 0 ? g.k1[i] : g.k2[i];
        for (int c = 0; c < 2; ++c) out.component(c)[i] = kI * (k0 * k) * u.component(c)[i];
    }
    return out;
}

}  // namespace dform
