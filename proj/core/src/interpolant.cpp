#include "dform/interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dform/fft.hpp"

namespace dform {

namespace {

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

/// Transform of the normalized cosine bump of radius r at angular wavenumber theta.
double bump_transform(double theta, double r) {
    const double x = theta * r;
    return sinc(x) + 0.5 * (sinc(std::numbers::pi - x) + sinc(std::numbers::pi + x));
}

int wrap(int k, int m) { return ((k % m) + m) % m; }

bool is_sum_of_two_squares(int s) {
    for (int a = 0; a * a <= s; ++a) {
        const int rest = s - a * a;
        const int b = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rest))));
        if (b * b == rest) return true;
    }
    return false;
}

/// Largest |k_i| kept by a cell-based interpolant.
int cell_band(int cells) { return (cells + 1) / 2 - 1; }

/// Measurement filter of a cell-based interpolant at integer wavevector k:
/// cell mean (sinc) or nodal bump, times the half-cell phase shift to the
/// cell centre.
Complex measurement_filter(const InterpolantSpec& spec, double length, int k1, int k2) {
    const int m = spec.resolution;
    const double phase = std::numbers::pi * (k1 + k2) / m;
    const Complex shift{std::cos(phase), std::sin(phase)};
    double amplitude;
    if (spec.kind == InterpolantKind::volume) {
        amplitude = sinc(std::numbers::pi * k1 / m) * sinc(std::numbers::pi * k2 / m);
    } else {
        const double k0 = 2.0 * std::numbers::pi / length;
        const double r = spec.stencil * length / m;
        amplitude = bump_transform(k0 * k1, r) * bump_transform(k0 * k2, r);
    }
    return amplitude * shift;
}

/// Folded measurement spectrum C[q] = sum_{k = q mod N} filter(k) phi_k, so
/// that the measurements are the inverse DFT of C.
std::vector<Complex> folded_measurements(const InterpolantSpec& spec, const SpectralField& phi, int comp) {
    const int m = spec.resolution;
    std::vector<Complex> folded(static_cast<std::size_t>(m) * m, Complex{});
    const auto& g = phi.grid();
    const auto data = phi.component(comp);
    const int n = phi.resolution();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.nyquist[i] || data[i] == Complex{}) continue;
        const int k1 = g.k1[i];
        const int k2 = g.k2[i];
        const auto add = [&](int a, int b, Complex value) {
            folded[static_cast<std::size_t>(wrap(a, m)) * m + wrap(b, m)] +=
                measurement_filter(spec, phi.length(), a, b) * value;
        };
        add(k1, k2, data[i]);
        if (k2 > 0 && k2 < n / 2) add(-k1, -k2, std::conj(data[i]));
    }
    return folded;
}

}  // namespace

const char* kind_name(InterpolantKind kind) {
    switch (kind) {
        case InterpolantKind::modal: return "modal";
        case InterpolantKind::volume: return "volume";
        case InterpolantKind::nodal: return "nodal";
    }
    return "?";
}

InterpolantKind parse_kind(std::string_view name) {
    if (name == "modal") return InterpolantKind::modal;
    if (name == "volume") return InterpolantKind::volume;
    if (name == "nodal") return InterpolantKind::nodal;
    throw std::invalid_argument("unknown interpolant kind '" + std::string(name) + "'");
}

InterpolantSpec InterpolantSpec::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("interpolant must be kind:N, got '" + std::string(text) + "'");
    InterpolantSpec spec;
    spec.kind = parse_kind(text.substr(0, colon));
    const std::string number(text.substr(colon + 1));
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(number, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != number.size()) throw std::invalid_argument("bad interpolant resolution '" + number + "'");
    spec.resolution = value;
    validate(spec);
    return spec;
}

std::string InterpolantSpec::label() const { return std::string(kind_name(kind)) + ":" + std::to_string(resolution); }

void validate(const InterpolantSpec& spec) {
    if (spec.kind == InterpolantKind::modal) {
        if (spec.resolution < 0) throw std::invalid_argument("modal cutoff must be >= 0");
    } else {
        if (spec.resolution < 2) throw std::invalid_argument("cell count must be >= 2");
        if (spec.kind == InterpolantKind::nodal && !(spec.stencil > 0.0 && spec.stencil <= 0.5))
            throw std::invalid_argument("nodal stencil radius must be in (0, 0.5] cell widths");
    }
}

int next_sum_of_two_squares(int m) {
    int s = std::max(m + 1, 1);
    while (!is_sum_of_two_squares(s)) ++s;
    return s;
}

double h_of(const InterpolantSpec& spec, double length) {
    validate(spec);
    if (spec.kind == InterpolantKind::modal) {
        const double k0 = 2.0 * std::numbers::pi / length;
        return 1.0 / (k0 * std::sqrt(static_cast<double>(next_sum_of_two_squares(spec.resolution))));
    }
    return length / spec.resolution;
}

std::size_t declared_rank(const InterpolantSpec& spec) {
    validate(spec);
    std::size_t count = 0;
    if (spec.kind == InterpolantKind::modal) {
        const int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(spec.resolution))));
        for (int a = -r; a <= r; ++a)
            for (int b = -r; b <= r; ++b)
                if ((a != 0 || b != 0) && a * a + b * b <= spec.resolution) ++count;
    } else {
        const int side = 2 * cell_band(spec.resolution) + 1;
        count = static_cast<std::size_t>(side) * side - 1;
    }
    return 2 * count;
}

SpectralField apply_interpolant(const InterpolantSpec& spec, const SpectralField& phi) {
    validate(spec);
    const auto& g = phi.grid();
    SpectralField out(phi.resolution(), phi.length());
    if (spec.kind == InterpolantKind::modal) {
        if (spec.resolution > 2 * g.dealias_cutoff * g.dealias_cutoff)
            throw std::invalid_argument("modal cutoff exceeds the resolution of the field");
        for (int c = 0; c < 2; ++c) {
            const auto src = phi.component(c);
            auto dst = out.component(c);
            for (std::size_t i = 0; i < g.size(); ++i)
                if (!g.nyquist[i] && g.ksq[i] > 0.0 && g.ksq[i] <= spec.resolution) dst[i] = src[i];
        }
        return out;
    }
    const int m = spec.resolution;
    const int band = cell_band(m);
    if (band > g.dealias_cutoff)
        throw std::invalid_argument("interpolant " + spec.label() + " exceeds the resolution of the field");
    const double pi = std::numbers::pi;
    for (int c = 0; c < 2; ++c) {
        const auto folded = folded_measurements(spec, phi, c);
        auto dst = out.component(c);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const int k1 = g.k1[i];
            const int k2 = g.k2[i];
            if (std::abs(k1) > band || k2 > band || (k1 == 0 && k2 == 0)) continue;
            // Fourier coefficient of the piecewise-constant extension.
            const double phase = -pi * (k1 + k2) / m;
            const double s = sinc(pi * k1 / m) * sinc(pi * k2 / m);
            dst[i] = s * Complex{std::cos(phase), std::sin(phase)} *
                     folded[static_cast<std::size_t>(wrap(k1, m)) * m + wrap(k2, m)];
        }
    }
    return out;
}

std::array<std::vector<double>, 2> cell_measurements(const InterpolantSpec& spec, const SpectralField& phi) {
    validate(spec);
    if (spec.kind == InterpolantKind::modal) throw std::invalid_argument("modal interpolant has no cell measurements");
    const int m = spec.resolution;
    std::array<std::vector<double>, 2> out;
    for (int c = 0; c < 2; ++c) {
        auto folded = folded_measurements(spec, phi, c);
        complex_dft_2d(m, FFTW_BACKWARD, folded);
        out[static_cast<std::size_t>(c)].resize(folded.size());
        for (std::size_t i = 0; i < folded.size(); ++i) out[static_cast<std::size_t>(c)][i] = folded[i].real();
    }
    return out;
}

}  // namespace dform
