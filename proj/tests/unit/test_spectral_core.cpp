#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dform/field.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/random_field.hpp"

using namespace dform;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// u1 = sin(m kappa0 x2)
SpectralField shear(int n, double length, int m) {
    SpectralField u(n, length);
    u.set_mode(0, 0, m, Complex{0.0, -0.5});
    return u;
}

SpectralField random_field(int n, double length, std::uint64_t seed, int band = 0) {
    std::mt19937_64 rng(seed);
    return random_solenoidal(n, length, band, -5.0 / 3.0, rng);
}

double max_diff(const PhysicalField& a, const PhysicalField& b) {
    double m = 0.0;
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < a.comp[c].size(); ++i) m = std::max(m, std::abs(a.comp[c][i] - b.comp[c][i]));
    return m;
}

}  // namespace

TEST_CASE("field construction rejects invalid grids") {
    CHECK_THROWS_AS(SpectralField(15, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(SpectralField(8, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(SpectralField(32, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(require_same_grid(SpectralField(32, kTwoPi), SpectralField(16, kTwoPi), "test"), std::invalid_argument);
}

TEST_CASE("dealiasing cutoff follows the 2/3 rule") {
    CHECK(SpectralGrid::get(64).dealias_cutoff == 21);
    CHECK(SpectralGrid::get(128).dealias_cutoff == 42);
    CHECK(SpectralGrid::get(32).dealias_cutoff == 10);
}

TEST_CASE("set_mode keeps conjugate symmetry") {
    SpectralField u(16, kTwoPi);
    u.set_mode(0, 3, 0, Complex{1.0, 2.0});
    CHECK(u.mode(0, -3, 0) == Complex{1.0, -2.0});
    u.set_mode(1, -2, 5, Complex{0.5, 0.25});
    CHECK(u.mode(1, 2, -5) == Complex{0.5, -0.25});
    CHECK(u.hermitian_defect() == 0.0);
    CHECK_THROWS(u.set_mode(0, 0, 0, Complex{0.0, 1.0}));
}

TEST_CASE("physical values of a shear mode") {
    const int n = 32;
    for (double length : {kTwoPi, 1.0}) {
        const auto p = to_physical(shear(n, length, 3));
        const double k0 = kTwoPi / length;
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x2 = j * length / n;
                err = std::max(err, std::abs(p.comp[0][static_cast<std::size_t>(i * n + j)] - std::sin(3 * k0 * x2)));
                err = std::max(err, std::abs(p.comp[1][static_cast<std::size_t>(i * n + j)]));
            }
        CHECK(err < 1e-14);
    }
}

TEST_CASE("transform round trip and Parseval") {
    const int n = 64;
    const double length = 3.0;
    const SpectralField u = random_field(n, length, 7);
    const PhysicalField p = to_physical(u);
    const SpectralField back = from_physical(p, length);
    double err = 0.0;
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(back.component(c)[i] - u.component(c)[i]));
    CHECK(err < 1e-15);
    double sum = 0.0;
    for (int c = 0; c < 2; ++c)
        for (double x : p.comp[c]) sum += x * x;
    const double quad = std::sqrt(sum * length * length / (n * n));
    CHECK(std::abs(quad - norm_h(u)) < 1e-13 * norm_h(u));
    CHECK(std::abs(norm_h(u) - 1.0) < 1e-13);
}

TEST_CASE("norms of a single shear mode") {
    const double length = 2.0;
    const double k0 = kTwoPi / length;
    const SpectralField u = shear(64, length, 2);
    const double h = length / std::sqrt(2.0);
    CHECK(norm_h(u) == doctest::Approx(h).epsilon(1e-14));
    CHECK(norm_v(u) == doctest::Approx(2 * k0 * h).epsilon(1e-14));
    CHECK(norm_da(u) == doctest::Approx(4 * k0 * k0 * h).epsilon(1e-14));
    CHECK(power_norm(u, 1.5) == doctest::Approx(8 * k0 * k0 * k0 * h).epsilon(1e-14));
    CHECK(norm_linf(u) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_l4(u) == doctest::Approx(std::pow(0.375 * length * length, 0.25)).epsilon(1e-13));
    const NormBundle b = norms(u);
    CHECK(b.v == doctest::Approx(norm_v(u)));
    CHECK(inner(u, u) == doctest::Approx(h * h).epsilon(1e-14));
}

TEST_CASE("Leray projection") {
    const int n = 32;
    SpectralField w(n, kTwoPi);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int k1 = -10; k1 <= 10; ++k1)
        for (int k2 = 1; k2 <= 10; ++k2)
            for (int c = 0; c < 2; ++c) w.set_mode(c, k1, k2, Complex{g(rng), g(rng)});
    const SpectralField p = leray_project(w);
    CHECK(p.max_divergence() < 1e-13);
    const SpectralField pp = leray_project(p);
    CHECK(norm_h(pp - p) < 1e-14 * norm_h(p));
    // A pure gradient projects to zero.
    SpectralField grad(n, kTwoPi);
    grad.set_mode(0, 2, 3, Complex{2.0, 1.0});
    grad.set_mode(1, 2, 3, Complex{3.0, 1.5});
    CHECK(norm_h(leray_project(grad)) < 1e-15);
    SpectralField mean(n, kTwoPi);
    mean.set_mode(0, 0, 0, Complex{1.0, 0.0});
    CHECK_THROWS_AS(leray_project(mean), std::invalid_argument);
    leray_project_in_place(mean);
    CHECK(norm_h(mean) == 0.0);
}

TEST_CASE("Stokes operator powers") {
    const double length = 4.0;
    const double k0 = kTwoPi / length;
    SpectralField u(32, length);
    u.set_mode(0, 3, 4, Complex{0.0, 1.0});
    u.set_mode(1, 3, 4, Complex{0.0, -0.75});
    const double lam = k0 * k0 * 25.0;
    CHECK(norm_h(stokes_apply(u, 1.0)) == doctest::Approx(lam * norm_h(u)).epsilon(1e-14));
    CHECK(norm_h(stokes_apply(u, -1.0)) == doctest::Approx(norm_h(u) / lam).epsilon(1e-14));
    CHECK(norm_h(stokes_apply(u, 0.25)) == doctest::Approx(std::pow(lam, 0.25) * norm_h(u)).epsilon(1e-14));
}

TEST_CASE("bilinear term against a closed form") {
    // u = (sin x2, 0), v = (0, sin x1): P((u.grad)v) = (-sin x1 cos x2, cos x1 sin x2) / 2.
    const int n = 32;
    SpectralField u(n, kTwoPi), v(n, kTwoPi);
    u.set_mode(0, 0, 1, Complex{0.0, -0.5});
    v.set_mode(1, 1, 0, Complex{0.0, -0.5});
    const PhysicalField b = to_physical(bilinear(u, v));
    PhysicalField expect;
    expect.n = n;
    for (int c = 0; c < 2; ++c) expect.comp[c].resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x1 = kTwoPi * i / n, x2 = kTwoPi * j / n;
            const auto idx = static_cast<std::size_t>(i * n + j);
            expect.comp[0][idx] = -0.5 * std::sin(x1) * std::cos(x2);
            expect.comp[1][idx] = 0.5 * std::cos(x1) * std::sin(x2);
        }
    CHECK(max_diff(b, expect) < 1e-14);
}

TEST_CASE("bilinear properties") {
    const int n = 64;
    const SpectralField u = random_field(n, kTwoPi, 11);
    const SpectralField v = random_field(n, kTwoPi, 12);
    const SpectralField buu = bilinear(u, u);
    CHECK(norm_h(bilinear_self(u) - buu) < 1e-13 * norm_h(buu));
    // (B(u, v), v) = 0 and the output is solenoidal and dealiased.
    const SpectralField buv = bilinear(u, v);
    CHECK(std::abs(inner(buv, v)) < 1e-13 * norm_h(buv) * norm_h(v));
    CHECK(buv.max_divergence() < 1e-12 * norm_v(buv));
    CHECK(buv.max_outside_band() == 0.0);
    // A shear flow is a steady solution of the Euler nonlinearity.
    CHECK(norm_h(bilinear_self(shear(n, kTwoPi, 4))) < 1e-15);
    // Bilinearity.
    const SpectralField w = random_field(n, kTwoPi, 13);
    const SpectralField lhs = bilinear(u, 2.0 * v + w);
    const SpectralField rhs = 2.0 * bilinear(u, v) + bilinear(u, w);
    CHECK(norm_h(lhs - rhs) < 1e-13 * norm_h(rhs));
}

TEST_CASE("dealias and resample") {
    const int n = 32;
    SpectralField u(n, kTwoPi);
    u.set_mode(0, 12, 3, Complex{1.0, 0.0});
    u.set_mode(0, 2, 3, Complex{1.0, 0.0});
    CHECK(u.max_outside_band() == 1.0);
    dealias(u);
    CHECK(u.max_outside_band() == 0.0);
    CHECK(u.mode(0, 2, 3) == Complex{1.0, 0.0});

    const SpectralField r = random_field(32, kTwoPi, 5, 10);
    const SpectralField up = resample(r, 64);
    CHECK(norm_h(up) == doctest::Approx(norm_h(r)).epsilon(1e-14));
    const SpectralField down = resample(up, 32);
    CHECK(norm_h(down - r) == 0.0);
}

TEST_CASE("vorticity and derivatives") {
    const double length = kTwoPi;
    const SpectralField u = shear(32, length, 3);
    const PhysicalField w = to_physical(vorticity(u));
    double err = 0.0;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            err = std::max(err, std::abs(w.comp[0][static_cast<std::size_t>(i * 32 + j)] + 3.0 * std::cos(3.0 * kTwoPi * j / 32)));
    CHECK(err < 1e-13);
    CHECK(norm_h(derivative(u, 0)) == 0.0);
    CHECK(norm_h(derivative(u, 1)) == doctest::Approx(3.0 * norm_h(u)).epsilon(1e-14));
}

TEST_CASE("field arithmetic") {
    const SpectralField a = random_field(32, kTwoPi, 1);
    const SpectralField b = random_field(32, kTwoPi, 2);
    SpectralField c = a;
    c.axpy(2.0, b);
    CHECK(norm_h(c - (a + 2.0 * b)) == 0.0);
    c -= a;
    c *= 0.5;
    CHECK(norm_h(c - b) < 1e-15);
    CHECK_THROWS_AS(a + SpectralField(16, kTwoPi), std::invalid_argument);
}
