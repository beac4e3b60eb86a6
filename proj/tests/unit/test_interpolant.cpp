#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dform/approx_constants.hpp"
#include "dform/error.hpp"
#include "dform/interpolant.hpp"
#include "dform/norms.hpp"
#include "dform/random_field.hpp"

using namespace dform;

namespace {

constexpr double kPi = std::numbers::pi;

struct Mode {
    int k1, k2;
    Complex a;
};

/// Scalar field in component 0 built from a few modes and their conjugates.
SpectralField from_modes(int n, double length, const std::vector<Mode>& modes) {
    SpectralField u(n, length);
    for (const auto& m : modes) u.set_mode(0, m.k1, m.k2, m.a);
    return u;
}

/// Integral of w(x) e^{i theta x} for the normalized cosine bump of radius r,
/// by composite Simpson quadrature.
Complex bump_integral(double theta, double r) {
    const int steps = 4000;
    const double dx = 2.0 * r / steps;
    Complex sum{};
    for (int i = 0; i <= steps; ++i) {
        const double x = -r + i * dx;
        const double w = (1.0 + std::cos(kPi * x / r)) / (2.0 * r);
        const double s = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += s * w * Complex{std::cos(theta * x), std::sin(theta * x)};
    }
    return sum * dx / 3.0;
}

/// Independent oracle: average of the field against a kernel centred at
/// cell centres, mode by mode.
std::vector<double> oracle_measurements(const InterpolantSpec& spec, double length, const std::vector<Mode>& modes) {
    const int m = spec.resolution;
    const double h = length / m;
    const double k0 = 2.0 * kPi / length;
    std::vector<double> out(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double c1 = (i + 0.5) * h, c2 = (j + 0.5) * h;
            Complex sum{};
            for (const auto& md : modes) {
                for (int sign : {1, -1}) {
                    const Complex a = sign == 1 ? md.a : std::conj(md.a);
                    const double t1 = sign * k0 * md.k1, t2 = sign * k0 * md.k2;
                    Complex f1, f2;
                    if (spec.kind == InterpolantKind::volume) {
                        auto cell = [&](double t) {
                            return std::abs(t) < 1e-14 ? 1.0 : std::sin(t * h / 2) / (t * h / 2);
                        };
                        f1 = cell(t1);
                        f2 = cell(t2);
                    } else {
                        const double r = spec.stencil * h;
                        f1 = bump_integral(t1, r);
                        f2 = bump_integral(t2, r);
                    }
                    sum += a * f1 * f2 * Complex{std::cos(t1 * c1 + t2 * c2), std::sin(t1 * c1 + t2 * c2)};
                }
            }
            out[static_cast<std::size_t>(i * m + j)] = sum.real();
        }
    return out;
}

/// Rank of J on the zero-mean band-limited fields of an n x n grid.
long numerical_rank(const InterpolantSpec& spec, int n) {
    const double length = 2.0 * kPi;
    const int band = (n - 1) / 3;
    std::vector<std::vector<double>> columns;
    for (int c = 0; c < 2; ++c)
        for (int k1 = -band; k1 <= band; ++k1)
            for (int k2 = 0; k2 <= band; ++k2) {
                if (k2 == 0 && k1 <= 0) continue;
                for (Complex unit : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
                    SpectralField e(n, length);
                    e.set_mode(c, k1, k2, unit);
                    const SpectralField je = apply_interpolant(spec, e);
                    std::vector<double> col;
                    for (int cc = 0; cc < 2; ++cc)
                        for (const auto& z : je.component(cc)) {
                            col.push_back(z.real());
                            col.push_back(z.imag());
                        }
                    columns.push_back(std::move(col));
                }
            }
    Eigen::MatrixXd mat(static_cast<Eigen::Index>(columns[0].size()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < columns[j].size(); ++i)
            mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    lu.setThreshold(1e-10);
    return lu.rank();
}

}  // namespace

TEST_CASE("interpolant spec parsing and validation") {
    const auto s = InterpolantSpec::parse("volume:16");
    CHECK(s.kind == InterpolantKind::volume);
    CHECK(s.resolution == 16);
    CHECK(s.label() == "volume:16");
    CHECK(InterpolantSpec::parse("modal:0").resolution == 0);
    CHECK(InterpolantSpec::parse("nodal:8").kind == InterpolantKind::nodal);
    CHECK_THROWS_AS(InterpolantSpec::parse("spline:4"), std::invalid_argument);
    CHECK_THROWS_AS(InterpolantSpec::parse("volume"), std::invalid_argument);
    CHECK_THROWS_AS(InterpolantSpec::parse("volume:4x"), std::invalid_argument);
    CHECK_THROWS_AS(validate(InterpolantSpec{InterpolantKind::volume, 1, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(validate(InterpolantSpec{InterpolantKind::nodal, 8, 0.75}), std::invalid_argument);
    CHECK_THROWS_AS(validate(InterpolantSpec{InterpolantKind::modal, -1, 0.25}), std::invalid_argument);
}

TEST_CASE("sums of two squares and length scales") {
    CHECK(next_sum_of_two_squares(0) == 1);
    CHECK(next_sum_of_two_squares(1) == 2);
    CHECK(next_sum_of_two_squares(2) == 4);
    CHECK(next_sum_of_two_squares(4) == 5);
    CHECK(next_sum_of_two_squares(5) == 8);
    CHECK(next_sum_of_two_squares(20) == 25);
    CHECK(next_sum_of_two_squares(80) == 81);
    const double L = 2.0;
    const double k0 = 2.0 * kPi / L;
    CHECK(h_of({InterpolantKind::modal, 4, 0.25}, L) == doctest::Approx(1.0 / (k0 * std::sqrt(5.0))));
    CHECK(h_of({InterpolantKind::volume, 8, 0.25}, L) == doctest::Approx(0.25));
    CHECK(h_of({InterpolantKind::nodal, 16, 0.25}, L) == doctest::Approx(0.125));
}

TEST_CASE("modal interpolant is the spectral projection") {
    const SpectralField u = [] {
        std::mt19937_64 rng(4);
        return random_solenoidal(32, 2.0 * kPi, 0, -1.0, rng);
    }();
    const InterpolantSpec J{InterpolantKind::modal, 10, 0.25};
    const SpectralField ju = apply_interpolant(J, u);
    CHECK(norm_h(apply_interpolant(J, ju) - ju) == 0.0);
    const auto& g = u.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const bool keep = g.ksq[i] > 0 && g.ksq[i] <= 10;
        for (int c = 0; c < 2; ++c) CHECK(ju.component(c)[i] == (keep ? u.component(c)[i] : Complex{}));
    }
    // |u - Pu| <= h^2 |Au| with h^{-2} the first dropped eigenvalue.
    const double h = h_of(J, 2.0 * kPi);
    CHECK(norm_h(u - ju) <= h * h * norm_da(u) * (1 + 1e-12));
}

TEST_CASE("cell measurements match direct quadrature") {
    const double L = 3.0;
    const std::vector<Mode> modes{{1, 2, {0.3, -0.2}}, {-3, 1, {0.1, 0.4}}, {4, 0, {-0.5, 0.25}}, {2, 5, {0.05, 0.0}}};
    const SpectralField phi = from_modes(32, L, modes);
    for (auto kind : {InterpolantKind::volume, InterpolantKind::nodal})
        for (int cells : {4, 6, 8}) {
            const InterpolantSpec spec{kind, cells, 0.3};
            const auto meas = cell_measurements(spec, phi)[0];
            const auto expect = oracle_measurements(spec, L, modes);
            double err = 0.0;
            for (std::size_t i = 0; i < meas.size(); ++i) err = std::max(err, std::abs(meas[i] - expect[i]));
            CHECK_MESSAGE(err < 1e-12, kind_name(kind), ":", cells);
            CHECK(cell_measurements(spec, phi)[1] == std::vector<double>(meas.size(), 0.0));
        }
    CHECK_THROWS_AS(cell_measurements({InterpolantKind::modal, 4, 0.25}, phi), std::invalid_argument);
}

TEST_CASE("volume interpolant reproduces cell means of resolved fields") {
    // With the measurements' aliases absent, J phi is the truncated
    // piecewise-constant extension; its own cell means agree with phi's at low k.
    const double L = 2.0 * kPi;
    const SpectralField phi = from_modes(32, L, {{1, 0, {0.0, -0.5}}});
    const InterpolantSpec spec{InterpolantKind::volume, 8, 0.25};
    const SpectralField jphi = apply_interpolant(spec, phi);
    const double s = std::sin(kPi / 8) / (kPi / 8);
    // Coefficient at k = (1, 0): sinc(pi/8) filter undone by the zero-order hold sinc.
    CHECK(std::abs(jphi.mode(0, 1, 0) - Complex{0.0, -0.5} * s * s) < 1e-15);
    CHECK(jphi.mode(0, 0, 0) == Complex{});
}

TEST_CASE("declared rank equals the numerical rank") {
    for (const auto& spec : {InterpolantSpec{InterpolantKind::modal, 5, 0.25}, InterpolantSpec{InterpolantKind::modal, 13, 0.25},
                             InterpolantSpec{InterpolantKind::volume, 4, 0.25}, InterpolantSpec{InterpolantKind::volume, 6, 0.25},
                             InterpolantSpec{InterpolantKind::nodal, 5, 0.25}}) {
        CHECK_MESSAGE(numerical_rank(spec, 16) == static_cast<long>(declared_rank(spec)), spec.label());
    }
    CHECK(declared_rank({InterpolantKind::modal, 5, 0.25}) == 40);
    CHECK(declared_rank({InterpolantKind::volume, 4, 0.25}) == 16);
}

TEST_CASE("interpolants reject bands beyond the field resolution") {
    const SpectralField u(32, 2.0 * kPi);
    CHECK_THROWS_AS(apply_interpolant({InterpolantKind::modal, 201, 0.25}, u), std::invalid_argument);
    CHECK_NOTHROW(apply_interpolant({InterpolantKind::modal, 200, 0.25}, u));
    CHECK_THROWS_AS(apply_interpolant({InterpolantKind::volume, 24, 0.25}, u), std::invalid_argument);
    CHECK_NOTHROW(apply_interpolant({InterpolantKind::volume, 22, 0.25}, u));
}

TEST_CASE("constant fit by envelope walk") {
    std::vector<BoundSample> s{{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}};
    auto p = min_sum_bound(s);
    CHECK(p.c1 == doctest::Approx(1.0));
    CHECK(p.c2 == doctest::Approx(1.0));
    s = {{1.0, 1.0, 1.0}};
    p = min_sum_bound(s);
    CHECK(p.c1 == 0.0);
    CHECK(p.c2 == doctest::Approx(1.0));
    // Optimum at the crossing of 2 c1 + c2 = 2 and c1 + 4 c2 = 2.
    s = {{2.0, 1.0, 2.0}, {1.0, 4.0, 2.0}};
    p = min_sum_bound(s);
    CHECK(p.c1 == doctest::Approx(6.0 / 7.0));
    CHECK(p.c2 == doctest::Approx(2.0 / 7.0));
    for (const auto& b : s) CHECK(b.a * p.c1 + b.b * p.c2 >= b.r * (1 - 1e-12));
    CHECK(min_sum_bound(std::vector<BoundSample>{}).c1 == 0.0);
    s = {{0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(min_sum_bound(s), NumericalError);
    CHECK(c_J(0.5, 2.0) == doctest::Approx(2.5));
}

TEST_CASE("constant fit is optimal on random constraint sets") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BoundSample> s;
        for (int i = 0; i < 20; ++i) s.push_back({u(rng), u(rng), u(rng)});
        const auto p = min_sum_bound(s);
        for (const auto& b : s) CHECK(b.a * p.c1 + b.b * p.c2 >= b.r * (1 - 1e-12));
        // Brute force over a fine grid of feasible points.
        double best = 1e300;
        for (int i = 0; i <= 400; ++i) {
            const double c1 = 4.0 * i / 400;
            double c2 = 0.0;
            for (const auto& b : s) c2 = std::max(c2, b.b > 0 ? (b.r - b.a * c1) / b.b : (b.r - b.a * c1 > 0 ? 1e300 : 0.0));
            best = std::min(best, c1 + c2);
        }
        CHECK(p.c1 + p.c2 <= best + 1e-12);
    }
}

TEST_CASE("approximation constants") {
    EnsembleSpec e;
    e.size = 40;
    const auto modal = estimate_approx_constants({InterpolantKind::modal, 10, 0.25}, e, 64, 2.0 * kPi);
    CHECK(modal.c2 <= 1.0 + 1e-6);
    CHECK(modal.c1 + modal.c2 <= 1.0 + 1e-6);
    CHECK(modal.samples == 40);
    CHECK(modal.cJ == doctest::Approx(c_J(modal.c1, modal.c2)));
    const auto vol = estimate_approx_constants({InterpolantKind::volume, 8, 0.25}, e, 64, 2.0 * kPi);
    CHECK(vol.c1 + vol.c2 > 0.0);
    CHECK(vol.c1 + vol.c2 < 2.0);
    e.size = 0;
    CHECK_THROWS_AS(estimate_approx_constants({InterpolantKind::modal, 10, 0.25}, e, 64, 2.0 * kPi), std::invalid_argument);
}
