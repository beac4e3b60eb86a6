#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dform/admissible.hpp"
#include "dform/inequality.hpp"
#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/random_field.hpp"

using namespace dform;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralField shear(int n, double length, int m) {
    SpectralField u(n, length);
    u.set_mode(0, 0, m, Complex{0.0, -0.5});
    return u;
}

EnsembleSpec small(std::size_t size, std::uint64_t seed = 1) {
    EnsembleSpec e;
    e.size = size;
    e.seed = seed;
    return e;
}

}  // namespace

TEST_CASE("inequality names round trip") {
    CHECK(all_inequalities().size() == 12);
    for (auto id : all_inequalities()) CHECK(parse_inequality(inequality_name(id)) == id);
    CHECK_THROWS_AS(parse_inequality("holder"), std::invalid_argument);
}

TEST_CASE("ratios on a single shear mode") {
    const double L = 2.0 * kPi;
    const SpectralField u = shear(64, L, 3);
    const double h = L / std::sqrt(2.0);
    CHECK(inequality_ratio(InequalityId::poincare_v, u, u) == doctest::Approx(1.0 / 3.0));
    CHECK(inequality_ratio(InequalityId::poincare_a, u, u) == doctest::Approx(1.0 / 3.0));
    CHECK(inequality_ratio(InequalityId::ladyzhenskaya_tilde, u, u) == doctest::Approx(1.0));
    CHECK(inequality_ratio(InequalityId::agmon, u, u) == doctest::Approx(1.0 / (3.0 * h)));
    const double l4 = std::pow(0.375 * L * L, 0.25);
    CHECK(inequality_ratio(InequalityId::sobolev, u, u) == doctest::Approx(l4 / (std::sqrt(3.0) * h)));
    // B(u, u) = 0 for a shear.
    CHECK(inequality_ratio(InequalityId::a46a, u, u) < 1e-15);
    CHECK(inequality_ratio(InequalityId::titi, u, u) < 1e-15);
    const SpectralField zero(64, L);
    for (auto id : all_inequalities()) CHECK(std::isnan(inequality_ratio(id, zero, zero)));
}

TEST_CASE("identity suite") {
    const IdentityReport r = check_identity_suite(small(50), 64, 2.0 * kPi);
    CHECK(r.samples == 50);
    CHECK(r.pass());
    CHECK(r.flip < 1e-12);
    CHECK(r.ortho < 1e-12);
    CHECK(r.moveu < 1e-12);
    // A non-solenoidal first argument breaks the flip identity.
    std::mt19937_64 rng(4);
    SpectralField u = random_solenoidal(32, 2.0 * kPi, 0, -1.0, rng);
    const SpectralField v = random_solenoidal(32, 2.0 * kPi, 0, -1.0, rng);
    const SpectralField w = random_solenoidal(32, 2.0 * kPi, 0, -1.0, rng);
    u.set_mode(0, 1, 1, Complex{1.0, 0.0});
    u.set_mode(1, 1, 1, Complex{1.0, 0.0});
    CHECK(identity_violations(u, v, w).flip > 1e-3);
}

TEST_CASE("ensemble members") {
    const EnsembleSpec e = small(10, 77);
    const SpectralField a = ensemble_member(e, 32, 3.0, 4);
    CHECK(norm_h(a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.max_divergence() < 1e-13);
    CHECK(norm_h(a - ensemble_member(e, 32, 3.0, 4)) == 0.0);
    CHECK(norm_h(a - ensemble_member(e, 32, 3.0, 5)) > 0.1);
    // The same physical field on every grid that resolves the band.
    const SpectralField b = ensemble_member(e, 64, 3.0, 4);
    CHECK(norm_h(resample(a, 64) - b) < 1e-14);
    const SpectralField s = scalar_ensemble_member(e, 32, 3.0, 2);
    CHECK(norm_h(s) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_h(derivative(s, 0)) > 0.0);
    CHECK(effective_band(10, 64) == 10);
    CHECK(effective_band(10, 16) == 5);
    CHECK(effective_band(0, 64) == 21);
    const auto [u, v] = inequality_pair(e, 32, 3.0, 4);
    CHECK(norm_h(u - a) == 0.0);
    CHECK(norm_h(u - v) > 0.1);
}

TEST_CASE("inequality constants") {
    const EnsembleSpec e = small(60);
    const auto est = estimate_inequality_constants(e, 64, 2.0 * kPi);
    REQUIRE(est.size() == 12);
    for (const auto& c : est) {
        CHECK(c.constant > 0.0);
        CHECK(std::isfinite(c.constant));
        CHECK(c.used + c.degenerate == 60);
        CHECK(count_violations(c.id, c.constant, e, 64, 2.0 * kPi) == 0);
    }
    const auto one = estimate_inequality_constant(InequalityId::brezis, e, 64, 2.0 * kPi);
    CHECK(one.constant == est[7].constant);
    // Poincare constants are at most one.
    CHECK(est[10].constant <= 1.0 + 1e-12);
    CHECK(est[11].constant <= 1.0 + 1e-12);
}

TEST_CASE("L-infinity lemma") {
    CHECK(linf_lemma_LN(1.0) == doctest::Approx(std::sqrt(8.0) / (2.0 * kPi)));
    CHECK(linf_lemma_LN(10.0) == doctest::Approx(std::sqrt(8.0 + 2.0 * kPi * std::log(10.0)) / (2.0 * kPi)));
    EnsembleSpec e = small(200);
    e.band = 0;
    const LinfReport r = check_linf_lemma(e, 32, 2.0 * kPi, {3, 8, 16, 64});
    CHECK(r.samples == 200);
    CHECK(r.checks == 800);
    CHECK(r.violations == 0);
    CHECK(r.max_ratio < 1.0);
    CHECK(std::isnan(linf_lemma_ratio(SpectralField(32, 1.0), 4.0)));
}

TEST_CASE("admissible region") {
    const ThresholdConstants tc{1.0, 1.0, 1.0};
    const InterpolantConstants jc{0.5, 1.0};
    CHECK(jc.cJ() == doctest::Approx(1.0));
    const AdmissibleRegion r = admissible_region(5.0, 2.0, tc, jc);
    CHECK(r.mu_min_sync == doctest::Approx(30.0 * std::log(std::cbrt(2.0) * 5.0)));
    CHECK(r.h_max(10.0) == doctest::Approx(1.0 / std::sqrt(2.0 * 10.0 * 4.0 * 1.0)));
    CHECK(r.h_max_W(10.0) == doctest::Approx(1.0 / std::sqrt(4.0 * 10.0 * 4.0 * 1.25)));
    CHECK(r.sync_admissible(60.0, 0.01));
    CHECK_FALSE(r.sync_admissible(60.0, 1.0));
    CHECK_FALSE(r.sync_admissible(10.0, 0.01));
    CHECK(r.warnings.empty());
    CHECK(r.mu_W_low == 0.0);

    const AdmissibleRegion w = admissible_region(5.0, 2.0, tc, jc, 3.0);
    CHECK(w.mu_W_low == doctest::Approx(80.0 * 9.0 * 9.0 * std::log(std::sqrt(8.0) * 3.0 * 9.0)));
    CHECK(w.mu_W_high == doctest::Approx(2.0 * w.mu_W_low));

    const AdmissibleRegion m = admissible_region_with_margin(5.0, 2.0, tc, jc, 0.0, 2.0);
    CHECK(m.mu_min_sync > r.mu_min_sync);
    CHECK(m.h_max(60.0) < r.h_max(60.0));
    CHECK_FALSE(admissible_region(0.5, 1.0, tc, jc).warnings.empty());
    CHECK_THROWS_AS(admissible_region(-1.0, 1.0, tc, jc), std::invalid_argument);
}
