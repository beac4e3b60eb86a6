#include "dform/inequality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dform/norms.hpp"
#include "dform/operators.hpp"
#include "dform/seed.hpp"

namespace dform {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// |A^{q/4} u| for q = 0..6, plus the sup and L4 norms.
struct FieldNorms {
    std::array<double, 7> quarter{};
    double linf = 0.0;
    double l4 = 0.0;

    double power(int q) const { return quarter[static_cast<std::size_t>(q)]; }
};

FieldNorms field_norms(const SpectralField& u) {
    FieldNorms n;
    for (int q = 0; q <= 6; ++q) n.quarter[static_cast<std::size_t>(q)] = power_norm(u, 0.25 * q);
    n.linf = norm_linf(u);
    n.l4 = norm_l4(u);
    return n;
}

/// Everything the ratios need for a pair (u, v).
struct PairData {
    double kappa0 = 1.0;
    FieldNorms u;
    FieldNorms v;
    double b_uv = 0.0;       ///< |B(u, v)|
    double b_uv_grad = 0.0;  ///< |A^{1/2} B(u, v)|
    double b_vu = 0.0;       ///< |B(v, u)|
};

PairData pair_data(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u, v, "inequality_ratio");
    PairData d;
    d.kappa0 = u.kappa0();
    d.u = field_norms(u);
    d.v = field_norms(v);
    const SpectralField buv = bilinear(u, v);
    d.b_uv = norm_h(buv);
    d.b_uv_grad = norm_v(buv);
    d.b_vu = norm_h(bilinear(v, u));
    return d;
}

double ratio_or_nan(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : kNaN; }

/// log(e x)^{1/2} with x clamped to >= 1.
double log_factor(double x) { return std::sqrt(std::log(std::numbers::e * std::max(1.0, x))); }

double ratio_from(InequalityId id, const PairData& d) {
    const auto& u = d.u;
    const auto& v = d.v;
    const double k0 = d.kappa0;
    switch (id) {
        case InequalityId::agmon: return ratio_or_nan(u.linf, std::sqrt(u.power(0) * u.power(4)));
        case InequalityId::sobolev: return ratio_or_nan(u.l4, u.power(1));
        case InequalityId::ladyzhenskaya: return ratio_or_nan(u.l4, std::sqrt(u.power(0) * u.power(2)));
        case InequalityId::ladyzhenskaya_tilde: return ratio_or_nan(u.power(1), std::sqrt(u.power(0) * u.power(2)));
        case InequalityId::a46a:
            return ratio_or_nan(d.b_uv, std::sqrt(u.power(0) * u.power(2) * v.power(2) * v.power(4)));
        case InequalityId::a46b: return ratio_or_nan(d.b_uv, std::sqrt(u.power(0) * u.power(4)) * v.power(2));
        case InequalityId::titi: {
            if (u.power(2) == 0.0) return kNaN;
            return ratio_or_nan(d.b_vu, v.power(2) * u.power(2) * log_factor(u.power(4) / (k0 * u.power(2))));
        }
        case InequalityId::brezis: {
            if (v.power(2) == 0.0) return kNaN;
            return ratio_or_nan(d.b_vu, v.power(2) * u.power(2) * log_factor(v.power(4) / (k0 * v.power(2))));
        }
        case InequalityId::bound_1_2:
            return ratio_or_nan(d.b_uv_grad,
                                u.power(3) * v.power(3) + std::sqrt(u.power(0) * u.power(4)) * v.power(4));
        case InequalityId::bound_1_3:
            return ratio_or_nan(d.b_uv_grad,
                                u.power(2) * std::sqrt(v.power(2) * v.power(6)) + u.power(1) * v.power(5));
        case InequalityId::poincare_v: return ratio_or_nan(k0 * u.power(0), u.power(2));
        case InequalityId::poincare_a: return ratio_or_nan(k0 * u.power(2), u.power(4));
    }
    return kNaN;
}

EnsembleSpec stream(const EnsembleSpec& base, const char* name) {
    EnsembleSpec s = base;
    s.seed = derive_seed(base.seed, name);
    return s;
}

double inner_ratio(double value, double scale) { return scale > 0.0 ? std::abs(value) / scale : 0.0; }

}  // namespace

const char* inequality_name(InequalityId id) {
    switch (id) {
        case InequalityId::agmon: return "agmon";
        case InequalityId::sobolev: return "sobolev";
        case InequalityId::ladyzhenskaya: return "ladyzhenskaya";
        case InequalityId::ladyzhenskaya_tilde: return "ladyzhenskaya_tilde";
        case InequalityId::a46a: return "a46a";
        case InequalityId::a46b: return "a46b";
        case InequalityId::titi: return "titi";
        case InequalityId::brezis: return "brezis";
        case InequalityId::bound_1_2: return "bound_1_2";
        case InequalityId::bound_1_3: return "bound_1_3";
        case InequalityId::poincare_v: return "poincare_v";
        case InequalityId::poincare_a: return "poincare_a";
    }
    return "?";
}

const std::vector<InequalityId>& all_inequalities() {
    static const std::vector<InequalityId> ids{
        InequalityId::agmon, InequalityId::sobolev,   InequalityId::ladyzhenskaya, InequalityId::ladyzhenskaya_tilde,
        InequalityId::a46a,  InequalityId::a46b,      InequalityId::titi,          InequalityId::brezis,
        InequalityId::bound_1_2, InequalityId::bound_1_3, InequalityId::poincare_v, InequalityId::poincare_a};
    return ids;
}

InequalityId parse_inequality(std::string_view name) {
    for (auto id : all_inequalities())
        if (name == inequality_name(id)) return id;
    throw std::invalid_argument("unknown inequality '" + std::string(name) + "'");
}

double inequality_ratio(InequalityId id, const SpectralField& u, const SpectralField& v) {
    return ratio_from(id, pair_data(u, v));
}

std::pair<SpectralField, SpectralField> inequality_pair(const EnsembleSpec& ensemble, int resolution, double length,
                                                        std::size_t i) {
    return {ensemble_member(ensemble, resolution, length, i),
            ensemble_member(stream(ensemble, "partner"), resolution, length, i)};
}

std::vector<ConstantEstimate> estimate_inequality_constants(const EnsembleSpec& ensemble, int resolution,
                                                            double length) {
    if (ensemble.size == 0) throw std::invalid_argument("empty ensemble");
    const auto& ids = all_inequalities();
    std::vector<ConstantEstimate> out(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) out[k].id = ids[k];
    for (std::size_t i = 0; i < ensemble.size; ++i) {
        const auto [u, v] = inequality_pair(ensemble, resolution, length, i);
        const PairData d = pair_data(u, v);
        for (auto& est : out) {
            const double r = ratio_from(est.id, d);
            if (std::isnan(r)) {
                ++est.degenerate;
                continue;
            }
            ++est.used;
            est.constant = std::max(est.constant, r);
        }
    }
    return out;
}

ConstantEstimate estimate_inequality_constant(InequalityId id, const EnsembleSpec& ensemble, int resolution,
                                              double length) {
    if (ensemble.size == 0) throw std::invalid_argument("empty ensemble");
    ConstantEstimate est;
    est.id = id;
    for (std::size_t i = 0; i < ensemble.size; ++i) {
        const auto [u, v] = inequality_pair(ensemble, resolution, length, i);
        const double r = inequality_ratio(id, u, v);
        if (std::isnan(r)) {
            ++est.degenerate;
            continue;
        }
        ++est.used;
        est.constant = std::max(est.constant, r);
    }
    return est;
}

std::size_t count_violations(InequalityId id, double constant, const EnsembleSpec& ensemble, int resolution,
                             double length, double margin) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < ensemble.size; ++i) {
        const auto [u, v] = inequality_pair(ensemble, resolution, length, i);
        const double r = inequality_ratio(id, u, v);
        if (!std::isnan(r) && r > constant * (1.0 + margin)) ++bad;
    }
    return bad;
}

IdentityReport identity_violations(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    IdentityReport rep;
    rep.samples = 1;
    const SpectralField buv = bilinear(u, v);
    const SpectralField buw = bilinear(u, w);
    rep.flip = inner_ratio(inner(buv, w) + inner(buw, v), norm_h(buv) * norm_h(w) + norm_h(buw) * norm_h(v));
    const SpectralField au = stokes_apply(u, 1.0);
    const SpectralField av = stokes_apply(v, 1.0);
    const SpectralField buu = bilinear_self(u);
    rep.ortho = inner_ratio(inner(buu, au), norm_h(buu) * norm_h(au));
    const SpectralField bvv = bilinear_self(v);
    const SpectralField bvu = bilinear(v, u);
    rep.moveu = inner_ratio(inner(bvv, au) + inner(bvu, av) + inner(buv, av),
                            norm_h(bvv) * norm_h(au) + (norm_h(bvu) + norm_h(buv)) * norm_h(av));
    return rep;
}

IdentityReport check_identity_suite(const EnsembleSpec& ensemble, int resolution, double length) {
    IdentityReport total;
    const EnsembleSpec partner = stream(ensemble, "partner");
    const EnsembleSpec third = stream(ensemble, "third");
    for (std::size_t i = 0; i < ensemble.size; ++i) {
        const auto r = identity_violations(ensemble_member(ensemble, resolution, length, i),
                                           ensemble_member(partner, resolution, length, i),
                                           ensemble_member(third, resolution, length, i));
        total.flip = std::max(total.flip, r.flip);
        total.ortho = std::max(total.ortho, r.ortho);
        total.moveu = std::max(total.moveu, r.moveu);
        ++total.samples;
    }
    return total;
}

double linf_lemma_LN(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("lemma parameter N must be positive");
    return std::sqrt(8.0 + 2.0 * std::numbers::pi * std::log(N)) / (2.0 * std::numbers::pi);
}

double linf_lemma_ratio(const SpectralField& phi, double N) {
    const double lhs = norm_linf(phi);
    const double rhs = linf_lemma_LN(N) * norm_v(phi) + norm_da(phi) / (std::sqrt(std::numbers::pi) * phi.kappa0() * N);
    return ratio_or_nan(lhs, rhs);
}

LinfReport check_linf_lemma(const EnsembleSpec& ensemble, int resolution, double length, const std::vector<int>& n_set) {
    LinfReport rep;
    for (std::size_t i = 0; i < ensemble.size; ++i) {
        const SpectralField phi = scalar_ensemble_member(ensemble, resolution, length, i);
        const double lhs = norm_linf(phi);
        const double grad = norm_v(phi);
        const double lap = norm_da(phi);
        ++rep.samples;
        for (int N : n_set) {
            const double rhs = linf_lemma_LN(N) * grad + lap / (std::sqrt(std::numbers::pi) * phi.kappa0() * N);
            ++rep.checks;
            if (!(rhs > 0.0)) {
                if (lhs > 0.0) ++rep.violations;
                continue;
            }
            const double r = lhs / rhs;
            if (r > rep.max_ratio) {
                rep.max_ratio = r;
                rep.worst_N = N;
            }
            if (r > 1.0) ++rep.violations;
        }
    }
    return rep;
}

}  // namespace dform
