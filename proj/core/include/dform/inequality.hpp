#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dform/field.hpp"
#include "dform/random_field.hpp"

namespace dform {

/// Functional inequalities whose constants are estimated. Trilinear forms
/// are taken at their worst-case third argument, i.e. |(B(u, v), w)| <= |B(u, v)| |w|.
enum class InequalityId {
    agmon,                ///< ||u||_inf <= c |u|^{1/2} |Au|^{1/2}
    sobolev,              ///< ||u||_{L4} <= c |A^{1/4} u|
    ladyzhenskaya,        ///< ||u||_{L4} <= c |u|^{1/2} ||u||^{1/2}
    ladyzhenskaya_tilde,  ///< |A^{1/4} u| <= c |u|^{1/2} ||u||^{1/2}
    a46a,                 ///< |B(u, v)| <= c |u|^{1/2} ||u||^{1/2} ||v||^{1/2} |Av|^{1/2}
    a46b,                 ///< |B(u, v)| <= c |u|^{1/2} |Au|^{1/2} ||v||
    titi,                 ///< |B(w, u)| <= c ||w|| ||u|| log(e |Au| / (kappa0 ||u||))^{1/2}
    brezis,               ///< |B(w, u)| <= c ||w|| ||u|| log(e |Aw| / (kappa0 ||w||))^{1/2}
    bound_1_2,            ///< |A^{1/2} B(u, v)| <= c (|A^{3/4}u| |A^{3/4}v| + |u|^{1/2} |Au|^{1/2} |Av|)
    bound_1_3,            ///< |A^{1/2} B(u, v)| <= c (||u|| ||v||^{1/2} |A^{3/2}v|^{1/2} + |A^{1/4}u| |A^{5/4}v|)
    poincare_v,           ///< kappa0 |u| <= c ||u||
    poincare_a,           ///< kappa0 ||u|| <= c |Au|
};

const char* inequality_name(InequalityId id);
InequalityId parse_inequality(std::string_view name);
const std::vector<InequalityId>& all_inequalities();

/// Left side over right side with constant 1 for the pair (u, v); the
/// single-field inequalities use u only, titi and brezis use w = v.
/// Returns NaN for a degenerate sample (zero right side).
double inequality_ratio(InequalityId id, const SpectralField& u, const SpectralField& v);

struct ConstantEstimate {
    InequalityId id = InequalityId::agmon;
    double constant = 0.0;
    std::size_t used = 0;
    std::size_t degenerate = 0;
};

/// Pair i of the inequality ensemble: (member i, member i of the partner
/// stream derived from the seed).
std::pair<SpectralField, SpectralField> inequality_pair(const EnsembleSpec& ensemble, int resolution, double length,
                                                        std::size_t i);

/// Max ratio over the ensemble for every inequality, in all_inequalities() order.
std::vector<ConstantEstimate> estimate_inequality_constants(const EnsembleSpec& ensemble, int resolution, double length);

ConstantEstimate estimate_inequality_constant(InequalityId id, const EnsembleSpec& ensemble, int resolution,
                                              double length);

/// Samples whose ratio exceeds constant * (1 + margin).
std::size_t count_violations(InequalityId id, double constant, const EnsembleSpec& ensemble, int resolution,
                             double length, double margin = 0.0);

struct IdentityReport {
    /// Max relative violations of (B(u,v),w) = -(B(u,w),v), (B(u,u),Au) = 0
    /// and (B(v,v),Au) + (B(v,u),Av) + (B(u,v),Av) = 0.
    double flip = 0.0;
    double ortho = 0.0;
    double moveu = 0.0;
    std::size_t samples = 0;
    bool pass(double tol = 1e-10) const { return flip < tol && ortho < tol && moveu < tol; }
};

IdentityReport identity_violations(const SpectralField& u, const SpectralField& v, const SpectralField& w);

/// Identity checks over triples drawn from the ensemble.
IdentityReport check_identity_suite(const EnsembleSpec& ensemble, int resolution, double length);

/// (8 + 2 pi log N)^{1/2} / (2 pi)
double linf_lemma_LN(double N);

/// ||phi||_inf <= L_N |grad phi| + (sqrt(pi) kappa0 N)^{-1} |lap phi|, one
/// sample and one N; returns left / right (NaN for phi = 0).
double linf_lemma_ratio(const SpectralField& phi, double N);

struct LinfReport {
    std::size_t samples = 0;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;
    int worst_N = 0;
};

/// Scalar ensemble checked at every N in `n_set`.
LinfReport check_linf_lemma(const EnsembleSpec& ensemble, int resolution, double length, const std::vector<int>& n_set);

}  // namespace dform
