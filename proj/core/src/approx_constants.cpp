#include "dform/approx_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dform/error.hpp"
#include "dform/norms.hpp"

namespace dform {

namespace {

/// Line y = slope * x + intercept.
struct Line {
    double slope;
    double intercept;
    double at(double x) const { return slope * x + intercept; }
};

/// Upper envelope of lines (slopes sorted ascending, duplicates resolved).
std::vector<Line> upper_envelope(std::vector<Line> lines) {
    std::sort(lines.begin(), lines.end(), [](const Line& p, const Line& q) {
        return p.slope < q.slope || (p.slope == q.slope && p.intercept < q.intercept);
    });
    std::vector<Line> hull;
    for (const auto& l : lines) {
        if (!hull.empty() && hull.back().slope == l.slope) hull.pop_back();
        while (hull.size() >= 2) {
            const Line& p = hull[hull.size() - 2];
            const Line& q = hull.back();
            // q is useless if l overtakes p no later than q does.
            const double lhs = (l.intercept - p.intercept) * (q.slope - p.slope);
            const double rhs = (q.intercept - p.intercept) * (l.slope - p.slope);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(l);
    }
    return hull;
}

}  // namespace

double c_J(double c1, double c2) { return c1 + 0.5 * c2 * c2; }

ConstantPair min_sum_bound(std::span<const BoundSample> samples) {
    double c1_lo = 0.0;
    std::vector<Line> lines;
    for (const auto& s : samples) {
        if (!(s.r > 0.0)) continue;
        if (s.b > 0.0) {
            lines.push_back({-s.a / s.b, s.r / s.b});
        } else if (s.a > 0.0) {
            c1_lo = std::max(c1_lo, s.r / s.a);
        } else {
            throw NumericalError("constant fit infeasible: sample with positive residual and zero bound");
        }
    }
    if (lines.empty()) return {c1_lo, 0.0};
    const auto hull = upper_envelope(std::move(lines));
    const auto c2_at = [&](double x) {
        double y = 0.0;
        for (const auto& l : hull) y = std::max(y, l.at(x));
        return y;
    };
    std::vector<double> candidates{c1_lo};
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        const double x = (hull[i].intercept - hull[i + 1].intercept) / (hull[i + 1].slope - hull[i].slope);
        if (x > c1_lo && std::isfinite(x)) candidates.push_back(x);
    }
    for (const auto& l : hull)
        if (l.slope < 0.0) {
            const double x = -l.intercept / l.slope;
            if (x > c1_lo) candidates.push_back(x);
        }
    std::sort(candidates.begin(), candidates.end());
    ConstantPair best{c1_lo, c2_at(c1_lo)};
    double best_sum = best.c1 + best.c2;
    for (double x : candidates) {
        const double y = c2_at(x);
        if (x + y < best_sum * (1.0 - 1e-14)) {
            best = {x, y};
            best_sum = x + y;
        }
    }
    return best;
}

ApproxConstants estimate_approx_constants(const InterpolantSpec& spec, const EnsembleSpec& ensemble, int resolution,
                                          double length) {
    if (ensemble.size == 0) throw std::invalid_argument("empty ensemble");
    const double h = h_of(spec, length);
    std::vector<BoundSample> plain;
    std::vector<BoundSample> tilde;
    plain.reserve(ensemble.size);
    tilde.reserve(ensemble.size);
    for (std::size_t i = 0; i < ensemble.size; ++i) {
        const SpectralField phi = ensemble_member(ensemble, resolution, length, i);
        const SpectralField err = apply_interpolant(spec, phi) - phi;
        const double grad = norm_v(phi);
        const double lap = norm_da(phi);
        plain.push_back({h * grad, h * h * lap, norm_h(err)});
        tilde.push_back({grad, h * lap, norm_v(err)});
    }
    const auto p = min_sum_bound(plain);
    const auto t = min_sum_bound(tilde);
    ApproxConstants out;
    out.h = h;
    out.c1 = p.c1;
    out.c2 = p.c2;
    out.c1t = t.c1;
    out.c2t = t.c2;
    out.cJ = c_J(p.c1, p.c2);
    out.samples = ensemble.size;
    return out;
}

}  // namespace dform
