#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dform/field.hpp"

namespace dform {

enum class InterpolantKind { modal, volume, nodal };

const char* kind_name(InterpolantKind kind);
/// Accepts "modal", "volume", "nodal".
InterpolantKind parse_kind(std::string_view name);

/// A finite-rank interpolant J_h acting componentwise on vector fields.
///
/// - modal: keeps wavevectors with |k|^2 <= resolution (integer units).
/// - volume: means over resolution x resolution square cells.
/// - nodal: cosine-bump local averages of radius stencil * h centred at
///   the cell centres.
///
/// Cell-based outputs are the piecewise-constant extension truncated to
/// |k_i| < resolution / 2, with zero mean.
struct InterpolantSpec {
    InterpolantKind kind = InterpolantKind::modal;
    int resolution = 8;
    double stencil = 0.25;

    /// Parses "kind:N", e.g. "volume:16".
    static InterpolantSpec parse(std::string_view text);
    std::string label() const;
};

void validate(const InterpolantSpec& spec);

/// Length scale: lambda_{m+1}^{-1/2} for modal, L / N otherwise.
double h_of(const InterpolantSpec& spec, double length);

/// Real dimension of the range (per two-component field).
std::size_t declared_rank(const InterpolantSpec& spec);

/// J phi. Throws std::invalid_argument when the output band does not fit
/// in the dealiased band of the field's grid.
SpectralField apply_interpolant(const InterpolantSpec& spec, const SpectralField& phi);

/// The raw measurements of a cell-based interpolant: per component, an
/// N x N row-major array (first index along x1) of cell means or nodal
/// averages.
std::array<std::vector<double>, 2> cell_measurements(const InterpolantSpec& spec, const SpectralField& phi);

/// Smallest sum of two squares strictly greater than m.
int next_sum_of_two_squares(int m);

}  // namespace dform
