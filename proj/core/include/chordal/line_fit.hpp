#pragma once

#include <array>
#include <optional>
#include <span>

#include "chordal/types.hpp"

namespace chordal {

/// Oriented line in the IQ plane: unit direction plus centroid. The slope form
/// y = k*x + b is singular for vertical lines, so the vector form is primary
/// and slope/intercept live in the diagnostics.
struct DirectedLine {
    Point centroid;
    std::array<double, 2> direction{1.0, 0.0};
    std::array<double, 2> normal{0.0, 1.0};
};

struct FitDiagnostics {
    std::array<double, 2> singular_values{0.0, 0.0};  // descending
    std::optional<double> slope_k;                    // nullopt = vertical
    std::optional<double> intercept_b;
    bool orientation_tie = false;  // orient pair was perpendicular to the line
};

struct LineFit {
    DirectedLine line;
    FitDiagnostics diag;
};

/// Total-least-squares line through the points: centroid of the segment plus
/// the principal eigenvector of the centered 2x2 scatter matrix. The direction
/// sign is flipped so that (orient_to - orient_from) . direction >= 0.
/// Throws DegenerateFit for all-identical points or an isotropic cloud
/// (equal eigenvalues).
LineFit pca_fit(std::span<const double> i, std::span<const double> q,
                Point orient_from, Point orient_to);

/// Ordinary least squares of Q on I, oriented like pca_fit. Throws
/// DegenerateFit when all abscissae are equal (the vertical failure mode).
LineFit ls_fit(std::span<const double> i, std::span<const double> q,
               Point orient_from, Point orient_to);

}  // namespace chordal
