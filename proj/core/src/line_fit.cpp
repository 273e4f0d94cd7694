#include "chordal/line_fit.hpp"

#include <cmath>

namespace chordal {

namespace {

struct Scatter {
    Point centroid;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;  // centered second moments
};

Scatter scatter_of(std::span<const double> i, std::span<const double> q) {
    if (i.size() != q.size()) throw InvalidInput("I/Q length mismatch");
    if (i.size() < 2) throw InvalidInput("line fit needs at least 2 points");
    const auto n = static_cast<double>(i.size());
    Scatter s;
    for (std::size_t k = 0; k < i.size(); ++k) {
        s.centroid.x += i[k];
        s.centroid.y += q[k];
    }
    s.centroid.x /= n;
    s.centroid.y /= n;
    for (std::size_t k = 0; k < i.size(); ++k) {
        const double dx = i[k] - s.centroid.x;
        const double dy = q[k] - s.centroid.y;
        s.sxx += dx * dx;
        s.sxy += dx * dy;
        s.syy += dy * dy;
    }
    return s;
}

void orient(LineFit& fit, Point from, Point to) {
    const double dot = (to.x - from.x) * fit.line.direction[0] +
                       (to.y - from.y) * fit.line.direction[1];
    if (dot < 0.0) {
        fit.line.direction[0] = -fit.line.direction[0];
        fit.line.direction[1] = -fit.line.direction[1];
        fit.line.normal[0] = -fit.line.normal[0];
        fit.line.normal[1] = -fit.line.normal[1];
    } else if (dot == 0.0) {
        fit.diag.orientation_tie = true;
    }
}

void fill_slope(LineFit& fit) {
    // k = -n1/n2 when defined; vertical lines keep nullopt.
    if (fit.line.normal[1] != 0.0) {
        const double k = -fit.line.normal[0] / fit.line.normal[1];
        fit.diag.slope_k = k;
        fit.diag.intercept_b = fit.line.centroid.y - k * fit.line.centroid.x;
    }
}

}  // namespace

LineFit pca_fit(std::span<const double> i, std::span<const double> q,
                Point orient_from, Point orient_to) {
    const Scatter s = scatter_of(i, q);
    const double trace = s.sxx + s.syy;
    if (trace == 0.0) throw DegenerateFit("all points identical: no principal direction");

    const double half_gap = std::hypot(0.5 * (s.sxx - s.syy), s.sxy);
    const double l1 = 0.5 * trace + half_gap;
    const double l2 = 0.5 * trace - half_gap;
    if (l1 - l2 <= 1e-12 * trace)
        throw DegenerateFit("isotropic point cloud: equal eigenvalues, no principal direction");

    // Principal eigenvector of [[sxx,sxy],[sxy,syy]]; pick the better
    // conditioned of the two equivalent row forms.
    double vx, vy;
    if (s.sxx >= s.syy) {
        vx = l1 - s.syy;
        vy = s.sxy;
    } else {
        vx = s.sxy;
        vy = l1 - s.sxx;
    }
    const double norm = std::hypot(vx, vy);

    LineFit fit;
    fit.line.centroid = s.centroid;
    fit.line.direction = {vx / norm, vy / norm};
    fit.line.normal = {-fit.line.direction[1], fit.line.direction[0]};
    fit.diag.singular_values = {l1, l2 < 0.0 ? 0.0 : l2};
    orient(fit, orient_from, orient_to);
    fill_slope(fit);
    return fit;
}

LineFit ls_fit(std::span<const double> i, std::span<const double> q,
               Point orient_from, Point orient_to) {
    const Scatter s = scatter_of(i, q);
    if (s.sxx == 0.0)
        throw DegenerateFit("all abscissae equal: vertical data breaks the LS fit");

    const double k = s.sxy / s.sxx;
    const double norm = std::hypot(1.0, k);

    LineFit fit;
    fit.line.centroid = s.centroid;
    fit.line.direction = {1.0 / norm, k / norm};
    fit.line.normal = {-fit.line.direction[1], fit.line.direction[0]};
    const double half_gap = std::hypot(0.5 * (s.sxx - s.syy), s.sxy);
    fit.diag.singular_values = {0.5 * (s.sxx + s.syy) + half_gap,
                                std::max(0.0, 0.5 * (s.sxx + s.syy) - half_gap)};
    orient(fit, orient_from, orient_to);
    fill_slope(fit);
    return fit;
}

}  // namespace chordal
