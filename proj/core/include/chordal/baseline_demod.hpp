#pragma once

#include <optional>

#include "chordal/types.hpp"

namespace chordal {

struct CircleEstimate {
    Point center;
    double radius = 0.0;
    int iterations = 0;
    double final_loss = 0.0;
    bool converged = true;
};

/// Four-quadrant arctangent phase about `center`, unwrapped with a pi jump
/// threshold. Output is radians, or displacement scaled by lambda/4pi when a
/// wavelength is given. Throws InvalidInput (with the sample index) when a
/// sample coincides with the center.
MotionTrace arctan_demod(const IqSeries& iq, Point center,
                         std::optional<double> wavelength_m = std::nullopt);

/// Extended differentiate-and-cross-multiply phase accumulation about
/// `center`:
///   dphi[k] = (I[k-1]*dQ - Q[k-1]*dI) / (I[k-1]^2 + Q[k-1]^2)
/// on centered data, cumulatively summed. Scaling as arctan_demod.
MotionTrace dacm_demod(const IqSeries& iq, Point center,
                       std::optional<double> wavelength_m = std::nullopt);

/// Circle-center estimation: algebraic least-squares initialization followed
/// by gradient descent on the radius-variance loss
///   L(a,b) = sum_k (dist_k(a,b) - mean_dist(a,b))^2
/// with backtracking step halving. Stops when the loss decrease drops below
/// tol_rel times the initial loss or after max_iters. Throws DegenerateFit
/// for collinear points.
CircleEstimate estimate_center(const IqSeries& iq,
                               std::optional<Point> init = std::nullopt,
                               int max_iters = 500, double tol_rel = 1e-10);

}  // namespace chordal
