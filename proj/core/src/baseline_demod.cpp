#include "chordal/baseline_demod.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace chordal {

namespace {

constexpr double kPi = std::numbers::pi;

double lambda_factor(const std::optional<double>& wavelength_m) {
    if (!wavelength_m) return 1.0;
    if (*wavelength_m <= 0.0) throw InvalidInput("wavelength must be > 0");
    return *wavelength_m / (4.0 * kPi);
}

}  // namespace

MotionTrace arctan_demod(const IqSeries& iq, Point center,
                         std::optional<double> wavelength_m) {
    validate(iq);
    const double scale = lambda_factor(wavelength_m);

    MotionTrace out;
    out.sample_rate_hz = iq.sample_rate_hz;
    out.samples.resize(iq.size());

    double prev_wrapped = 0.0;
    double offset = 0.0;
    for (std::size_t k = 0; k < iq.size(); ++k) {
        const double x = iq.i[k] - center.x;
        const double y = iq.q[k] - center.y;
        if (x == 0.0 && y == 0.0)
            throw InvalidInput("sample " + std::to_string(k) +
                               " coincides with the center: phase undefined");
        const double wrapped = std::atan2(y, x);
        if (k > 0) {
            const double jump = wrapped - prev_wrapped;
            if (jump > kPi)
                offset -= 2.0 * kPi;
            else if (jump < -kPi)
                offset += 2.0 * kPi;
        }
        prev_wrapped = wrapped;
        out.samples[k] = (wrapped + offset) * scale;
    }
    return out;
}

MotionTrace dacm_demod(const IqSeries& iq, Point center,
                       std::optional<double> wavelength_m) {
    validate(iq);
    const double scale = lambda_factor(wavelength_m);

    MotionTrace out;
    out.sample_rate_hz = iq.sample_rate_hz;
    out.samples.resize(iq.size());
    out.samples[0] = 0.0;

    for (std::size_t k = 1; k < iq.size(); ++k) {
        const double ip = iq.i[k - 1] - center.x;
        const double qp = iq.q[k - 1] - center.y;
        const double denom = ip * ip + qp * qp;
        if (denom == 0.0)
            throw InvalidInput("sample " + std::to_string(k - 1) +
                               " coincides with the center: DACM undefined");
        const double di = (iq.i[k] - center.x) - ip;
        const double dq = (iq.q[k] - center.y) - qp;
        const double dphi = (ip * dq - qp * di) / denom;
        out.samples[k] = out.samples[k - 1] + dphi * scale;
    }
    return out;
}

CircleEstimate estimate_center(const IqSeries& iq, std::optional<Point> init,
                               int max_iters, double tol_rel) {
    validate(iq);
    if (iq.size() < 3) throw InvalidInput("center estimation needs >= 3 points");
    const std::size_t n = iq.size();

    Point c;
    if (init) {
        c = *init;
    } else {
        // Algebraic circle fit: I^2 + Q^2 + D*I + E*Q + F = 0, linear least
        // squares in (D, E, F) via 3x3 normal equations.
        double si = 0, sq = 0, sii = 0, sqq = 0, siq = 0;
        double sz = 0, siz = 0, sqz = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = iq.i[k], y = iq.q[k];
            const double z = x * x + y * y;
            si += x; sq += y; sii += x * x; sqq += y * y; siq += x * y;
            sz += z; siz += x * z; sqz += y * z;
        }
        const double nn = static_cast<double>(n);
        auto det3 = [](double a, double b, double cc, double d, double e, double f,
                       double g, double h, double i2) {
            return a * (e * i2 - f * h) - b * (d * i2 - f * g) + cc * (d * h - e * g);
        };
        // Normal matrix [[sii,siq,si],[siq,sqq,sq],[si,sq,nn]], rhs -[siz,sqz,sz].
        const double det = det3(sii, siq, si, siq, sqq, sq, si, sq, nn);
        // Collinear points make the centered covariance rank deficient.
        const double cxx = sii - si * si / nn;
        const double cyy = sqq - sq * sq / nn;
        const double cxy = siq - si * sq / nn;
        if (std::abs(cxx * cyy - cxy * cxy) <= 1e-14 * (cxx + cyy) * (cxx + cyy))
            throw DegenerateFit("points are collinear: no circle fits");
        const double D = det3(-siz, siq, si, -sqz, sqq, sq, -sz, sq, nn) / det;
        const double E = det3(sii, -siz, si, siq, -sqz, sq, si, -sz, nn) / det;
        c = Point{-D / 2.0, -E / 2.0};
    }

    auto radii_loss = [&](Point p, double& mean_r) {
        double sum = 0.0;
        std::vector<double> d(n);
        for (std::size_t k = 0; k < n; ++k) {
            d[k] = std::hypot(iq.i[k] - p.x, iq.q[k] - p.y);
            sum += d[k];
        }
        mean_r = sum / static_cast<double>(n);
        double loss = 0.0;
        for (double dk : d) loss += (dk - mean_r) * (dk - mean_r);
        return loss;
    };

    double mean_r = 0.0;
    double loss = radii_loss(c, mean_r);
    const double initial_loss = loss;
    const double tol = tol_rel * (initial_loss > 0.0 ? initial_loss : 1.0);

    int iters = 0;
    bool converged = false;
    for (; iters < max_iters; ++iters) {
        // Gradient of sum_k (d_k - mean_d)^2; the mean term drops out because
        // sum_k (d_k - mean_d) = 0.
        double ga = 0.0, gb = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double dk = std::hypot(iq.i[k] - c.x, iq.q[k] - c.y);
            if (dk == 0.0) continue;
            const double w = 2.0 * (dk - mean_r) / dk;
            ga += w * (c.x - iq.i[k]);
            gb += w * (c.y - iq.q[k]);
        }
        const double gnorm = std::hypot(ga, gb);
        if (gnorm == 0.0) {
            converged = true;
            break;
        }

        double step = 1.0;
        bool improved = false;
        Point cand;
        double cand_loss = loss, cand_mean = mean_r;
        for (int h = 0; h < 60; ++h) {
            cand = Point{c.x - step * ga, c.y - step * gb};
            cand_loss = radii_loss(cand, cand_mean);
            if (cand_loss < loss) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            converged = true;
            break;
        }
        const double decrease = loss - cand_loss;
        c = cand;
        loss = cand_loss;
        mean_r = cand_mean;
        if (decrease < tol) {
            converged = true;
            ++iters;
            break;
        }
    }

    CircleEstimate est;
    est.center = c;
    est.radius = mean_r;
    est.iterations = iters;
    est.final_loss = loss;
    est.converged = converged;
    return est;
}

}  // namespace chordal
