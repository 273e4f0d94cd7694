#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "chordal/signal_model.hpp"
#include "chordal/types.hpp"

namespace chordal::testing {

/// Points on a circular arc: phase sweeps linearly from phi0 to phi1.
inline IqSeries make_arc(Point center, double radius, double phi0, double phi1,
                         std::size_t n, double fs = 90.0) {
    IqSeries iq;
    iq.sample_rate_hz = fs;
    iq.i.resize(n);
    iq.q.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
        const double phi = phi0 + (phi1 - phi0) * t;
        iq.i[k] = center.x + radius * std::cos(phi);
        iq.q[k] = center.y + radius * std::sin(phi);
    }
    return iq;
}

/// Snaps a value to the 2^-26 grid. Sums and differences of grid values with
/// magnitude below ~2^25 are exact in double precision, which is what the
/// bitwise DC-immunity checks rely on.
inline double snap(double x) {
    return std::ldexp(std::round(std::ldexp(x, 26)), -26);
}

inline void snap_all(IqSeries& iq) {
    for (double& v : iq.i) v = snap(v);
    for (double& v : iq.q) v = snap(v);
}

/// The 1 mm / 1.3 Hz / 90 Hz / 3 dB heartbeat simulation record.
inline IqSeries heartbeat_record(double theta0_rad, std::uint64_t seed,
                                 double snr_db = 3.0, double duration_s = 10.0) {
    const MotionTrace motion = gen_sinusoid(1e-3, 1.3, 90.0, duration_s);
    RadarConfig cfg;
    cfg.wavelength_m = 12.5e-3;
    cfg.theta0_rad = theta0_rad;
    cfg.sample_rate_hz = 90.0;
    return add_noise(synthesize_iq(motion, cfg), snr_db, seed);
}

inline double angle_of(const std::array<double, 2>& v) {
    return std::atan2(v[1], v[0]);
}

/// Acute angle between a direction and the I axis, in degrees (0..90).
inline double axis_angle_deg(const std::array<double, 2>& v) {
    double a = std::abs(std::atan2(v[1], v[0])) * 180.0 / std::numbers::pi;
    if (a > 90.0) a = 180.0 - a;
    return a;
}

}  // namespace chordal::testing
