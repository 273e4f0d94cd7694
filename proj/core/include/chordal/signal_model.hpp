#pragma once

#include <cstdint>
#include <span>

#include "chordal/types.hpp"

namespace chordal {

/// x[n] = amplitude * sin(2*pi*f*n/fs + phase), floor(duration*fs) samples.
MotionTrace gen_sinusoid(double amplitude_m, double freq_hz, double sample_rate_hz,
                         double duration_s, double phase_rad = 0.0);

/// Pendulum frequency 1/(2*pi*sqrt(h/g)) for cycloid length h (g = 9.8).
double gen_pendulum_freq(double h_m);

/// Pointwise sum of traces sharing length and sample rate.
MotionTrace gen_composite(std::span<const MotionTrace> traces);

/// Quadrature synthesis:
///   I[n] = A_I*cos(theta0 + 4*pi*x[n]/lambda + phi0[n]) + DC_I[n]
///   Q[n] = A_Q*sin(theta0 + 4*pi*x[n]/lambda + phi0[n]) + DC_Q[n]
/// phi0[n] is i.i.d. Gaussian with std cfg.phase_noise_std_rad, drawn from a
/// generator seeded with `seed` (unused when the std is 0).
IqSeries synthesize_iq(const MotionTrace& motion, const RadarConfig& cfg,
                       std::uint64_t seed = 0);

/// Adds i.i.d. Gaussian noise independently to I and Q. Noise power is set per
/// channel against the mean-square power of that channel so that
/// 10*log10(signal_power/noise_power) = snr_db (the usual awgn convention).
/// Apply noise before injecting DC offsets if the SNR should not count them.
/// Deterministic under a fixed seed.
IqSeries add_noise(const IqSeries& iq, double snr_db, std::uint64_t seed);

}  // namespace chordal
