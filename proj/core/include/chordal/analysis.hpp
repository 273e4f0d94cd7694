#pragma once

#include <span>
#include <vector>

#include "chordal/types.hpp"

namespace chordal {

struct Spectrum {
    std::vector<double> freqs_hz;     // ascending, starts at 0
    std::vector<double> magnitudes;   // same length as freqs_hz
    double resolution_hz = 0.0;       // bin width
    bool normalized = false;          // true when peak scaled to 1
};

struct ErrorModelPoint {
    double velocity_m_s = 0.0;
    double sample_rate_hz = 0.0;
    double wavelength_m = 0.0;
    double relative_error = 0.0;
};

enum class WindowKind { none, hann };
enum class Align { none, scale };

/// Centered moving average of `order` taps; the window truncates at the
/// record edges so the output length equals the input length.
MotionTrace moving_average(const MotionTrace& trace, int order);

/// One-sided amplitude spectrum: mean removed, optional Hann window, zero
/// padded to at least `zero_pad_to` (0 = 4x the input length), rounded up to a
/// power of two.
Spectrum spectrum(const MotionTrace& trace, WindowKind window = WindowKind::hann,
                  std::size_t zero_pad_to = 0);

/// Relative chord-vs-arc length error 1 - 2*sin(dphi/2)/dphi, with a series
/// evaluation near 0. Valid for 0 <= dphi <= pi.
double chord_error(double delta_phi_rad);

/// Chord-approximation system error as a function of sampling rate:
/// error = 1 - sin(2*pi*v/(lambda*fs)) / (2*pi*v/(lambda*fs)).
std::vector<ErrorModelPoint> error_vs_rate(double velocity_m_s, double wavelength_m,
                                           std::span<const double> sample_rates_hz);

/// RMS difference between traces. With Align::scale, b is least-squares
/// amplitude-scaled onto a first (the chord output is normalized, so a direct
/// difference would be meaningless).
double rms_error(const MotionTrace& a, const MotionTrace& b, Align align);

/// Frequency of the maximum magnitude in [band_lo_hz, band_hi_hz], refined by
/// parabolic interpolation over the peak bin and its neighbors.
double peak_frequency(const Spectrum& spec, double band_lo_hz, double band_hi_hz);

}  // namespace chordal
