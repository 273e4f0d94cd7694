#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chordal/line_fit.hpp"
#include "chordal/types.hpp"

namespace chordal {

/// How segment directions are made mutually consistent. A fitted line is only
/// defined up to sign; the sign decides whether a step counts as forward or
/// backward phase, so all segments must agree on which way is "forward".
enum class OrientationRule {
    /// Orient every segment against one line fitted to the whole record
    /// (oriented from the record's first sample toward its last). Robust under
    /// heavy noise, valid while the constellation spans less than a half
    /// circle -- the small-scale bio-motion regime. Falls back to `chained`
    /// when the whole-record fit is degenerate (e.g. a full-circle sweep).
    global_pca,
    /// Orient each segment against the previous confidently-fitted segment.
    /// Handles constellations that wrap the circle; requires the per-segment
    /// arc to stay under ~pi/2 so consecutive directions rotate by less than
    /// a quarter turn. Segments whose scatter anisotropy (s1/s2) falls below
    /// `anisotropy_gate` are oriented but do not advance the reference, so
    /// noise-dominated stretches (motion turning points) cannot derail it.
    chained,
};

struct SegmentationPlan {
    int segment_len_n = 9;           // N, samples per segment
    double velocity_hint_m_s = 0.01; // used by auto-selection
    /// Centered boxcar applied to I and Q after re-referencing and before
    /// fitting/chord computation; 1 = off. The raw channels are oversampled
    /// relative to bio-motion bandwidth, so a short average trades no signal
    /// for a large per-step SNR gain. Applied after the exact first-sample
    /// subtraction, so DC immunity is unaffected.
    int iq_smooth_order = 1;
    OrientationRule orientation = OrientationRule::global_pca;
    /// Minimum singular-value ratio for a segment to update the chained
    /// orientation reference (chained rule only).
    double anisotropy_gate = 10.0;
};

struct SegmentLenRange {
    int n_min = 0;
    int n_max = 0;
    int n_default = 0;
};

/// Admissible segment length N for a target velocity: keeps the per-segment
/// arc between pi/12 and pi of phase, i.e. lambda*fs/(48v) < N < lambda*fs/(4v).
/// n_min is clamped to >= 2; n_default is the rounded geometric mean of the
/// bounds. Throws InvalidInput (naming the minimum workable fs) when the
/// range is empty.
SegmentLenRange select_segment_len(double wavelength_m, double sample_rate_hz,
                                   double velocity_m_s);

/// Normalization radius: a fixed R, or peak scaling of the final waveform.
struct RNorm {
    static RNorm fixed(double r);
    static RNorm peak();

    bool use_peak = false;
    double r = 1.0;
};

struct SegmentFit {
    std::size_t begin = 0;  // inclusive
    std::size_t end = 0;    // exclusive
    bool all_identical = false;  // no direction needed: every step is zero
    LineFit fit;            // valid when !all_identical
};

struct DemodResult {
    MotionTrace motion;               // motion.samples[0] == 0
    std::vector<std::int8_t> sign_bits;  // length size-1, values +1/-1
    std::vector<SegmentFit> segment_fits;  // directions as finally oriented
    SegmentationPlan plan;            // the plan that produced this result
    double r_used = 1.0;
    bool peak_normalized = false;
    double peak_scale = 1.0;          // factor applied when RNorm::peak()
    std::optional<double> wavelength_m;
};

/// Chord-approximation demodulation: fit a line per segment of N samples,
/// orient the lines consistently per plan.orientation, sign each step by its
/// projection on the segment direction, and accumulate signed chord lengths:
///   x[n] = (lambda/4piR) * sum_{k<=n} sign[k]*sqrt(dI^2 + dQ^2)
/// When wavelength_m is absent the lambda/4pi factor is omitted and the output
/// is accumulated phase in radians (divided by R). The record is re-referenced
/// to its first sample up front, so a constant offset on I/Q cancels exactly
/// (bitwise, whenever the subtraction itself is exact).
DemodResult demodulate(const IqSeries& iq, const SegmentationPlan& plan,
                       const RNorm& r_norm,
                       std::optional<double> wavelength_m = std::nullopt);

/// Re-runs sign determination with a different segment length, keeping every
/// other plan setting from `result`; chord magnitudes are unchanged when the
/// smoothing order is unchanged.
DemodResult relabel_signs(const IqSeries& iq, const DemodResult& result,
                          int window);

}  // namespace chordal
