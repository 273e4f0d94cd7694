#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chordal {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Sampled displacement waveform. Units are meters for ground truth,
/// radians or dimensionless for demodulated output (see the producer).
struct MotionTrace {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
};

/// Paired in-phase / quadrature sample sequences.
struct IqSeries {
    std::vector<double> i;
    std::vector<double> q;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return i.size(); }
};

/// DC offset track: a constant by default, or a per-sample sequence to
/// simulate a moving circle center.
struct DcTrack {
    double constant = 0.0;
    std::vector<double> per_sample;  // empty = use constant

    DcTrack() = default;
    DcTrack(double c) : constant(c) {}

    bool is_constant() const { return per_sample.empty(); }
    double at(std::size_t n) const {
        return per_sample.empty() ? constant : per_sample[n];
    }
};

/// Parameters of the quadrature receiver model.
struct RadarConfig {
    double wavelength_m = 12.5e-3;
    double amp_i = 1.0;
    double amp_q = 1.0;
    DcTrack dc_i;
    DcTrack dc_q;
    double theta0_rad = 0.0;
    double phase_noise_std_rad = 0.0;
    double sample_rate_hz = 90.0;
};

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void validate(const RadarConfig& cfg) {
    if (cfg.wavelength_m <= 0.0) throw InvalidInput("wavelength_m must be > 0");
    if (cfg.sample_rate_hz <= 0.0) throw InvalidInput("sample_rate_hz must be > 0");
    if (cfg.amp_i <= 0.0 || cfg.amp_q <= 0.0) throw InvalidInput("amplitudes must be > 0");
    if (cfg.phase_noise_std_rad < 0.0) throw InvalidInput("phase_noise_std_rad must be >= 0");
}

inline void validate(const IqSeries& iq) {
    if (iq.i.size() != iq.q.size()) throw InvalidInput("I/Q length mismatch");
    if (iq.i.size() < 2) throw InvalidInput("IqSeries needs at least 2 samples");
    if (iq.sample_rate_hz <= 0.0) throw InvalidInput("sample_rate_hz must be > 0");
}

inline void validate(const MotionTrace& m) {
    if (m.samples.empty()) throw InvalidInput("MotionTrace is empty");
    if (m.sample_rate_hz <= 0.0) throw InvalidInput("sample_rate_hz must be > 0");
}

}  // namespace chordal
