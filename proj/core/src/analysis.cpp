#include "chordal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace chordal {

namespace {

constexpr double kPi = std::numbers::pi;

// Iterative radix-2 in-place FFT.
void fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

MotionTrace moving_average(const MotionTrace& trace, int order) {
    validate(trace);
    if (order < 1) throw InvalidInput("filter order must be >= 1");
    const std::size_t n = trace.samples.size();
    if (static_cast<std::size_t>(order) > n)
        throw InvalidInput("filter order exceeds record length");

    const std::ptrdiff_t r_lo = (order - 1) / 2;
    const std::ptrdiff_t r_hi = order / 2;

    MotionTrace out;
    out.sample_rate_hz = trace.sample_rate_hz;
    out.samples.resize(n);
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, k - r_lo);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, k + r_hi);
        double acc = 0.0;
        for (std::ptrdiff_t m = lo; m <= hi; ++m) acc += trace.samples[m];
        out.samples[k] = acc / static_cast<double>(hi - lo + 1);
    }
    return out;
}

Spectrum spectrum(const MotionTrace& trace, WindowKind window, std::size_t zero_pad_to) {
    validate(trace);
    const std::size_t n = trace.samples.size();
    if (n < 2) throw InvalidInput("spectrum needs >= 2 samples");

    if (zero_pad_to == 0) zero_pad_to = 4 * n;
    const std::size_t nfft = next_pow2(std::max(zero_pad_to, n));

    double mean = 0.0;
    for (double s : trace.samples) mean += s;
    mean /= static_cast<double>(n);

    std::vector<std::complex<double>> buf(nfft, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double w = 1.0;
        if (window == WindowKind::hann)
            w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) /
                                     static_cast<double>(n - 1));
        buf[k] = (trace.samples[k] - mean) * w;
    }
    fft(buf);

    Spectrum spec;
    spec.resolution_hz = trace.sample_rate_hz / static_cast<double>(nfft);
    const std::size_t half = nfft / 2 + 1;
    spec.freqs_hz.resize(half);
    spec.magnitudes.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        spec.freqs_hz[k] = static_cast<double>(k) * spec.resolution_hz;
        spec.magnitudes[k] = std::abs(buf[k]);
    }
    return spec;
}

double chord_error(double delta_phi_rad) {
    if (delta_phi_rad < 0.0 || delta_phi_rad > kPi)
        throw InvalidInput("delta phi must lie in [0, pi]");
    if (delta_phi_rad < 1e-6) {
        const double x2 = delta_phi_rad * delta_phi_rad;
        return x2 / 24.0 - x2 * x2 / 1920.0;
    }
    return 1.0 - 2.0 * std::sin(delta_phi_rad / 2.0) / delta_phi_rad;
}

std::vector<ErrorModelPoint> error_vs_rate(double velocity_m_s, double wavelength_m,
                                           std::span<const double> sample_rates_hz) {
    if (velocity_m_s < 0.0 || wavelength_m <= 0.0)
        throw InvalidInput("velocity must be >= 0 and wavelength > 0");
    // v = 0 is the vanishing-motion limit; the error is exactly 0 there.
    std::vector<ErrorModelPoint> out;
    out.reserve(sample_rates_hz.size());
    for (double fs : sample_rates_hz) {
        if (fs <= 0.0) throw InvalidInput("sample rates must be > 0");
        const double u = 2.0 * kPi * velocity_m_s / (wavelength_m * fs);
        if (u >= kPi)
            throw InvalidInput("2*pi*v/(lambda*fs) must stay below pi");
        ErrorModelPoint p;
        p.velocity_m_s = velocity_m_s;
        p.sample_rate_hz = fs;
        p.wavelength_m = wavelength_m;
        if (u < 1e-6) {
            p.relative_error = u * u / 6.0 - u * u * u * u / 120.0;
        } else {
            p.relative_error = 1.0 - std::sin(u) / u;
        }
        out.push_back(p);
    }
    return out;
}

double rms_error(const MotionTrace& a, const MotionTrace& b, Align align) {
    validate(a);
    validate(b);
    if (a.samples.size() != b.samples.size())
        throw InvalidInput("traces must have equal length");
    const std::size_t n = a.samples.size();

    double scale = 1.0;
    if (align == Align::scale) {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            num += a.samples[k] * b.samples[k];
            den += b.samples[k] * b.samples[k];
        }
        scale = den > 0.0 ? num / den : 1.0;
    }

    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = a.samples[k] - scale * b.samples[k];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

double peak_frequency(const Spectrum& spec, double band_lo_hz, double band_hi_hz) {
    if (spec.freqs_hz.empty()) throw InvalidInput("empty spectrum");
    if (band_lo_hz > band_hi_hz) throw InvalidInput("empty band");
    if (band_hi_hz < spec.freqs_hz.front() || band_lo_hz > spec.freqs_hz.back())
        throw InvalidInput("band outside the spectrum range");

    std::size_t best = spec.freqs_hz.size();
    double best_mag = -1.0;
    for (std::size_t k = 0; k < spec.freqs_hz.size(); ++k) {
        if (spec.freqs_hz[k] < band_lo_hz || spec.freqs_hz[k] > band_hi_hz) continue;
        if (spec.magnitudes[k] > best_mag) {
            best_mag = spec.magnitudes[k];
            best = k;
        }
    }
    if (best == spec.freqs_hz.size()) throw InvalidInput("no bins inside the band");

    double refined = spec.freqs_hz[best];
    if (best > 0 && best + 1 < spec.magnitudes.size()) {
        const double ym = spec.magnitudes[best - 1];
        const double y0 = spec.magnitudes[best];
        const double yp = spec.magnitudes[best + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom < 0.0) {
            const double delta = 0.5 * (ym - yp) / denom;
            if (std::abs(delta) <= 0.5) refined += delta * spec.resolution_hz;
        }
    }
    return refined;
}

}  // namespace chordal
