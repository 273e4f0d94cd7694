#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chordal/analysis.hpp"
#include "chordal/signal_model.hpp"
#include "test_helpers.hpp"

using namespace chordal;

namespace {
constexpr double kPi = std::numbers::pi;

// Magnitude response of an M-tap boxcar average at frequency f.
double boxcar_gain(int m, double f_hz, double fs_hz) {
    const double w = kPi * f_hz / fs_hz;
    if (w == 0.0) return 1.0;
    return std::abs(std::sin(double(m) * w) / (double(m) * std::sin(w)));
}
}  // namespace

TEST_CASE("moving_average identity and constants") {
    const auto x = gen_sinusoid(1.0, 1.3, 90.0, 2.0);
    const auto same = moving_average(x, 1);
    CHECK(same.samples == x.samples);

    MotionTrace c;
    c.sample_rate_hz = 90.0;
    c.samples.assign(100, 3.25);
    for (int order : {2, 7, 20}) {
        const auto out = moving_average(c, order);
        for (double s : out.samples) CHECK(s == doctest::Approx(3.25).epsilon(1e-15));
    }

    CHECK_THROWS_AS(moving_average(x, 0), InvalidInput);
    CHECK_THROWS_AS(moving_average(c, 101), InvalidInput);
}

TEST_CASE("order-20 average at 90 Hz nulls 4.5 Hz and passes 1.3 Hz") {
    // 20 taps at 90 Hz span exactly one period of 4.5 Hz.
    const auto tone = gen_sinusoid(1.0, 4.5, 90.0, 4.0);
    const auto out = moving_average(tone, 20);
    for (std::size_t k = 10; k + 10 < out.samples.size(); ++k)
        CHECK(std::abs(out.samples[k]) < 1e-10);

    const auto heart = gen_sinusoid(1.0, 1.3, 90.0, 10.0);
    const auto smooth = moving_average(heart, 20);
    double in_rms = 0.0, out_rms = 0.0;
    for (std::size_t k = 10; k + 10 < smooth.samples.size(); ++k) {
        in_rms += heart.samples[k] * heart.samples[k];
        out_rms += smooth.samples[k] * smooth.samples[k];
    }
    const double gain = std::sqrt(out_rms / in_rms);
    CHECK(gain == doctest::Approx(boxcar_gain(20, 1.3, 90.0)).epsilon(5e-3));
    CHECK(gain > std::sqrt(0.5));  // above -3 dB
}

TEST_CASE("moving_average preserves the sum for interior-supported input") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int order = 11;
    MotionTrace x;
    x.sample_rate_hz = 90.0;
    x.samples.assign(200, 0.0);
    for (std::size_t k = 20; k < 180; ++k) x.samples[k] = dist(rng);
    const auto out = moving_average(x, order);
    double sum_in = 0.0, sum_out = 0.0;
    for (double s : x.samples) sum_in += s;
    for (double s : out.samples) sum_out += s;
    CHECK(sum_out == doctest::Approx(sum_in).epsilon(1e-12));
}

TEST_CASE("spectrum finds tones") {
    const auto tone = gen_sinusoid(1.0, 1.3, 90.0, 10.0);
    const auto spec = spectrum(tone);
    CHECK(spec.freqs_hz.front() == 0.0);
    CHECK(std::abs(peak_frequency(spec, 0.5, 3.0) - 1.3) <= spec.resolution_hz);

    const auto two = gen_composite(std::array{gen_sinusoid(1.0, 0.25, 90.0, 40.0),
                                              gen_sinusoid(0.5, 1.2, 90.0, 40.0)});
    const auto spec2 = spectrum(two);
    CHECK(std::abs(peak_frequency(spec2, 0.1, 0.7) - 0.25) <= spec2.resolution_hz);
    CHECK(std::abs(peak_frequency(spec2, 0.9, 1.5) - 1.2) <= spec2.resolution_hz);
}

TEST_CASE("spectrum of a constant is all zero") {
    MotionTrace c;
    c.sample_rate_hz = 90.0;
    c.samples.assign(64, 5.0);
    const auto spec = spectrum(c, WindowKind::none);
    for (double m : spec.magnitudes) CHECK(std::abs(m) < 1e-10);
}

TEST_CASE("Parseval identity without window") {
    const auto x = gen_sinusoid(0.7, 1.1, 90.0, 3.0);
    const auto spec = spectrum(x, WindowKind::none, 2048);
    const std::size_t nfft = 2 * (spec.freqs_hz.size() - 1);

    double mean = 0.0;
    for (double s : x.samples) mean += s;
    mean /= double(x.samples.size());
    double time_energy = 0.0;
    for (double s : x.samples) time_energy += (s - mean) * (s - mean);

    double freq_energy = spec.magnitudes.front() * spec.magnitudes.front() +
                         spec.magnitudes.back() * spec.magnitudes.back();
    for (std::size_t k = 1; k + 1 < spec.magnitudes.size(); ++k)
        freq_energy += 2.0 * spec.magnitudes[k] * spec.magnitudes[k];

    CHECK(freq_energy / double(nfft) == doctest::Approx(time_energy).epsilon(1e-9));
}

TEST_CASE("chord_error closed forms and limits") {
    CHECK(std::abs(chord_error(kPi) - (1.0 - 2.0 / kPi)) < 1e-12);
    CHECK(chord_error(0.0) == 0.0);
    CHECK(chord_error(0.1) == doctest::Approx(0.1 * 0.1 / 24.0).epsilon(5e-4));
    CHECK(chord_error(0.1) == doctest::Approx(4.166e-4).epsilon(1e-3));
    // Series branch agrees with the direct formula around the switch point.
    CHECK(chord_error(9.9e-7) == doctest::Approx(chord_error(1.01e-6)).epsilon(0.05));
    CHECK_THROWS_AS(chord_error(-0.1), InvalidInput);
    CHECK_THROWS_AS(chord_error(3.2), InvalidInput);
}

TEST_CASE("chord_error is monotone and quadratic at small angles") {
    double prev = 0.0;
    for (double x = 0.01; x <= kPi; x += 0.01) {
        const double e = chord_error(x);
        CHECK(e > prev);
        prev = e;
    }
    for (double x : {1e-3, 1e-2, 1e-1}) {
        const double quad = x * x / 24.0;
        CHECK(std::abs(chord_error(x) - quad) < x * x * x * x / 1000.0);
    }
}

TEST_CASE("error_vs_rate reproduces the model figures") {
    const std::array rates = {70.0};
    const auto pts = error_vs_rate(10e-3, 12.5e-3, rates);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].relative_error == doctest::Approx(8.6e-4).epsilon(0.01));
    CHECK(pts[0].relative_error <= 1e-3);

    const auto slow = error_vs_rate(1e-3, 12.5e-3, rates);
    CHECK(slow[0].relative_error == doctest::Approx(2.1e-6).epsilon(0.05));

    // Doubling fs quarters the error in the small-angle regime.
    const std::array pair = {70.0, 140.0};
    const auto sweep = error_vs_rate(1e-3, 12.5e-3, pair);
    CHECK(sweep[0].relative_error / sweep[1].relative_error ==
          doctest::Approx(4.0).epsilon(1e-3));

    CHECK_THROWS_AS(error_vs_rate(1.0, 12.5e-3, rates), InvalidInput);  // u >= pi
}

TEST_CASE("rms_error") {
    const auto a = gen_sinusoid(1.0, 1.3, 90.0, 2.0);
    CHECK(rms_error(a, a, Align::none) == 0.0);

    MotionTrace b = a;
    for (double& s : b.samples) s *= 2.0;
    CHECK(rms_error(a, b, Align::scale) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rms_error(a, b, Align::none) > 0.0);

    MotionTrace noisy;
    noisy.sample_rate_hz = 90.0;
    std::mt19937_64 rng(6);
    std::normal_distribution<double> unit(0.0, 1.0);
    MotionTrace base;
    base.sample_rate_hz = 90.0;
    for (int k = 0; k < 10000; ++k) {
        const double s = std::sin(0.01 * k);
        base.samples.push_back(s);
        noisy.samples.push_back(s + unit(rng));
    }
    CHECK(rms_error(base, noisy, Align::none) == doctest::Approx(1.0).epsilon(0.1));

    MotionTrace shorter = a;
    shorter.samples.pop_back();
    CHECK_THROWS_AS(rms_error(a, shorter, Align::none), InvalidInput);
}

TEST_CASE("peak_frequency interpolation") {
    // Tone exactly on a bin center with no zero padding: neighbors are exact
    // zeros, so the parabolic refinement leaves the bin frequency untouched.
    MotionTrace tone;
    tone.sample_rate_hz = 64.0;
    for (int k = 0; k < 512; ++k)
        tone.samples.push_back(std::sin(2.0 * kPi * 4.0 * k / 64.0));
    const auto on_bin = spectrum(tone, WindowKind::none, 512);
    CHECK(peak_frequency(on_bin, 2.0, 6.0) == doctest::Approx(4.0).epsilon(1e-6));

    // Off-bin tone recovered within 0.2 bins.
    MotionTrace off;
    off.sample_rate_hz = 64.0;
    const double f0 = 4.0 + 0.4 * 0.0625;
    for (int k = 0; k < 512; ++k)
        off.samples.push_back(std::sin(2.0 * kPi * f0 * k / 64.0));
    const auto spec = spectrum(off, WindowKind::hann, 1024);
    CHECK(std::abs(peak_frequency(spec, 2.0, 6.0) - f0) < 0.2 * spec.resolution_hz);

    CHECK_THROWS_AS(peak_frequency(spec, 100.0, 200.0), InvalidInput);
    CHECK_THROWS_AS(peak_frequency(spec, 6.0, 2.0), InvalidInput);
}
