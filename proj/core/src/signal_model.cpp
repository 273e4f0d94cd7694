#include "chordal/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace chordal {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MotionTrace gen_sinusoid(double amplitude_m, double freq_hz, double sample_rate_hz,
                         double duration_s, double phase_rad) {
    if (amplitude_m < 0.0) throw InvalidInput("amplitude must be >= 0");
    if (freq_hz < 0.0) throw InvalidInput("frequency must be >= 0");
    if (duration_s <= 0.0) throw InvalidInput("duration must be > 0");
    if (sample_rate_hz <= 2.0 * freq_hz)
        throw InvalidInput("sample rate must exceed 2x the signal frequency");

    const auto n = static_cast<std::size_t>(std::floor(duration_s * sample_rate_hz));
    if (n == 0) throw InvalidInput("duration too short for one sample");

    MotionTrace out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.samples[k] =
            amplitude_m * std::sin(kTwoPi * freq_hz * static_cast<double>(k) / sample_rate_hz +
                                   phase_rad);
    }
    return out;
}

double gen_pendulum_freq(double h_m) {
    if (h_m <= 0.0) throw InvalidInput("cycloid length must be > 0");
    constexpr double g = 9.8;
    return 1.0 / (kTwoPi * std::sqrt(h_m / g));
}

MotionTrace gen_composite(std::span<const MotionTrace> traces) {
    if (traces.empty()) throw InvalidInput("no traces to compose");
    const auto& first = traces.front();
    validate(first);
    for (const auto& t : traces) {
        if (t.samples.size() != first.samples.size())
            throw InvalidInput("composite traces must share length");
        if (t.sample_rate_hz != first.sample_rate_hz)
            throw InvalidInput("composite traces must share sample rate");
    }
    MotionTrace out;
    out.sample_rate_hz = first.sample_rate_hz;
    out.samples.assign(first.samples.size(), 0.0);
    for (const auto& t : traces)
        for (std::size_t k = 0; k < t.samples.size(); ++k) out.samples[k] += t.samples[k];
    return out;
}

IqSeries synthesize_iq(const MotionTrace& motion, const RadarConfig& cfg,
                       std::uint64_t seed) {
    validate(motion);
    validate(cfg);
    if (!cfg.dc_i.is_constant() && cfg.dc_i.per_sample.size() != motion.samples.size())
        throw InvalidInput("per-sample DC_I length must match the motion");
    if (!cfg.dc_q.is_constant() && cfg.dc_q.per_sample.size() != motion.samples.size())
        throw InvalidInput("per-sample DC_Q length must match the motion");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> phase_noise(0.0, cfg.phase_noise_std_rad);

    IqSeries out;
    out.sample_rate_hz = motion.sample_rate_hz;
    const std::size_t n = motion.samples.size();
    out.i.resize(n);
    out.q.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double phi = cfg.theta0_rad + 2.0 * kTwoPi * motion.samples[k] / cfg.wavelength_m;
        if (cfg.phase_noise_std_rad > 0.0) phi += phase_noise(rng);
        out.i[k] = cfg.amp_i * std::cos(phi) + cfg.dc_i.at(k);
        out.q[k] = cfg.amp_q * std::sin(phi) + cfg.dc_q.at(k);
    }
    return out;
}

IqSeries add_noise(const IqSeries& iq, double snr_db, std::uint64_t seed) {
    validate(iq);
    if (std::isinf(snr_db) && snr_db > 0.0) return iq;

    const std::size_t n = iq.size();
    auto mean_power = [n](const std::vector<double>& v) {
        double p = 0.0;
        for (double s : v) p += s * s;
        return p / static_cast<double>(n);
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);

    IqSeries out = iq;
    for (auto* ch : {&out.i, &out.q}) {
        const double sigma = std::sqrt(mean_power(*ch) * std::pow(10.0, -snr_db / 10.0));
        for (double& s : *ch) s += sigma * unit(rng);
    }
    return out;
}

}  // namespace chordal
