#include "chordal/chord_demod.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "chordal/analysis.hpp"

namespace chordal {

RNorm RNorm::fixed(double r) {
    if (r <= 0.0) throw InvalidInput("normalization radius R must be > 0");
    return RNorm{false, r};
}

RNorm RNorm::peak() { return RNorm{true, 1.0}; }

SegmentLenRange select_segment_len(double wavelength_m, double sample_rate_hz,
                                   double velocity_m_s) {
    if (wavelength_m <= 0.0 || sample_rate_hz <= 0.0 || velocity_m_s <= 0.0)
        throw InvalidInput("wavelength, sample rate and velocity must be > 0");

    const double lo = wavelength_m * sample_rate_hz / (48.0 * velocity_m_s);
    const double hi = wavelength_m * sample_rate_hz / (4.0 * velocity_m_s);

    // Strict inequalities: pi/12 < phi < pi.
    int n_min = static_cast<int>(std::floor(lo)) + 1;
    const int n_max = static_cast<int>(std::ceil(hi)) - 1;
    if (n_min < 2) n_min = 2;
    if (n_min > n_max) {
        const double fs_min = 8.0 * velocity_m_s / wavelength_m;
        throw InvalidInput(
            "no admissible segment length: velocity too high for this sampling rate "
            "(need sample_rate_hz > " + std::to_string(fs_min) + " to admit N = 2)");
    }
    SegmentLenRange r;
    r.n_min = n_min;
    r.n_max = n_max;
    r.n_default = static_cast<int>(std::lround(
        std::sqrt(static_cast<double>(n_min) * static_cast<double>(n_max))));
    return r;
}

namespace {

std::vector<SegmentFit> segment_and_fit(const std::vector<double>& i,
                                        const std::vector<double>& q, int seg_len) {
    const std::size_t n = i.size();
    const auto len = static_cast<std::size_t>(seg_len);

    std::vector<std::pair<std::size_t, std::size_t>> bounds;
    for (std::size_t b = 0; b < n; b += len)
        bounds.emplace_back(b, std::min(b + len, n));
    // A short tail (under N/2, or a single sample) merges into the previous
    // segment; otherwise it is fitted on its own.
    if (bounds.size() > 1) {
        const std::size_t tail = bounds.back().second - bounds.back().first;
        if (tail < 2 || 2 * tail < len) {
            bounds[bounds.size() - 2].second = n;
            bounds.pop_back();
        }
    }

    std::vector<SegmentFit> fits;
    fits.reserve(bounds.size());
    for (std::size_t s = 0; s < bounds.size(); ++s) {
        const auto [b, e] = bounds[s];
        SegmentFit sf;
        sf.begin = b;
        sf.end = e;
        bool identical = true;
        for (std::size_t k = b + 1; k < e && identical; ++k)
            identical = (i[k] == i[b]) && (q[k] == q[b]);
        sf.all_identical = identical;
        if (!identical) {
            try {
                sf.fit = pca_fit(std::span(i).subspan(b, e - b),
                                 std::span(q).subspan(b, e - b),
                                 Point{i[b], q[b]}, Point{i[e - 1], q[e - 1]});
            } catch (const DegenerateFit& ex) {
                throw DegenerateFit("segment " + std::to_string(s) + " [" +
                                    std::to_string(b) + "," + std::to_string(e) +
                                    "): " + ex.what());
            }
        }
        fits.push_back(std::move(sf));
    }
    return fits;
}

void flip(DirectedLine& line) {
    line.direction[0] = -line.direction[0];
    line.direction[1] = -line.direction[1];
    line.normal[0] = -line.normal[0];
    line.normal[1] = -line.normal[1];
}

double anisotropy(const FitDiagnostics& diag) {
    const double s2 = diag.singular_values[1];
    if (s2 <= 0.0) return std::numeric_limits<double>::infinity();
    return diag.singular_values[0] / s2;
}

/// Flips segment directions so all segments share one notion of "forward".
/// Each fit arrives oriented by its own first->last chord, which tracks the
/// direction of travel, not the direction of increasing phase; without this
/// pass a motion reversal would keep accumulating with the same sign.
void orient_segments(std::vector<SegmentFit>& fits, const std::vector<double>& i,
                     const std::vector<double>& q, const SegmentationPlan& plan) {
    bool chained = plan.orientation == OrientationRule::chained;
    std::array<double, 2> ref{0.0, 0.0};
    bool have_ref = false;

    if (!chained) {
        try {
            const LineFit whole = pca_fit(i, q, Point{i.front(), q.front()},
                                          Point{i.back(), q.back()});
            ref = whole.line.direction;
            have_ref = true;
        } catch (const DegenerateFit&) {
            chained = true;  // e.g. a full-circle sweep: no global direction
        }
    }

    for (SegmentFit& sf : fits) {
        if (sf.all_identical) continue;
        if (have_ref) {
            const auto& d = sf.fit.line.direction;
            if (d[0] * ref[0] + d[1] * ref[1] < 0.0) flip(sf.fit.line);
        }
        if (chained && (!have_ref || anisotropy(sf.fit.diag) >= plan.anisotropy_gate)) {
            ref = sf.fit.line.direction;
            have_ref = true;
        }
    }
}

}  // namespace

DemodResult demodulate(const IqSeries& iq, const SegmentationPlan& plan,
                       const RNorm& r_norm, std::optional<double> wavelength_m) {
    validate(iq);
    if (plan.segment_len_n < 2) throw InvalidInput("segment length N must be >= 2");
    if (iq.size() < static_cast<std::size_t>(plan.segment_len_n))
        throw InvalidInput("record shorter than one segment");
    if (!r_norm.use_peak && r_norm.r <= 0.0) throw InvalidInput("R must be > 0");
    if (wavelength_m && *wavelength_m <= 0.0) throw InvalidInput("wavelength must be > 0");
    if (plan.iq_smooth_order < 1) throw InvalidInput("iq_smooth_order must be >= 1");
    if (static_cast<std::size_t>(plan.iq_smooth_order) > iq.size())
        throw InvalidInput("iq_smooth_order exceeds the record length");

    const std::size_t n = iq.size();

    // Re-reference to the first sample. Differences and fitted directions are
    // translation invariant, and a constant (DC_I, DC_Q) added to the record
    // cancels here before any other arithmetic sees it.
    std::vector<double> ri(n), rq(n);
    for (std::size_t k = 0; k < n; ++k) {
        ri[k] = iq.i[k] - iq.i[0];
        rq[k] = iq.q[k] - iq.q[0];
    }

    if (plan.iq_smooth_order > 1) {
        MotionTrace tmp;
        tmp.sample_rate_hz = iq.sample_rate_hz;
        tmp.samples = std::move(ri);
        ri = moving_average(tmp, plan.iq_smooth_order).samples;
        tmp.samples = std::move(rq);
        rq = moving_average(tmp, plan.iq_smooth_order).samples;
    }

    DemodResult res;
    res.plan = plan;
    res.segment_fits = segment_and_fit(ri, rq, plan.segment_len_n);
    orient_segments(res.segment_fits, ri, rq, plan);
    res.r_used = r_norm.use_peak ? 1.0 : r_norm.r;
    res.peak_normalized = r_norm.use_peak;
    res.wavelength_m = wavelength_m;

    const double lambda_scale =
        wavelength_m ? (*wavelength_m / (4.0 * std::numbers::pi)) : 1.0;

    res.sign_bits.resize(n - 1);
    res.motion.sample_rate_hz = iq.sample_rate_hz;
    res.motion.samples.resize(n);
    res.motion.samples[0] = 0.0;

    std::size_t seg = 0;
    std::int8_t prev_sign = 1;
    for (std::size_t k = 1; k < n; ++k) {
        // A pair straddling two segments uses the later segment's direction.
        while (seg + 1 < res.segment_fits.size() && k >= res.segment_fits[seg].end) ++seg;
        const SegmentFit& sf = res.segment_fits[seg];

        const double di = ri[k] - ri[k - 1];
        const double dq = rq[k] - rq[k - 1];

        std::int8_t sign = prev_sign;
        if (!sf.all_identical) {
            const double dot =
                di * sf.fit.line.direction[0] + dq * sf.fit.line.direction[1];
            if (dot > 0.0)
                sign = 1;
            else if (dot < 0.0)
                sign = -1;
        }
        res.sign_bits[k - 1] = sign;
        prev_sign = sign;

        const double chord = std::sqrt(di * di + dq * dq) / res.r_used;
        res.motion.samples[k] =
            res.motion.samples[k - 1] + static_cast<double>(sign) * chord * lambda_scale;
    }

    if (r_norm.use_peak) {
        double peak = 0.0;
        for (double s : res.motion.samples) peak = std::max(peak, std::abs(s));
        if (peak > 0.0) {
            res.peak_scale = 1.0 / peak;
            for (double& s : res.motion.samples) s *= res.peak_scale;
        }
    }
    return res;
}

DemodResult relabel_signs(const IqSeries& iq, const DemodResult& result,
                          int window) {
    if (window < 2) throw InvalidInput("window must be >= 2");
    SegmentationPlan plan = result.plan;
    plan.segment_len_n = window;
    const RNorm r = result.peak_normalized ? RNorm::peak() : RNorm::fixed(result.r_used);
    return demodulate(iq, plan, r, result.wavelength_m);
}

}  // namespace chordal
