// Microbenchmarks for the demodulation pipeline. The headline comparison is
// chord demodulation versus DACM preceded by circle-center estimation, which
// is the deployment-relevant cost of the arc-based baselines.

#include <benchmark/benchmark.h>

#include <numbers>

#include "chordal/analysis.hpp"
#include "chordal/baseline_demod.hpp"
#include "chordal/chord_demod.hpp"
#include "chordal/signal_model.hpp"

using namespace chordal;

namespace {

IqSeries heartbeat(double duration_s, double snr_db) {
    const auto motion = gen_sinusoid(1e-3, 1.3, 90.0, duration_s);
    RadarConfig cfg;
    cfg.theta0_rad = std::numbers::pi / 6.0;
    const auto iq = synthesize_iq(motion, cfg);
    return add_noise(iq, snr_db, 42);
}

void bm_chord(benchmark::State& state) {
    const auto iq = heartbeat(double(state.range(0)), 3.0);
    const SegmentationPlan plan{.segment_len_n = 9, .iq_smooth_order = 5};
    for (auto _ : state) {
        auto res = demodulate(iq, plan, RNorm::peak());
        benchmark::DoNotOptimize(res.motion.samples.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(iq.size()));
}

void bm_dacm_with_center(benchmark::State& state) {
    const auto iq = heartbeat(double(state.range(0)), 3.0);
    for (auto _ : state) {
        const auto est = estimate_center(iq);
        auto motion = dacm_demod(iq, est.center);
        benchmark::DoNotOptimize(motion.samples.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(iq.size()));
}

void bm_arctan_known_center(benchmark::State& state) {
    const auto iq = heartbeat(double(state.range(0)), 3.0);
    for (auto _ : state) {
        auto motion = arctan_demod(iq, Point{0.0, 0.0});
        benchmark::DoNotOptimize(motion.samples.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(iq.size()));
}

void bm_center_estimation(benchmark::State& state) {
    const auto iq = heartbeat(double(state.range(0)), 3.0);
    for (auto _ : state) {
        auto est = estimate_center(iq);
        benchmark::DoNotOptimize(est.center);
    }
}

void bm_spectrum(benchmark::State& state) {
    const auto motion = gen_sinusoid(1e-3, 1.3, 90.0, double(state.range(0)));
    for (auto _ : state) {
        auto spec = spectrum(motion);
        benchmark::DoNotOptimize(spec.magnitudes.data());
    }
}

void bm_moving_average(benchmark::State& state) {
    const auto motion = gen_sinusoid(1e-3, 1.3, 90.0, double(state.range(0)));
    for (auto _ : state) {
        auto out = moving_average(motion, 20);
        benchmark::DoNotOptimize(out.samples.data());
    }
}

}  // namespace

BENCHMARK(bm_chord)->Arg(10)->Arg(60)->Arg(300);
BENCHMARK(bm_dacm_with_center)->Arg(10)->Arg(60)->Arg(300);
BENCHMARK(bm_arctan_known_center)->Arg(10)->Arg(60)->Arg(300);
BENCHMARK(bm_center_estimation)->Arg(10)->Arg(60);
BENCHMARK(bm_spectrum)->Arg(10)->Arg(60);
BENCHMARK(bm_moving_average)->Arg(10)->Arg(300);

BENCHMARK_MAIN();
