#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chordal/baseline_demod.hpp"
#include "test_helpers.hpp"

using namespace chordal;
namespace th = chordal::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("arctan_demod recovers phases about the true center") {
    IqSeries iq;
    iq.sample_rate_hz = 90.0;
    for (double phi : {0.0, kPi / 4.0, kPi / 2.0}) {
        iq.i.push_back(std::cos(phi));
        iq.q.push_back(std::sin(phi));
    }
    const auto m = arctan_demod(iq, {0, 0});
    CHECK(m.samples[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.samples[1] == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(m.samples[2] == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    // A grossly wrong center ruins the phases (the DC sensitivity of Eq-style
    // arctangent demodulation).
    const auto bad = arctan_demod(iq, {10, 0});
    CHECK(std::abs(bad.samples[2] - kPi / 2.0) > 1.0);
}

TEST_CASE("arctan_demod unwraps across the +pi branch cut") {
    const auto iq = th::make_arc({0, 0}, 1.0, kPi - 0.5, kPi + 0.5, 100);
    const auto m = arctan_demod(iq, {0, 0});
    for (std::size_t k = 1; k < m.samples.size(); ++k)
        CHECK(std::abs(m.samples[k] - m.samples[k - 1]) < 0.1);  // no 2pi jumps
    CHECK(m.samples.back() - m.samples.front() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("arctan_demod is the exact oracle on noiseless data") {
    const auto motion = gen_sinusoid(1e-3, 1.3, 90.0, 5.0);
    RadarConfig cfg;
    cfg.theta0_rad = 0.25;
    const auto iq = synthesize_iq(motion, cfg);
    const auto m = arctan_demod(iq, {0, 0}, cfg.wavelength_m);
    for (std::size_t k = 0; k < motion.samples.size(); ++k) {
        const double rec = m.samples[k] - m.samples[0];
        const double truth = motion.samples[k] - motion.samples[0];
        CHECK(std::abs(rec - truth) < 1e-9);
    }
}

TEST_CASE("demod errors name the offending sample") {
    IqSeries iq;
    iq.sample_rate_hz = 90.0;
    iq.i = {1.0, 0.5, 1.0};
    iq.q = {0.0, 0.5, 0.0};
    CHECK_THROWS_WITH_AS(arctan_demod(iq, {0.5, 0.5}), doctest::Contains("1"), InvalidInput);
    CHECK_THROWS_AS(dacm_demod(iq, {0.5, 0.5}), InvalidInput);
}

TEST_CASE("dacm_demod agrees with arctangent to third order per step") {
    const auto iq = th::make_arc({0.3, -0.2}, 1.0, 0.1, 1.3, 200);
    const auto dacm = dacm_demod(iq, {0.3, -0.2});
    const auto arct = arctan_demod(iq, {0.3, -0.2});
    const double step = 1.2 / 199.0;
    const double per_step_bound = step * step * step;  // O(dphi^3)
    for (std::size_t k = 1; k < iq.size(); ++k) {
        const double a = dacm.samples[k] - dacm.samples[0];
        const double b = arct.samples[k] - arct.samples[0];
        CHECK(std::abs(a - b) <= double(k) * per_step_bound);
    }
}

TEST_CASE("dacm_demod of a stationary target is flat") {
    IqSeries iq;
    iq.sample_rate_hz = 90.0;
    iq.i.assign(50, 0.8);
    iq.q.assign(50, 0.6);
    const auto m = dacm_demod(iq, {0, 0});
    for (double s : m.samples) CHECK(s == 0.0);
}

TEST_CASE("estimate_center on exact circle data") {
    SUBCASE("full circle") {
        const auto iq = th::make_arc({3, -2}, 1.5, 0.0, 2.0 * kPi * 19.0 / 20.0, 20);
        const auto est = estimate_center(iq);
        CHECK(std::abs(est.center.x - 3.0) < 1e-6);
        CHECK(std::abs(est.center.y + 2.0) < 1e-6);
        CHECK(std::abs(est.radius - 1.5) < 1e-6);
    }
    SUBCASE("semicircle suffices") {
        const auto iq = th::make_arc({3, -2}, 1.5, 0.3, 0.3 + kPi, 40);
        const auto est = estimate_center(iq);
        CHECK(std::abs(est.center.x - 3.0) < 1e-6);
        CHECK(std::abs(est.center.y + 2.0) < 1e-6);
    }
}

TEST_CASE("estimate_center rejects collinear points") {
    IqSeries iq;
    iq.sample_rate_hz = 90.0;
    for (int k = 0; k < 10; ++k) {
        iq.i.push_back(double(k));
        iq.q.push_back(2.0 * double(k) + 1.0);
    }
    CHECK_THROWS_AS(estimate_center(iq), DegenerateFit);
}

TEST_CASE("estimate_center refinement never increases the loss") {
    const auto iq = add_noise(th::make_arc({1, 1}, 1.0, 0.0, 2.0, 300), 10.0, 4);
    const auto initial = estimate_center(iq, std::nullopt, 0);
    const auto refined = estimate_center(iq, initial.center, 500);
    CHECK(refined.final_loss <= initial.final_loss);
}

TEST_CASE("estimate_center translation equivariance") {
    const auto iq = add_noise(th::make_arc({0, 0}, 1.0, 0.0, 2.5, 200), 15.0, 9);
    const auto base = estimate_center(iq);
    IqSeries shifted = iq;
    for (double& v : shifted.i) v += 4.25;
    for (double& v : shifted.q) v -= 1.5;
    const auto moved = estimate_center(shifted);
    CHECK(std::abs(moved.center.x - (base.center.x + 4.25)) < 1e-9);
    CHECK(std::abs(moved.center.y - (base.center.y - 1.5)) < 1e-9);
    CHECK(std::abs(moved.radius - base.radius) < 1e-9);
}

TEST_CASE("estimate_center at 3 dB lands far from the true center") {
    // The Fig. 4 situation: the optimizer cannot find (0,0) inside the cloud.
    int far = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto iq = th::heartbeat_record(kPi / 3.0, seed);
        const auto est = estimate_center(iq);
        if (std::hypot(est.center.x, est.center.y) > 0.3) ++far;
    }
    CHECK(far >= 8);
}
