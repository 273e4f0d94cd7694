#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "chordal/csv_io.hpp"
#include "test_helpers.hpp"

using namespace chordal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("chordal_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("IQ CSV round trip is lossless") {
    TempDir tmp;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    IqSeries iq;
    iq.sample_rate_hz = 90.0;
    for (int k = 0; k < 257; ++k) {
        iq.i.push_back(dist(rng));
        iq.q.push_back(dist(rng));
    }
    const auto file = tmp.path / "iq.csv";
    write_iq_csv(iq, file);
    const auto back = read_iq_csv(file);
    CHECK(back.sample_rate_hz == iq.sample_rate_hz);
    CHECK(back.i == iq.i);
    CHECK(back.q == iq.q);
}

TEST_CASE("motion CSV round trip is lossless") {
    TempDir tmp;
    MotionTrace m;
    m.sample_rate_hz = 45.5;
    m.samples = {0.0, 1e-3, -2.5e-4, 0.123456789012345678};
    const auto file = tmp.path / "motion.csv";
    write_motion_csv(m, file);
    const auto back = read_motion_csv(file);
    CHECK(back.sample_rate_hz == m.sample_rate_hz);
    CHECK(back.samples == m.samples);
}

TEST_CASE("minimal valid IQ file") {
    TempDir tmp;
    const auto file = tmp.path / "min.csv";
    std::ofstream(file) << "# fs=90\nI,Q\n1.0,0.0\n0.0,1.0\n";
    const auto iq = read_iq_csv(file);
    CHECK(iq.size() == 2);
    CHECK(iq.sample_rate_hz == 90.0);
    CHECK(iq.i[1] == 0.0);
    CHECK(iq.q[1] == 1.0);
}

TEST_CASE("malformed IQ files are rejected with line numbers") {
    TempDir tmp;
    const auto file = tmp.path / "bad.csv";

    SUBCASE("missing fs header") {
        std::ofstream(file) << "I,Q\n1,2\n";
        CHECK_THROWS_WITH_AS(read_iq_csv(file),
                             doctest::Contains("# fs="), CsvError);
    }
    SUBCASE("non-numeric field names the line") {
        std::ofstream(file) << "# fs=90\nI,Q\n1.0,2.0\nbogus,3.0\n";
        CHECK_THROWS_WITH_AS(read_iq_csv(file), doctest::Contains(":4"), CsvError);
    }
    SUBCASE("missing column on a row") {
        std::ofstream(file) << "# fs=90\nI,Q\n1.0\n";
        CHECK_THROWS_AS(read_iq_csv(file), CsvError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_iq_csv(tmp.path / "nope.csv"), CsvError);
    }
    SUBCASE("too short") {
        std::ofstream(file) << "# fs=90\nI,Q\n1.0,2.0\n";
        CHECK_THROWS_AS(read_iq_csv(file), InvalidInput);
    }
}

TEST_CASE("spectrum CSV carries the bin width") {
    TempDir tmp;
    Spectrum spec;
    spec.resolution_hz = 0.25;
    spec.freqs_hz = {0.0, 0.25, 0.5};
    spec.magnitudes = {0.0, 1.0, 0.5};
    const auto file = tmp.path / "spec.csv";
    write_spectrum_csv(spec, file);
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# df=0.25");
    std::getline(in, line);
    CHECK(line == "f,mag");
}
