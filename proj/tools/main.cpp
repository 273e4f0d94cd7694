// Command-line front end for the chord-approximation Doppler demodulator:
// synthetic quadrature signal generation, demodulation (chord / DACM /
// arctangent), spectral analysis, method comparison and the chord error model.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chordal/analysis.hpp"
#include "chordal/baseline_demod.hpp"
#include "chordal/chord_demod.hpp"
#include "chordal/csv_io.hpp"
#include "chordal/signal_model.hpp"

using json = nlohmann::ordered_json;
using namespace chordal;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kPi = std::numbers::pi;

// ---- SI-suffixed quantities ------------------------------------------------
// Numeric flags accept plain numbers in base units (m, s, Hz, m/s) or a
// suffixed form like "12.5mm", "20ms", "1.5khz", "5mm/s".

double parse_suffixed(const std::string& text,
                      const std::vector<std::pair<std::string, double>>& units,
                      const char* what) {
    std::string s = text;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    double factor = 1.0;
    for (const auto& [suffix, f] : units) {
        if (s.size() > suffix.size() &&
            s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
            s.resize(s.size() - suffix.size());
            factor = f;
            break;
        }
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v * factor;
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + ": cannot parse '" + text + "'");
    }
}

// Longer suffixes first so "mm" wins over "m".
double parse_length(const std::string& s) {
    return parse_suffixed(s, {{"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}},
                          "length");
}
double parse_time(const std::string& s) {
    return parse_suffixed(s, {{"ms", 1e-3}, {"s", 1.0}}, "time");
}
double parse_freq(const std::string& s) {
    return parse_suffixed(s, {{"khz", 1e3}, {"hz", 1.0}}, "frequency");
}
double parse_speed(const std::string& s) {
    return parse_suffixed(s, {{"um/s", 1e-6}, {"mm/s", 1e-3}, {"cm/s", 1e-2}, {"m/s", 1.0}},
                          "speed");
}

// ---- run manifest ----------------------------------------------------------

struct Manifest {
    json doc;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Manifest(const std::string& command) {
        doc["command"] = command;
        doc["version"] = kVersion;
        doc["params"] = json::object();
        doc["inputs"] = json::array();
        doc["outputs"] = json::array();
        doc["timings_ms"] = json::object();
    }

    void stage_done(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        doc["timings_ms"][name] =
            std::chrono::duration<double, std::milli>(now - t0).count();
        t0 = now;
    }

    void write(const fs::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw CsvError("cannot open manifest '" + path.string() + "'");
        out << doc.dump(2) << '\n';
    }
};

fs::path manifest_path(const std::string& explicit_path, const std::string& out_path) {
    if (!explicit_path.empty()) return explicit_path;
    return out_path + ".manifest.json";
}

// ---- demod pipeline shared by `demod` and `compare` ------------------------

struct DemodSettings {
    std::string method = "chord";
    int segment_n = 0;                 // 0 = derive from velocity hint
    double velocity_hint_m_s = 10e-3;  // conservative biomotion default
    std::string center = "auto";
    double r = 1.0;
    bool peak_norm = false;
    std::optional<double> wavelength_m;
    int filter_order = 20;
    int iq_smooth = 1;
    std::string orient = "global";
    double gate = 10.0;
};

OrientationRule parse_orient(const std::string& s) {
    if (s == "global") return OrientationRule::global_pca;
    if (s == "chain") return OrientationRule::chained;
    throw CLI::ValidationError("--orient expects 'global' or 'chain'");
}

Point resolve_center(const IqSeries& iq, const std::string& spec) {
    if (spec == "auto") {
        const auto est = estimate_center(iq);
        return est.center;
    }
    const auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--center expects 'auto' or '<a>,<b>'");
    return Point{std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
}

MotionTrace run_demod(const IqSeries& iq, const DemodSettings& s) {
    if (s.method == "chord") {
        int n = s.segment_n;
        if (n == 0) {
            const double lambda = s.wavelength_m.value_or(12.5e-3);
            n = select_segment_len(lambda, iq.sample_rate_hz, s.velocity_hint_m_s).n_default;
        }
        const RNorm r = s.peak_norm ? RNorm::peak() : RNorm::fixed(s.r);
        const SegmentationPlan plan{.segment_len_n = n,
                                    .velocity_hint_m_s = s.velocity_hint_m_s,
                                    .iq_smooth_order = s.iq_smooth,
                                    .orientation = parse_orient(s.orient),
                                    .anisotropy_gate = s.gate};
        return demodulate(iq, plan, r, s.wavelength_m).motion;
    }
    const Point center = resolve_center(iq, s.center);
    if (s.method == "dacm") return dacm_demod(iq, center, s.wavelength_m);
    if (s.method == "arctan") return arctan_demod(iq, center, s.wavelength_m);
    throw CLI::ValidationError("unknown method '" + s.method + "'");
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---- subcommands -----------------------------------------------------------

int cmd_simulate(const std::string& preset, std::string amplitude, std::string freq,
                 std::string fs_s, std::string duration, double theta0_deg,
                 std::string wavelength, double amp_i, double amp_q, double dc_i,
                 double dc_q, double phase_noise_std, double snr_db, std::string h,
                 std::uint64_t seed, const std::string& out,
                 const std::string& manifest_file) {
    Manifest man("simulate");

    double amp = 1e-3, f = 1.3, fs = 90.0, dur = 10.0;
    bool composite = false;
    if (preset == "heartbeat-sim") {
        // defaults above
    } else if (preset == "pendulum") {
        amp = 1e-4;
        f = gen_pendulum_freq(h.empty() ? 0.14 : parse_length(h));
    } else if (preset == "actuator") {
        amp = 2e-4;
        f = 0.8;
        dur = 20.0;
    } else if (preset == "composite") {
        composite = true;
        dur = 30.0;
    } else if (preset != "custom") {
        throw CLI::ValidationError("unknown preset '" + preset + "'");
    }
    if (!amplitude.empty()) amp = parse_length(amplitude);
    if (!freq.empty()) f = parse_freq(freq);
    if (!fs_s.empty()) fs = parse_freq(fs_s);
    if (!duration.empty()) dur = parse_time(duration);

    MotionTrace motion;
    if (composite) {
        const auto resp = gen_sinusoid(5e-3, 0.25, fs, dur);
        const auto heart = gen_sinusoid(1e-4, 1.2, fs, dur);
        motion = gen_composite(std::array{resp, heart});
    } else {
        motion = gen_sinusoid(amp, f, fs, dur);
    }

    RadarConfig cfg;
    cfg.wavelength_m = wavelength.empty() ? 12.5e-3 : parse_length(wavelength);
    cfg.amp_i = amp_i;
    cfg.amp_q = amp_q;
    cfg.theta0_rad = theta0_deg * kPi / 180.0;
    cfg.phase_noise_std_rad = phase_noise_std;
    cfg.sample_rate_hz = fs;

    // Noise is added before the DC offsets so the SNR measures the quadrature
    // signal alone, not the receiver bias.
    IqSeries iq = synthesize_iq(motion, cfg, seed);
    man.stage_done("synthesize");
    if (std::isfinite(snr_db)) iq = add_noise(iq, snr_db, seed);
    man.stage_done("noise");
    for (double& v : iq.i) v += dc_i;
    for (double& v : iq.q) v += dc_q;

    write_iq_csv(iq, out);
    man.stage_done("write");

    man.doc["params"] = {{"preset", preset},
                         {"amplitude_m", amp},
                         {"freq_hz", f},
                         {"sample_rate_hz", fs},
                         {"duration_s", dur},
                         {"theta0_deg", theta0_deg},
                         {"wavelength_m", cfg.wavelength_m},
                         {"amp_i", amp_i},
                         {"amp_q", amp_q},
                         {"dc_i", dc_i},
                         {"dc_q", dc_q},
                         {"phase_noise_std_rad", phase_noise_std},
                         {"snr_db", std::isfinite(snr_db) ? json(snr_db) : json(nullptr)},
                         {"composite", composite}};
    man.doc["seed"] = seed;
    man.doc["outputs"].push_back(out);
    man.write(manifest_path(manifest_file, out));

    std::cout << "wrote " << iq.size() << " IQ samples to " << out << '\n';
    return 0;
}

int cmd_demod(const std::string& in, const DemodSettings& s, const std::string& out,
              const std::string& spectrum_out, const std::string& manifest_file) {
    Manifest man("demod");
    const IqSeries iq = read_iq_csv(in);
    man.stage_done("read");

    MotionTrace motion = run_demod(iq, s);
    man.stage_done("demodulate");

    if (s.filter_order > 1) motion = moving_average(motion, s.filter_order);
    man.stage_done("filter");

    write_motion_csv(motion, out);
    man.doc["outputs"].push_back(out);
    if (!spectrum_out.empty()) {
        write_spectrum_csv(spectrum(motion), spectrum_out);
        man.doc["outputs"].push_back(spectrum_out);
    }
    man.stage_done("write");

    man.doc["params"] = {{"method", s.method},
                         {"segment_n", s.segment_n},
                         {"velocity_hint_m_s", s.velocity_hint_m_s},
                         {"center", s.center},
                         {"r", s.r},
                         {"peak_norm", s.peak_norm},
                         {"wavelength_m", s.wavelength_m ? json(*s.wavelength_m) : json(nullptr)},
                         {"iq_smooth", s.iq_smooth},
                         {"orient", s.orient},
                         {"gate", s.gate},
                         {"filter_order", s.filter_order}};
    man.doc["inputs"].push_back(in);
    man.write(manifest_path(manifest_file, out));

    std::cout << "wrote " << motion.samples.size() << " samples to " << out << '\n';
    return 0;
}

int cmd_spectrum(const std::string& in, const std::string& window, std::size_t pad,
                 const std::string& out, const std::string& manifest_file) {
    Manifest man("spectrum");
    const MotionTrace m = read_motion_csv(in);
    const WindowKind w = window == "none" ? WindowKind::none : WindowKind::hann;
    const Spectrum spec = spectrum(m, w, pad);
    man.stage_done("transform");
    write_spectrum_csv(spec, out);
    man.stage_done("write");

    man.doc["params"] = {{"window", window}, {"zero_pad_to", pad}};
    man.doc["inputs"].push_back(in);
    man.doc["outputs"].push_back(out);
    man.write(manifest_path(manifest_file, out));
    std::cout << "wrote " << spec.freqs_hz.size() << " bins to " << out << '\n';
    return 0;
}

int cmd_compare(const std::string& in, const std::string& truth_file, int reps,
                const DemodSettings& base, const std::string& out,
                const std::string& manifest_file) {
    Manifest man("compare");
    const IqSeries iq = read_iq_csv(in);
    std::optional<MotionTrace> truth;
    if (!truth_file.empty()) truth = read_motion_csv(truth_file);
    man.stage_done("read");

    struct Row {
        std::string method;
        double peak_hz = 0.0;
        double rms = std::nan("");
        double median_ms = 0.0;
    };
    std::vector<Row> rows;

    for (const std::string& method : {std::string("chord"), std::string("dacm")}) {
        DemodSettings s = base;
        s.method = method;
        s.center = "auto";  // DACM pays for center estimation, as deployed

        std::vector<double> times;
        MotionTrace motion;
        for (int r = 0; r < std::max(1, reps); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            motion = run_demod(iq, s);
            const auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }

        MotionTrace filtered =
            s.filter_order > 1 ? moving_average(motion, s.filter_order) : motion;
        const auto spec = spectrum(filtered);

        Row row;
        row.method = method;
        row.peak_hz = peak_frequency(spec, 0.5, iq.sample_rate_hz / 2.0 * 0.9);
        if (truth) row.rms = rms_error(*truth, filtered, Align::scale);
        row.median_ms = median(times);
        rows.push_back(row);
    }
    man.stage_done("run");

    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw CsvError("cannot open '" + out + "'");
    csv.precision(17);
    csv << "method,peak_freq_hz,rms_vs_truth\n";
    for (const auto& r : rows) csv << r.method << ',' << r.peak_hz << ',' << r.rms << '\n';

    std::cout << "method      peak [Hz]   rms vs truth   median [ms]\n";
    for (const auto& r : rows) {
        std::cout << r.method << (r.method.size() < 6 ? "\t    " : "    ");
        std::cout.precision(4);
        std::cout << r.peak_hz << "      " << r.rms << "       " << r.median_ms << '\n';
    }
    std::cout << "speedup chord vs dacm: " << rows[1].median_ms / rows[0].median_ms
              << "x\n";

    man.doc["params"] = {{"reps", reps}, {"filter_order", base.filter_order}};
    man.doc["inputs"].push_back(in);
    if (!truth_file.empty()) man.doc["inputs"].push_back(truth_file);
    man.doc["outputs"].push_back(out);
    for (const auto& r : rows) man.doc["timings_ms"][r.method + "_median"] = r.median_ms;
    man.write(manifest_path(manifest_file, out));
    return 0;
}

int cmd_error_model(const std::string& velocities, const std::string& wavelength,
                    double fs_start, double fs_stop, double fs_step,
                    const std::string& out, const std::string& manifest_file) {
    Manifest man("error-model");
    std::vector<double> v_list;
    std::stringstream ss(velocities);
    std::string tok;
    while (std::getline(ss, tok, ',')) v_list.push_back(parse_speed(tok));
    const double lambda = wavelength.empty() ? 12.5e-3 : parse_length(wavelength);

    std::vector<double> rates;
    for (double fs = fs_start; fs <= fs_stop + 1e-9; fs += fs_step) rates.push_back(fs);

    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw CsvError("cannot open '" + out + "'");
    csv.precision(17);
    csv << "velocity_m_s,sample_rate_hz,wavelength_m,relative_error\n";
    for (double v : v_list) {
        for (const auto& p : error_vs_rate(v, lambda, rates)) {
            csv << p.velocity_m_s << ',' << p.sample_rate_hz << ',' << p.wavelength_m
                << ',' << p.relative_error << '\n';
        }
    }
    man.stage_done("evaluate");

    man.doc["params"] = {{"velocities", velocities},
                         {"wavelength_m", lambda},
                         {"fs_start", fs_start},
                         {"fs_stop", fs_stop},
                         {"fs_step", fs_step}};
    man.doc["outputs"].push_back(out);
    man.write(manifest_path(manifest_file, out));
    std::cout << "wrote error table to " << out << '\n';
    return 0;
}

int cmd_nrange(const std::string& wavelength, const std::string& fs,
               const std::string& velocity) {
    const auto r = select_segment_len(parse_length(wavelength), parse_freq(fs),
                                      parse_speed(velocity));
    std::cout << "N range: [" << r.n_min << ", " << r.n_max << "], default "
              << r.n_default << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Doppler radar chord-approximation demodulation toolkit"};
    app.require_subcommand(1);
    app.footer("Numeric flags accept SI suffixes: lengths m/cm/mm/um, times s/ms,\n"
               "frequencies hz/khz, speeds m/s, mm/s, ... Plain numbers are base units.");

    std::string out = "out.csv", manifest_file, in;
    std::uint64_t seed = 0;

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic IQ record");
    std::string preset = "heartbeat-sim", amplitude, freq, fs_s, duration, wavelength, h;
    double theta0_deg = 0.0, amp_i = 1.0, amp_q = 1.0, dc_i = 0.0, dc_q = 0.0;
    double phase_noise_std = 0.0;
    double snr_db = std::numeric_limits<double>::infinity();
    sim->add_option("--preset", preset,
                    "heartbeat-sim | pendulum | actuator | composite | custom");
    sim->add_option("--amplitude", amplitude, "motion amplitude (length)");
    sim->add_option("--freq", freq, "motion frequency");
    sim->add_option("--fs", fs_s, "sampling rate");
    sim->add_option("--duration", duration, "record duration (time)");
    sim->add_option("--theta0-deg", theta0_deg, "initial phase, degrees");
    sim->add_option("--wavelength", wavelength, "carrier wavelength (default 12.5mm)");
    sim->add_option("--amp-i", amp_i, "I amplitude");
    sim->add_option("--amp-q", amp_q, "Q amplitude");
    sim->add_option("--dc-i", dc_i, "constant DC offset on I");
    sim->add_option("--dc-q", dc_q, "constant DC offset on Q");
    sim->add_option("--phase-noise-std", phase_noise_std, "residual phase noise std, rad");
    sim->add_option("--snr-db", snr_db, "additive noise SNR (omit for noiseless)");
    sim->add_option("--h-cm", h, "pendulum cycloid length (length; default 14cm)");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--out", out, "output IQ CSV");
    sim->add_option("--manifest", manifest_file, "manifest path (default <out>.manifest.json)");

    // demod
    auto* dem = app.add_subcommand("demod", "Demodulate an IQ record");
    DemodSettings ds;
    std::string velocity_hint, dem_wavelength, spectrum_out;
    dem->add_option("--in", in, "input IQ CSV")->required();
    dem->add_option("--method", ds.method, "chord | dacm | arctan");
    dem->add_option("--segment-n", ds.segment_n, "chord segment length N");
    dem->add_option("--velocity-hint", velocity_hint, "speed used to pick N (default 10mm/s)");
    dem->add_option("--center", ds.center, "dacm/arctan center: auto or <a>,<b>");
    dem->add_option("--r", ds.r, "chord normalization radius R (default 1)");
    dem->add_flag("--peak-norm", ds.peak_norm, "rescale output to peak |x| = 1");
    dem->add_option("--wavelength", dem_wavelength, "scale output by lambda/4pi");
    dem->add_option("--iq-smooth", ds.iq_smooth,
                    "chord pre-demodulation IQ smoothing order (default 1 = off)");
    dem->add_option("--orient", ds.orient,
                    "chord segment orientation rule: global | chain");
    dem->add_option("--gate", ds.gate,
                    "chain rule anisotropy gate (singular value ratio, default 10)");
    dem->add_option("--filter-order", ds.filter_order,
                    "moving average order (default 20, 1 disables)");
    dem->add_option("--out", out, "output motion CSV");
    dem->add_option("--spectrum-out", spectrum_out, "also write the spectrum CSV");
    dem->add_option("--manifest", manifest_file, "manifest path");

    // spectrum
    auto* spc = app.add_subcommand("spectrum", "Amplitude spectrum of a motion CSV");
    std::string window = "hann";
    std::size_t pad = 0;
    spc->add_option("--in", in, "input motion CSV")->required();
    spc->add_option("--window", window, "hann | none");
    spc->add_option("--pad", pad, "zero-pad length (0 = 4x input)");
    spc->add_option("--out", out, "output spectrum CSV");
    spc->add_option("--manifest", manifest_file, "manifest path");

    // compare
    auto* cmp = app.add_subcommand("compare",
                                   "Chord vs DACM-with-center-estimation on one record");
    std::string truth_file;
    int reps = 10;
    cmp->add_option("--in", in, "input IQ CSV")->required();
    cmp->add_option("--truth", truth_file, "ground-truth motion CSV");
    cmp->add_option("--reps", reps, "timing repetitions (median reported)");
    cmp->add_option("--segment-n", ds.segment_n, "chord segment length N");
    cmp->add_option("--velocity-hint", velocity_hint, "speed used to pick N");
    cmp->add_option("--wavelength", dem_wavelength, "scale output by lambda/4pi");
    cmp->add_option("--iq-smooth", ds.iq_smooth, "chord IQ smoothing order");
    cmp->add_option("--orient", ds.orient, "chord orientation rule: global | chain");
    cmp->add_option("--gate", ds.gate, "chain rule anisotropy gate");
    cmp->add_option("--filter-order", ds.filter_order, "moving average order");
    cmp->add_option("--out", out, "report CSV");
    cmp->add_option("--manifest", manifest_file, "manifest path");

    // error-model
    auto* err = app.add_subcommand("error-model", "Chord system error vs sampling rate");
    std::string velocities = "1mm/s,2.5mm/s,5mm/s,10mm/s", em_wavelength;
    double fs_start = 40.0, fs_stop = 200.0, fs_step = 5.0;
    err->add_option("--velocities", velocities, "comma-separated speeds");
    err->add_option("--wavelength", em_wavelength, "carrier wavelength (default 12.5mm)");
    err->add_option("--fs-start", fs_start, "first sampling rate, Hz");
    err->add_option("--fs-stop", fs_stop, "last sampling rate, Hz");
    err->add_option("--fs-step", fs_step, "sampling rate step, Hz");
    err->add_option("--out", out, "table CSV");
    err->add_option("--manifest", manifest_file, "manifest path");

    // nrange
    auto* nr = app.add_subcommand("nrange", "Admissible chord segment length N");
    std::string nr_wavelength = "12.5mm", nr_fs = "90", nr_velocity = "10mm/s";
    nr->add_option("--wavelength", nr_wavelength, "carrier wavelength");
    nr->add_option("--fs", nr_fs, "sampling rate");
    nr->add_option("--velocity", nr_velocity, "target velocity");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!velocity_hint.empty()) ds.velocity_hint_m_s = parse_speed(velocity_hint);
        if (!dem_wavelength.empty()) ds.wavelength_m = parse_length(dem_wavelength);

        if (sim->parsed())
            return cmd_simulate(preset, amplitude, freq, fs_s, duration, theta0_deg,
                                wavelength, amp_i, amp_q, dc_i, dc_q, phase_noise_std,
                                snr_db, h, seed, out, manifest_file);
        if (dem->parsed()) return cmd_demod(in, ds, out, spectrum_out, manifest_file);
        if (spc->parsed()) return cmd_spectrum(in, window, pad, out, manifest_file);
        if (cmp->parsed()) return cmd_compare(in, truth_file, reps, ds, out, manifest_file);
        if (err->parsed())
            return cmd_error_model(velocities, em_wavelength, fs_start, fs_stop, fs_step,
                                   out, manifest_file);
        if (nr->parsed()) return cmd_nrange(nr_wavelength, nr_fs, nr_velocity);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
