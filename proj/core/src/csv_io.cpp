#include "chordal/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <string>

namespace chordal {

namespace {

double parse_field(std::string_view s, const std::filesystem::path& path, int line_no) {
    double v = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw CsvError(path.string() + ":" + std::to_string(line_no) +
                       ": non-numeric field '" + std::string(s) + "'");
    return v;
}

std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_header(std::ifstream& in, const char* key,
                    const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line))
        throw CsvError(path.string() + ":1: empty file");
    line = chomp(line);
    const std::string prefix = std::string("# ") + key + "=";
    if (line.rfind(prefix, 0) != 0)
        throw CsvError(path.string() + ":1: expected header '" + prefix + "<float>'");
    return parse_field(std::string_view(line).substr(prefix.size()), path, 1);
}

void expect_columns(std::ifstream& in, const char* cols,
                    const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line) || chomp(line) != cols)
        throw CsvError(path.string() + ":2: expected column header '" +
                       std::string(cols) + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw CsvError("cannot open '" + path.string() + "' for writing");
    out.precision(17);
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

IqSeries read_iq_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    IqSeries iq;
    iq.sample_rate_hz = parse_header(in, "fs", path);
    expect_columns(in, "I,Q", path);

    std::string line;
    int line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CsvError(path.string() + ":" + std::to_string(line_no) +
                           ": expected two comma-separated fields");
        iq.i.push_back(parse_field(std::string_view(line).substr(0, comma), path, line_no));
        iq.q.push_back(parse_field(std::string_view(line).substr(comma + 1), path, line_no));
    }
    validate(iq);
    return iq;
}

void write_iq_csv(const IqSeries& iq, const std::filesystem::path& path) {
    validate(iq);
    auto out = open_out(path);
    out << "# fs=" << iq.sample_rate_hz << "\nI,Q\n";
    for (std::size_t k = 0; k < iq.size(); ++k)
        out << iq.i[k] << ',' << iq.q[k] << '\n';
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

MotionTrace read_motion_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    MotionTrace m;
    m.sample_rate_hz = parse_header(in, "fs", path);
    expect_columns(in, "x", path);

    std::string line;
    int line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        m.samples.push_back(parse_field(line, path, line_no));
    }
    validate(m);
    return m;
}

void write_motion_csv(const MotionTrace& trace, const std::filesystem::path& path) {
    validate(trace);
    auto out = open_out(path);
    out << "# fs=" << trace.sample_rate_hz << "\nx\n";
    for (double s : trace.samples) out << s << '\n';
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

void write_spectrum_csv(const Spectrum& spec, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "# df=" << spec.resolution_hz << "\nf,mag\n";
    for (std::size_t k = 0; k < spec.freqs_hz.size(); ++k)
        out << spec.freqs_hz[k] << ',' << spec.magnitudes[k] << '\n';
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

}  // namespace chordal
