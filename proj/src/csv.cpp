#include "mcvd/csv.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>

namespace mcvd {
namespace {

void append_row(std::string& out, double sweep_value, double time, double value,
                Dimensionality dim) {
    out += format_number(sweep_value);
    out += ',';
    out += format_number(time);
    out += ',';
    out += format_number(value);
    out += ',';
    out += to_string(dim);
    out += '\n';
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf.data(), end);
}

std::string to_csv(const SweepResult& result) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& row : result.rows) {
        append_row(out, row.sweep_value, row.time, row.concentration, row.dimensionality);
    }
    return out;
}

std::string to_csv(const ConcentrationTrace& trace, double sweep_value) {
    std::string out = kTraceHeader;
    out += '\n';
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        append_row(out, sweep_value, trace.times[i], trace.values[i], trace.dimensionality);
    }
    return out;
}

std::string to_csv(const DetectionReport& report) {
    std::string out = kDetectionHeader;
    out += '\n';
    for (std::size_t n = 0; n < report.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_number(report.sample_times[n]);
        out += ',';
        out += format_number(report.samples[n]);
        out += ',';
        out += report.decisions[n] ? '1' : '0';
        out += ',';
        out += format_number(report.signal_components[n]);
        out += ',';
        out += format_number(report.isi_components[n]);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const SweepResult& result) {
    std::string out = kSummaryHeader;
    out += '\n';
    for (const auto& s : result.summary) {
        out += format_number(s.sweep_value);
        out += ',';
        out += to_string(s.dimensionality);
        for (const double v : {s.bit_period, s.signal, s.interference, s.signal_to_isi}) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    }
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.close();
    if (!file) {
        throw IoError("failed writing '" + path.string() + "': " + std::strerror(errno));
    }
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
    write_text_file(path, to_csv(result));
}

void write_csv(const ConcentrationTrace& trace, double sweep_value,
               const std::filesystem::path& path) {
    write_text_file(path, to_csv(trace, sweep_value));
}

void write_csv(const DetectionReport& report, const std::filesystem::path& path) {
    write_text_file(path, to_csv(report));
}

}  // namespace mcvd
