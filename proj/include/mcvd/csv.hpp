#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "mcvd/channel.hpp"
#include "mcvd/experiments.hpp"
#include "mcvd/modem.hpp"

namespace mcvd {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kTraceHeader = "sweep_value,time_s,concentration_per_cm3,dimensionality";
inline constexpr const char* kDetectionHeader = "bit_index,sample_time_s,z_sd,decision,signal,isi";
inline constexpr const char* kSummaryHeader =
    "sweep_value,dimensionality,bit_period_s,signal,interference,signal_to_isi";

/// Shortest-round-trip-safe rendering: 17 significant digits, "C" locale.
std::string format_number(double value);

std::string to_csv(const SweepResult& result);
std::string to_csv(const ConcentrationTrace& trace, double sweep_value);
std::string to_csv(const DetectionReport& report);
std::string summary_csv(const SweepResult& result);

/// Writes (truncating) `content`; failures carry the path and OS reason.
void write_text_file(const std::filesystem::path& path, const std::string& content);

void write_csv(const SweepResult& result, const std::filesystem::path& path);
void write_csv(const ConcentrationTrace& trace, double sweep_value,
               const std::filesystem::path& path);
void write_csv(const DetectionReport& report, const std::filesystem::path& path);

}  // namespace mcvd
