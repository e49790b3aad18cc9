#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcvd/channel.hpp"
#include "mcvd/modem.hpp"

namespace mcvd {

enum class Command { Simulate, SweepDistance, SweepFrequency, CompareDims, Detect };

enum ExitStatus : int {
    kExitSuccess = 0,
    kExitUsage = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

/// Bad flags, bad config file contents, or out-of-range values.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by parse_config for -h/--help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
public:
    explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

struct RunConfig {
    Command command = Command::Simulate;
    ChannelParams channel;
    EmissionSchedule schedule;
    Dimensionality dimension = Dimensionality::OneD;  // simulate only

    // detect: either a fixed threshold or the midpoint of the run's samples
    std::optional<double> threshold;
    bool midpoint_threshold = false;
    std::size_t isi_depth = 1;

    KernelOptions kernel;
    double time_step = 0.1;
    std::optional<double> horizon;
    std::vector<double> sweep_values;  // empty: the command's default set

    std::filesystem::path output_path;
    std::optional<std::filesystem::path> summary_path;
};

std::string_view to_string(Command command);

/// Keys accepted both as `--key value` flags and as `key=value` config lines.
const std::vector<std::string_view>& config_keys();

/// Parses `args` (argv without the program name). A `--config FILE` flat
/// key=value file is applied first and explicit flags override it.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs the configured command and writes its CSV output. Progress and
/// summaries go to `log`.
void execute(const RunConfig& config, std::ostream& log);

/// Full front end: parse, execute, and map failures to exit statuses.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcvd
