#include "mcvd/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "mcvd/csv.hpp"
#include "mcvd/experiments.hpp"
#include "mcvd/quadrature.hpp"

namespace mcvd {
namespace {

using KeyValues = std::map<std::string, std::string, std::less<>>;

const std::vector<std::pair<std::string_view, Command>> kCommands = {
    {"simulate", Command::Simulate},
    {"sweep-distance", Command::SweepDistance},
    {"sweep-frequency", Command::SweepFrequency},
    {"compare-dims", Command::CompareDims},
    {"detect", Command::Detect},
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(std::string_view key, std::string_view value, std::string_view why) {
    std::ostringstream msg;
    msg << "invalid value for '" << key << "': " << why << " (got '" << value << "')";
    throw UsageError(msg.str());
}

double parse_number(std::string_view key, std::string_view text) {
    const auto s = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(value)) {
        invalid(key, text, "not a finite number");
    }
    return value;
}

// Accepts "0.05" as well as fractions such as "1/30".
double parse_ratio(std::string_view key, std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return parse_number(key, text);
    }
    const double num = parse_number(key, text.substr(0, slash));
    const double den = parse_number(key, text.substr(slash + 1));
    if (den == 0.0) {
        invalid(key, text, "zero denominator");
    }
    return num / den;
}

double positive(std::string_view key, std::string_view text) {
    const double v = parse_number(key, text);
    if (!(v > 0.0)) {
        invalid(key, text, "must be > 0");
    }
    return v;
}

double nonnegative(std::string_view key, std::string_view text) {
    const double v = parse_number(key, text);
    if (!(v >= 0.0)) {
        invalid(key, text, "must be >= 0");
    }
    return v;
}

KeyValues read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path.string() + "'");
    }
    const auto& keys = config_keys();
    KeyValues values;
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        const auto body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            std::ostringstream msg;
            msg << path.string() << ":" << line_no << ": expected key=value, got '" << body << "'";
            throw UsageError(msg.str());
        }
        const auto key = trim(body.substr(0, eq));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            std::ostringstream msg;
            msg << "unknown key '" << key << "' in " << path.string() << ":" << line_no;
            throw UsageError(msg.str());
        }
        values[std::string(key)] = std::string(trim(body.substr(eq + 1)));
    }
    return values;
}

void apply_values(RunConfig& cfg, const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "bits") {
            try {
                cfg.schedule.bits = BitSequence::parse(value);
            } catch (const std::invalid_argument&) {
                invalid(key, value, "expected a string of 0 and 1");
            }
            if (cfg.schedule.bits.empty()) {
                invalid(key, value, "must be nonempty");
            }
        } else if (key == "distance") {
            cfg.channel.distance = nonnegative(key, value);
        } else if (key == "diffusion") {
            cfg.channel.diffusion_coefficient = positive(key, value);
        } else if (key == "area") {
            cfg.channel.cross_section_area = positive(key, value);
        } else if (key == "rate") {
            cfg.schedule.rate = nonnegative(key, value);
        } else if (key == "bit-period") {
            cfg.schedule.bit_period = positive(key, value);
        } else if (key == "threshold") {
            if (trim(value) == "midpoint") {
                cfg.midpoint_threshold = true;
                cfg.threshold.reset();
            } else {
                cfg.threshold = nonnegative(key, value);
                cfg.midpoint_threshold = false;
            }
        } else if (key == "isi-depth") {
            const auto s = trim(value);
            std::size_t depth = 0;
            const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), depth);
            if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
                invalid(key, value, "expected a nonnegative integer");
            }
            cfg.isi_depth = depth;
        } else if (key == "evaluator") {
            if (value == "closed-form") {
                cfg.kernel.evaluator = Evaluator::ClosedForm;
            } else if (value == "quadrature") {
                cfg.kernel.evaluator = Evaluator::Quadrature;
            } else {
                invalid(key, value, "expected closed-form or quadrature");
            }
        } else if (key == "rel-tol") {
            const double tol = parse_number(key, value);
            if (!(tol > 0.0 && tol < 1.0)) {
                invalid(key, value, "must lie in (0, 1)");
            }
            cfg.kernel.rel_tol = tol;
        } else if (key == "time-step") {
            cfg.time_step = positive(key, value);
        } else if (key == "horizon") {
            cfg.horizon = positive(key, value);
        } else if (key == "values") {
            cfg.sweep_values.clear();
            std::string_view rest = value;
            while (true) {
                const auto comma = rest.find(',');
                const double v = parse_ratio(key, rest.substr(0, comma));
                if (!(v > 0.0)) {
                    invalid(key, value, "sweep values must be > 0");
                }
                if (std::find(cfg.sweep_values.begin(), cfg.sweep_values.end(), v) !=
                    cfg.sweep_values.end()) {
                    invalid(key, value, "sweep values must be distinct");
                }
                cfg.sweep_values.push_back(v);
                if (comma == std::string_view::npos) {
                    break;
                }
                rest = rest.substr(comma + 1);
            }
        } else if (key == "dimension") {
            if (value == "1d") {
                cfg.dimension = Dimensionality::OneD;
            } else if (value == "3d") {
                cfg.dimension = Dimensionality::ThreeD;
            } else {
                invalid(key, value, "expected 1d or 3d");
            }
        } else if (key == "output") {
            if (value.empty()) {
                invalid(key, value, "must be a path");
            }
            cfg.output_path = value;
        } else if (key == "summary") {
            if (value.empty()) {
                invalid(key, value, "must be a path");
            }
            cfg.summary_path = std::filesystem::path(value);
        } else {
            throw UsageError("unknown key '" + key + "'");
        }
    }
}

SweepSpec sweep_spec_for(const RunConfig& cfg, SweepKind kind) {
    SweepSpec spec = default_sweep(kind);
    spec.channel = cfg.channel;
    spec.schedule = cfg.schedule;
    if (!cfg.sweep_values.empty()) {
        spec.sweep_values = cfg.sweep_values;
    }
    spec.time_step = cfg.time_step;
    spec.horizon = cfg.horizon;
    spec.kernel = cfg.kernel;
    return spec;
}

void print_summary(const SweepResult& result, std::ostream& log) {
    for (const auto& s : result.summary) {
        log << to_string(result.kind) << " value=" << format_number(s.sweep_value)
            << " dim=" << to_string(s.dimensionality) << " T_b=" << format_number(s.bit_period)
            << " signal=" << format_number(s.signal)
            << " interference=" << format_number(s.interference)
            << " signal_to_isi=" << format_number(s.signal_to_isi) << '\n';
    }
}

}  // namespace

std::string_view to_string(Command command) {
    for (const auto& [name, cmd] : kCommands) {
        if (cmd == command) {
            return name;
        }
    }
    return "unknown";
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = {
        "bits",    "distance", "diffusion", "area",      "rate",    "bit-period",
        "threshold", "isi-depth", "evaluator", "rel-tol", "time-step", "horizon",
        "values",  "dimension", "output",   "summary",
    };
    return keys;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Molecular communication via diffusion: channel simulation and sweeps", "mcvd"};
    std::string command_name;
    std::string config_file;
    app.add_option("command", command_name,
                   "simulate | sweep-distance | sweep-frequency | compare-dims | detect");
    app.add_option("--config", config_file, "flat key=value file; flags override it");

    std::map<std::string, std::string> flag_values;
    for (const auto key : config_keys()) {
        app.add_option("--" + std::string(key), flag_values[std::string(key)]);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (command_name.empty()) {
        throw UsageError("missing required command (simulate, sweep-distance, sweep-frequency, "
                         "compare-dims, detect)");
    }
    const auto found = std::find_if(kCommands.begin(), kCommands.end(),
                                    [&](const auto& c) { return c.first == command_name; });
    if (found == kCommands.end()) {
        throw UsageError("unknown command '" + command_name + "'");
    }

    RunConfig cfg;
    cfg.command = found->second;
    if (cfg.command == Command::SweepFrequency) {
        cfg.channel.distance = default_sweep(SweepKind::Frequency).channel.distance;
    }
    if (cfg.command == Command::CompareDims) {
        cfg.schedule.bit_period = default_sweep(SweepKind::CompareDims).schedule.bit_period;
    }
    cfg.output_path = std::string(to_string(cfg.command)) + ".csv";

    if (!config_file.empty()) {
        apply_values(cfg, read_config_file(config_file));
    }
    KeyValues overrides;
    for (const auto& [key, value] : flag_values) {
        if (app.count("--" + key) > 0) {
            overrides[key] = value;
        }
    }
    apply_values(cfg, overrides);

    if (cfg.command == Command::Detect && !cfg.threshold && !cfg.midpoint_threshold) {
        throw UsageError("detect requires --threshold <value|midpoint>");
    }
    if (cfg.command == Command::Simulate && cfg.dimension == Dimensionality::ThreeD &&
        cfg.channel.distance == 0.0) {
        throw UsageError("invalid value for 'distance': 3d needs distance > 0");
    }
    if (cfg.horizon && cfg.command != Command::SweepFrequency &&
        *cfg.horizon < cfg.schedule.bit_period * static_cast<double>(cfg.schedule.bits.size())) {
        throw UsageError("invalid value for 'horizon': must cover the whole message");
    }
    return cfg;
}

void execute(const RunConfig& cfg, std::ostream& log) {
    switch (cfg.command) {
        case Command::Simulate: {
            const double horizon = cfg.horizon.value_or(
                cfg.schedule.bit_period * static_cast<double>(cfg.schedule.bits.size()));
            const auto grid = uniform_time_grid(cfg.time_step, horizon);
            const auto trace =
                concentration(cfg.dimension, cfg.channel, cfg.schedule, grid, cfg.kernel);
            write_csv(trace, cfg.channel.distance, cfg.output_path);
            log << "simulate bits=" << cfg.schedule.bits.to_string() << " rows=" << grid.size()
                << " -> " << cfg.output_path.string() << '\n';
            return;
        }
        case Command::Detect: {
            const auto provider = make_trace_provider(cfg.dimension, cfg.kernel);
            DetectorConfig detector;
            detector.isi_depth = cfg.isi_depth;
            if (cfg.midpoint_threshold) {
                detector.threshold =
                    midpoint_threshold(mid_bit_samples(provider, cfg.channel, cfg.schedule));
            } else {
                detector.threshold = *cfg.threshold;
            }
            const auto report = detect(provider, cfg.channel, cfg.schedule, detector);
            write_csv(report, cfg.output_path);
            std::string decoded;
            for (const auto d : report.decisions) {
                decoded.push_back(d ? '1' : '0');
            }
            log << "detect bits=" << cfg.schedule.bits.to_string() << " decoded=" << decoded
                << " threshold=" << format_number(detector.threshold) << " -> "
                << cfg.output_path.string() << '\n';
            return;
        }
        case Command::SweepDistance:
        case Command::SweepFrequency:
        case Command::CompareDims: {
            const SweepKind kind = cfg.command == Command::SweepDistance   ? SweepKind::Distance
                                   : cfg.command == Command::SweepFrequency ? SweepKind::Frequency
                                                                            : SweepKind::CompareDims;
            const auto result = run_sweep(sweep_spec_for(cfg, kind));
            write_csv(result, cfg.output_path);
            if (cfg.summary_path) {
                write_text_file(*cfg.summary_path, summary_csv(result));
            }
            print_summary(result, log);
            log << to_string(kind) << " rows=" << result.rows.size() << " -> "
                << cfg.output_path.string() << '\n';
            return;
        }
    }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        execute(parse_config(args), out);
        return kExitSuccess;
    } catch (const HelpRequested& help) {
        out << help.what();
        return kExitSuccess;
    } catch (const UsageError& e) {
        err << "mcvd: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "mcvd: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "mcvd: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        err << "mcvd: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace mcvd
