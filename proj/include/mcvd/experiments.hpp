#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mcvd/channel.hpp"

namespace mcvd {

enum class SweepKind { Distance, Frequency, CompareDims };

/// One sweep run. `sweep_values` are distances (cm) for Distance and
/// CompareDims, and emitting frequencies f_b = 1/T_b (Hz) for Frequency.
struct SweepSpec {
    SweepKind kind = SweepKind::Distance;
    ChannelParams channel;
    EmissionSchedule schedule;
    std::vector<double> sweep_values;
    double time_step = 0.1;
    // Unset: each run covers its own message, bits * T_b.
    std::optional<double> horizon;
    KernelOptions kernel;

    void validate() const;
};

/// Defaults for the three reference experiments: "10" at 10^4 molecules/s in
/// air (D = 0.43 cm^2/s), distances {0.05, 1, 10} cm at T_b = 30 s, emitting
/// frequencies {1/30, 1/20, 1/10} Hz at 1 cm, and 1D vs 3D at 0.5 cm with
/// T_b = 20 s.
SweepSpec default_sweep(SweepKind kind);

struct SweepRow {
    double sweep_value;
    double time;
    double concentration;
    Dimensionality dimensionality;

    bool operator==(const SweepRow&) const = default;
};

struct SweepSummary {
    double sweep_value;
    Dimensionality dimensionality;
    double bit_period;
    double signal;        // sample at T_b / 2
    double interference;  // sample at 3 T_b / 2
    double signal_to_isi;  // interference / (signal + interference)

    bool operator==(const SweepSummary&) const = default;
};

struct SweepResult {
    SweepKind kind = SweepKind::Distance;
    std::vector<SweepRow> rows;  // sorted by (sweep_value, time, dimensionality)
    std::vector<SweepSummary> summary;

    bool operator==(const SweepResult&) const = default;
};

SweepResult run_distance_sweep(const SweepSpec& spec);
SweepResult run_frequency_sweep(const SweepSpec& spec);
SweepResult run_compare_dims(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec);

std::string_view to_string(SweepKind kind);

}  // namespace mcvd
