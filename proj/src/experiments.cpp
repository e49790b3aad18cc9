#include "mcvd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "mcvd/modem.hpp"

namespace mcvd {
namespace {

struct RunPoint {
    double sweep_value;
    ChannelParams channel;
    EmissionSchedule schedule;
};

struct RunOutput {
    std::vector<SweepRow> rows;
    std::vector<SweepSummary> summary;
};

void require(bool ok, const char* message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

double message_length(const EmissionSchedule& s) {
    return s.bit_period * static_cast<double>(s.bits.size());
}

RunOutput evaluate_point(const RunPoint& point, std::span<const Dimensionality> dims,
                         const SweepSpec& spec) {
    const double horizon = spec.horizon.value_or(message_length(point.schedule));
    const auto grid = uniform_time_grid(spec.time_step, horizon);
    // Summary samples are evaluated exactly at the mid-bit instants.
    const double mid_instants[] = {0.5 * point.schedule.bit_period,
                                   1.5 * point.schedule.bit_period};

    RunOutput out;
    std::vector<ConcentrationTrace> traces;
    for (const auto dim : dims) {
        traces.push_back(concentration(dim, point.channel, point.schedule, grid, spec.kernel));
        const auto mids =
            concentration(dim, point.channel, point.schedule, mid_instants, spec.kernel);
        out.summary.push_back({point.sweep_value, dim, point.schedule.bit_period, mids.values[0],
                               mids.values[1],
                               interference_fraction(mids.values[0], mids.values[1])});
    }
    out.rows.reserve(grid.size() * dims.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const auto& trace : traces) {
            out.rows.push_back(
                {point.sweep_value, grid[i], trace.values[i], trace.dimensionality});
        }
    }
    return out;
}

SweepResult run_points(SweepKind kind, std::vector<RunPoint> points,
                       std::span<const Dimensionality> dims, const SweepSpec& spec) {
    std::sort(points.begin(), points.end(),
              [](const RunPoint& a, const RunPoint& b) { return a.sweep_value < b.sweep_value; });

    // Points are independent; results are gathered in sorted order.
    std::vector<std::future<RunOutput>> pending;
    pending.reserve(points.size());
    for (const auto& point : points) {
        pending.push_back(std::async(std::launch::async,
                                     [&point, dims, &spec] { return evaluate_point(point, dims, spec); }));
    }

    SweepResult result;
    result.kind = kind;
    for (auto& f : pending) {
        auto out = f.get();
        result.rows.insert(result.rows.end(), out.rows.begin(), out.rows.end());
        result.summary.insert(result.summary.end(), out.summary.begin(), out.summary.end());
    }
    return result;
}

void require_kind(const SweepSpec& spec, SweepKind kind) {
    if (spec.kind != kind) {
        throw std::invalid_argument("sweep spec kind does not match the requested run");
    }
}

}  // namespace

void SweepSpec::validate() const {
    channel.validate();
    schedule.validate();
    require(!sweep_values.empty(), "sweep values must be nonempty");
    for (std::size_t i = 0; i < sweep_values.size(); ++i) {
        require(sweep_values[i] > 0.0 && std::isfinite(sweep_values[i]),
                "sweep values must be finite and > 0");
        for (std::size_t j = 0; j < i; ++j) {
            require(sweep_values[i] != sweep_values[j], "sweep values must be distinct");
        }
    }
    require(time_step > 0.0 && std::isfinite(time_step), "time step must be > 0");
    require(kernel.rel_tol > 0.0 && kernel.rel_tol < 1.0, "rel_tol must lie in (0, 1)");
    if (horizon) {
        double longest = message_length(schedule);
        if (kind == SweepKind::Frequency) {
            const double slowest = *std::min_element(sweep_values.begin(), sweep_values.end());
            longest = static_cast<double>(schedule.bits.size()) / slowest;
        }
        require(*horizon >= longest, "horizon must cover the whole message");
    }
}

SweepSpec default_sweep(SweepKind kind) {
    SweepSpec spec;
    spec.kind = kind;
    switch (kind) {
        case SweepKind::Distance:
            spec.sweep_values = {0.05, 1.0, 10.0};
            break;
        case SweepKind::Frequency:
            spec.channel.distance = 1.0;
            spec.sweep_values = {1.0 / 30.0, 1.0 / 20.0, 1.0 / 10.0};
            break;
        case SweepKind::CompareDims:
            spec.schedule.bit_period = 20.0;
            spec.sweep_values = {0.5};
            break;
    }
    return spec;
}

SweepResult run_distance_sweep(const SweepSpec& spec) {
    require_kind(spec, SweepKind::Distance);
    spec.validate();
    std::vector<RunPoint> points;
    for (const double x : spec.sweep_values) {
        RunPoint p{x, spec.channel, spec.schedule};
        p.channel.distance = x;
        points.push_back(p);
    }
    const Dimensionality dims[] = {Dimensionality::OneD};
    return run_points(SweepKind::Distance, std::move(points), dims, spec);
}

SweepResult run_frequency_sweep(const SweepSpec& spec) {
    require_kind(spec, SweepKind::Frequency);
    spec.validate();
    std::vector<RunPoint> points;
    for (const double f : spec.sweep_values) {
        RunPoint p{f, spec.channel, spec.schedule};
        p.schedule.bit_period = 1.0 / f;
        points.push_back(p);
    }
    const Dimensionality dims[] = {Dimensionality::OneD};
    return run_points(SweepKind::Frequency, std::move(points), dims, spec);
}

SweepResult run_compare_dims(const SweepSpec& spec) {
    require_kind(spec, SweepKind::CompareDims);
    spec.validate();
    std::vector<RunPoint> points;
    for (const double r : spec.sweep_values) {
        RunPoint p{r, spec.channel, spec.schedule};
        p.channel.distance = r;
        points.push_back(p);
    }
    const Dimensionality dims[] = {Dimensionality::OneD, Dimensionality::ThreeD};
    return run_points(SweepKind::CompareDims, std::move(points), dims, spec);
}

SweepResult run_sweep(const SweepSpec& spec) {
    switch (spec.kind) {
        case SweepKind::Distance:
            return run_distance_sweep(spec);
        case SweepKind::Frequency:
            return run_frequency_sweep(spec);
        case SweepKind::CompareDims:
            return run_compare_dims(spec);
    }
    throw std::invalid_argument("unknown sweep kind");
}

std::string_view to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::Distance:
            return "sweep-distance";
        case SweepKind::Frequency:
            return "sweep-frequency";
        case SweepKind::CompareDims:
            return "compare-dims";
    }
    return "unknown";
}

}  // namespace mcvd
