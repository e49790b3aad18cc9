#include "mcvd/modem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mcvd {
namespace {

constexpr double kFractionFloor = 1e-30;

double sample_at(const TraceProvider& provider, const ChannelParams& params,
                 const EmissionSchedule& schedule, double t) {
    const double times[] = {t};
    return provider(params, schedule, times).values.front();
}

}  // namespace

void DetectorConfig::validate() const {
    if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
        throw std::invalid_argument("detector threshold must be finite and >= 0");
    }
}

TraceProvider make_trace_provider(Dimensionality dim, const KernelOptions& options) {
    return [dim, options](const ChannelParams& params, const EmissionSchedule& schedule,
                          std::span<const double> times) {
        return concentration(dim, params, schedule, times, options);
    };
}

std::vector<double> sample_instants(std::size_t num_bits, double bit_period) {
    if (num_bits == 0) {
        throw std::invalid_argument("sample_instants needs at least one bit");
    }
    if (!(bit_period > 0.0)) {
        throw std::invalid_argument("bit period must be > 0");
    }
    std::vector<double> out(num_bits);
    for (std::size_t n = 1; n <= num_bits; ++n) {
        out[n - 1] = static_cast<double>(2 * n - 1) * bit_period / 2.0;
    }
    return out;
}

std::vector<double> mid_bit_samples(const TraceProvider& provider, const ChannelParams& params,
                                    const EmissionSchedule& schedule) {
    schedule.validate();
    const auto times = sample_instants(schedule.bits.size(), schedule.bit_period);
    return provider(params, schedule, times).values;
}

double midpoint_threshold(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("midpoint threshold needs at least one sample");
    }
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    return 0.5 * (*lo + *hi);
}

DetectionReport detect(const TraceProvider& provider, const ChannelParams& params,
                       const EmissionSchedule& schedule, const DetectorConfig& config) {
    schedule.validate();
    config.validate();

    DetectionReport report;
    report.threshold = config.threshold;
    report.isi_depth = config.isi_depth;
    report.sample_times = sample_instants(schedule.bits.size(), schedule.bit_period);
    report.samples = provider(params, schedule, report.sample_times).values;

    const std::size_t n_bits = schedule.bits.size();
    report.decisions.resize(n_bits);
    report.signal_components.resize(n_bits);
    report.isi_components.resize(n_bits);

    for (std::size_t n = 0; n < n_bits; ++n) {
        const double t = report.sample_times[n];
        report.decisions[n] = report.samples[n] >= config.threshold ? 1 : 0;

        EmissionSchedule own = schedule;
        own.bits = schedule.bits.masked(n, n + 1);
        report.signal_components[n] = sample_at(provider, params, own, t);

        const std::size_t first = n > config.isi_depth ? n - config.isi_depth : 0;
        EmissionSchedule history = schedule;
        history.bits = schedule.bits.masked(first, n);
        report.isi_components[n] = first < n ? sample_at(provider, params, history, t) : 0.0;
    }
    return report;
}

double interference_fraction(double signal, double isi) {
    return isi / std::max(signal + isi, kFractionFloor);
}

double signal_to_isi(const DetectionReport& report, std::size_t bit_index) {
    if (bit_index >= report.size()) {
        std::ostringstream msg;
        msg << "bit index " << bit_index << " out of range for " << report.size() << " bits";
        throw std::out_of_range(msg.str());
    }
    return interference_fraction(report.signal_components[bit_index],
                                 report.isi_components[bit_index]);
}

}  // namespace mcvd
