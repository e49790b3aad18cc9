#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mcvd/channel.hpp"

namespace mcvd {

struct DetectorConfig {
    double threshold = 0.0;     // molecules/cm^3
    std::size_t isi_depth = 1;  // previous bits counted as interference

    void validate() const;
};

/// Per-bit view of one received transmission, sampled at mid-bit instants.
struct DetectionReport {
    double threshold = 0.0;
    std::size_t isi_depth = 1;
    std::vector<double> sample_times;
    std::vector<double> samples;  // Z_SD
    std::vector<std::uint8_t> decisions;
    std::vector<double> signal_components;
    std::vector<double> isi_components;

    std::size_t size() const { return samples.size(); }
};

/// Any channel evaluation with the concentration_1d/concentration_3d shape.
using TraceProvider = std::function<ConcentrationTrace(
    const ChannelParams&, const EmissionSchedule&, std::span<const double>)>;

TraceProvider make_trace_provider(Dimensionality dim, const KernelOptions& options = {});

/// (2n - 1) T_b / 2 for n = 1..num_bits.
std::vector<double> sample_instants(std::size_t num_bits, double bit_period);

std::vector<double> mid_bit_samples(const TraceProvider& provider, const ChannelParams& params,
                                    const EmissionSchedule& schedule);

/// Halfway between the smallest and largest sample.
double midpoint_threshold(std::span<const double> samples);

/// Samples the full schedule at every mid-bit instant and decides 1 when the
/// sample is >= threshold. Each sample is also split into the part caused by
/// the bit's own slot and the part caused by the isi_depth slots before it.
DetectionReport detect(const TraceProvider& provider, const ChannelParams& params,
                       const EmissionSchedule& schedule, const DetectorConfig& config);

/// isi / max(signal + isi, 1e-30): the share of a sample owed to interference.
double interference_fraction(double signal, double isi);

double signal_to_isi(const DetectionReport& report, std::size_t bit_index);

}  // namespace mcvd
