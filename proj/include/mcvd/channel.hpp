#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcvd {

/// Medium and geometry of the diffusion channel. Units are cm and s.
struct ChannelParams {
    double diffusion_coefficient = 0.43;  // cm^2/s, air
    double cross_section_area = 1.0;      // cm^2, 1D pipe only
    double distance = 1.0;                // cm; radial distance in 3D

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Ordered ON-OFF symbols. Construction rejects anything but '0'/'1'.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::vector<std::uint8_t> bits);

    static BitSequence parse(std::string_view text);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    std::string to_string() const;

    /// Copy with every bit outside [first, last) cleared.
    BitSequence masked(std::size_t first, std::size_t last) const;

    bool operator==(const BitSequence&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Piecewise-constant emission Q(t): `rate` during every '1' slot, zero
/// during '0' slots and after the last slot.
struct EmissionSchedule {
    BitSequence bits = BitSequence::parse("10");
    double bit_period = 30.0;  // s
    double rate = 10000.0;     // molecules/s

    void validate() const;
};

enum class Dimensionality { OneD, ThreeD };

std::string_view to_string(Dimensionality d);

struct ConcentrationTrace {
    std::vector<double> times;   // s
    std::vector<double> values;  // molecules/cm^3
    Dimensionality dimensionality = Dimensionality::OneD;
};

enum class Evaluator { ClosedForm, Quadrature };

struct KernelOptions {
    Evaluator evaluator = Evaluator::ClosedForm;
    double rel_tol = 1e-10;
};

double emission_rate(const EmissionSchedule& schedule, double t);

/// Instantaneous-release Green's function of the unbounded line,
/// exp(-x^2 / 4Dt) / (A sqrt(4 pi D t)), evaluated at params.distance.
double impulse_kernel_1d(const ChannelParams& params, double elapsed);

/// Concentration per unit emission rate after a constant source has been on
/// for `elapsed` seconds (time integral of impulse_kernel_1d), closed form:
///   [sqrt(t / pi D) exp(-x^2 / 4Dt) - (x / 2D) erfc(x / 2 sqrt(Dt))] / A
double step_kernel_1d(const ChannelParams& params, double elapsed);

/// Same quantity as step_kernel_1d by adaptive quadrature of the impulse
/// kernel over (0, elapsed]. The substitution tau = u^2 removes the 1/sqrt(tau)
/// endpoint singularity. Throws NumericalError if it fails to converge.
double quadrature_step_kernel_1d(const ChannelParams& params, double elapsed, double rel_tol);

/// Continuous point source in unbounded 3D space, per unit rate:
/// erfc(r / 2 sqrt(Dt)) / (4 pi D r). Requires distance > 0.
double step_kernel_3d(const ChannelParams& params, double elapsed);

/// Time integral of the 3D impulse response, by quadrature.
double quadrature_step_kernel_3d(const ChannelParams& params, double elapsed, double rel_tol);

double step_kernel(Dimensionality dim, const ChannelParams& params, double elapsed,
                   const KernelOptions& options = {});

// Superposition of switched step responses, one on/off pair per '1' bit.
// `times` must be strictly increasing and nonnegative.
ConcentrationTrace concentration_1d(const ChannelParams& params, const EmissionSchedule& schedule,
                                    std::span<const double> times,
                                    const KernelOptions& options = {});
ConcentrationTrace concentration_3d(const ChannelParams& params, const EmissionSchedule& schedule,
                                    std::span<const double> times,
                                    const KernelOptions& options = {});
ConcentrationTrace concentration(Dimensionality dim, const ChannelParams& params,
                                 const EmissionSchedule& schedule, std::span<const double> times,
                                 const KernelOptions& options = {});

/// 0, step, 2 step, ... up to and including horizon (within rounding).
std::vector<double> uniform_time_grid(double time_step, double horizon);

}  // namespace mcvd
