#include "mcvd/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mcvd/quadrature.hpp"

namespace mcvd {
namespace {

void require(bool ok, const char* message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

void require_elapsed(double elapsed) {
    require(elapsed >= 0.0 && std::isfinite(elapsed), "elapsed time must be finite and >= 0");
}

void require_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        require(times[i] >= 0.0 && std::isfinite(times[i]), "trace times must be finite and >= 0");
        if (i > 0) {
            require(times[i] > times[i - 1], "trace times must be strictly increasing");
        }
    }
}

template <typename Kernel>
ConcentrationTrace superpose(const EmissionSchedule& schedule, std::span<const double> times,
                             Dimensionality dim, Kernel&& kernel) {
    schedule.validate();
    require_times(times);

    ConcentrationTrace trace;
    trace.dimensionality = dim;
    trace.times.assign(times.begin(), times.end());
    trace.values.reserve(times.size());

    const double period = schedule.bit_period;
    for (const double t : times) {
        double sum = 0.0;
        for (std::size_t k = 0; k < schedule.bits.size(); ++k) {
            if (!schedule.bits[k]) {
                continue;
            }
            const double on = t - static_cast<double>(k) * period;
            if (on <= 0.0) {
                break;
            }
            const double off = t - static_cast<double>(k + 1) * period;
            sum += kernel(on) - (off > 0.0 ? kernel(off) : 0.0);
        }
        // Each on/off pair is a nonnegative increment; clamp rounding residue.
        trace.values.push_back(std::max(0.0, schedule.rate * sum));
    }
    return trace;
}

}  // namespace

void ChannelParams::validate() const {
    require(diffusion_coefficient > 0.0 && std::isfinite(diffusion_coefficient),
            "diffusion coefficient must be > 0");
    require(cross_section_area > 0.0 && std::isfinite(cross_section_area),
            "cross-section area must be > 0");
    require(distance >= 0.0 && std::isfinite(distance), "distance must be >= 0");
}

BitSequence::BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (const auto b : bits_) {
        require(b == 0 || b == 1, "bits must be 0 or 1");
    }
}

BitSequence BitSequence::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (const char c : text) {
        if (c != '0' && c != '1') {
            std::ostringstream msg;
            msg << "bit sequence may contain only '0' and '1', got '" << text << "'";
            throw std::invalid_argument(msg.str());
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return BitSequence(std::move(bits));
}

std::string BitSequence::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (const auto b : bits_) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

BitSequence BitSequence::masked(std::size_t first, std::size_t last) const {
    std::vector<std::uint8_t> out(bits_.size(), 0);
    for (std::size_t i = first; i < last && i < bits_.size(); ++i) {
        out[i] = bits_[i];
    }
    return BitSequence(std::move(out));
}

void EmissionSchedule::validate() const {
    require(!bits.empty(), "bit sequence must be nonempty");
    require(bit_period > 0.0 && std::isfinite(bit_period), "bit period must be > 0");
    require(rate >= 0.0 && std::isfinite(rate), "emission rate must be >= 0");
}

std::string_view to_string(Dimensionality d) {
    return d == Dimensionality::OneD ? "1d" : "3d";
}

double emission_rate(const EmissionSchedule& schedule, double t) {
    require(t >= 0.0, "emission time must be >= 0");
    const double slot = std::floor(t / schedule.bit_period);
    if (slot >= static_cast<double>(schedule.bits.size())) {
        return 0.0;
    }
    return schedule.bits[static_cast<std::size_t>(slot)] ? schedule.rate : 0.0;
}

double impulse_kernel_1d(const ChannelParams& params, double elapsed) {
    params.validate();
    require_elapsed(elapsed);
    if (elapsed == 0.0) {
        return 0.0;
    }
    const double d = params.diffusion_coefficient;
    const double x = params.distance;
    return std::exp(-x * x / (4.0 * d * elapsed)) /
           (params.cross_section_area * std::sqrt(4.0 * std::numbers::pi * d * elapsed));
}

double step_kernel_1d(const ChannelParams& params, double elapsed) {
    params.validate();
    require_elapsed(elapsed);
    if (elapsed == 0.0) {
        return 0.0;
    }
    const double d = params.diffusion_coefficient;
    const double x = params.distance;
    const double z = x / (2.0 * std::sqrt(d * elapsed));
    const double value = std::sqrt(elapsed / (std::numbers::pi * d)) * std::exp(-z * z) -
                         x / (2.0 * d) * std::erfc(z);
    return std::max(0.0, value) / params.cross_section_area;
}

double quadrature_step_kernel_1d(const ChannelParams& params, double elapsed, double rel_tol) {
    params.validate();
    require_elapsed(elapsed);
    require(rel_tol > 0.0 && rel_tol < 1.0, "rel_tol must lie in (0, 1)");
    if (elapsed == 0.0) {
        return 0.0;
    }
    const double d = params.diffusion_coefficient;
    const double x2 = params.distance * params.distance;
    const double scale = 2.0 / (params.cross_section_area * std::sqrt(4.0 * std::numbers::pi * d));
    // With tau = u^2 the integrand g(tau) dtau becomes 2u g(u^2) du, and the
    // 1/u from g cancels against the Jacobian.
    auto integrand = [=](double u) { return scale * std::exp(-x2 / (4.0 * d * u * u)); };
    QuadratureOptions options;
    options.rel_tol = rel_tol;
    return integrate(integrand, 0.0, std::sqrt(elapsed), options).value;
}

double step_kernel_3d(const ChannelParams& params, double elapsed) {
    params.validate();
    require_elapsed(elapsed);
    require(params.distance > 0.0, "3D kernel is singular at r = 0; distance must be > 0");
    if (elapsed == 0.0) {
        return 0.0;
    }
    const double d = params.diffusion_coefficient;
    const double r = params.distance;
    return std::erfc(r / (2.0 * std::sqrt(d * elapsed))) / (4.0 * std::numbers::pi * d * r);
}

double quadrature_step_kernel_3d(const ChannelParams& params, double elapsed, double rel_tol) {
    params.validate();
    require_elapsed(elapsed);
    require(params.distance > 0.0, "3D kernel is singular at r = 0; distance must be > 0");
    require(rel_tol > 0.0 && rel_tol < 1.0, "rel_tol must lie in (0, 1)");
    if (elapsed == 0.0) {
        return 0.0;
    }
    const double d = params.diffusion_coefficient;
    const double r2 = params.distance * params.distance;
    const double scale = 2.0 / std::pow(4.0 * std::numbers::pi * d, 1.5);
    auto integrand = [=](double u) {
        const double u2 = u * u;
        return scale * std::exp(-r2 / (4.0 * d * u2)) / u2;
    };
    QuadratureOptions options;
    options.rel_tol = rel_tol;
    return integrate(integrand, 0.0, std::sqrt(elapsed), options).value;
}

double step_kernel(Dimensionality dim, const ChannelParams& params, double elapsed,
                   const KernelOptions& options) {
    const bool quad = options.evaluator == Evaluator::Quadrature;
    if (dim == Dimensionality::OneD) {
        return quad ? quadrature_step_kernel_1d(params, elapsed, options.rel_tol)
                    : step_kernel_1d(params, elapsed);
    }
    return quad ? quadrature_step_kernel_3d(params, elapsed, options.rel_tol)
                : step_kernel_3d(params, elapsed);
}

ConcentrationTrace concentration(Dimensionality dim, const ChannelParams& params,
                                 const EmissionSchedule& schedule, std::span<const double> times,
                                 const KernelOptions& options) {
    params.validate();
    if (dim == Dimensionality::ThreeD) {
        require(params.distance > 0.0, "3D kernel is singular at r = 0; distance must be > 0");
    }
    return superpose(schedule, times, dim,
                     [&](double elapsed) { return step_kernel(dim, params, elapsed, options); });
}

ConcentrationTrace concentration_1d(const ChannelParams& params, const EmissionSchedule& schedule,
                                    std::span<const double> times, const KernelOptions& options) {
    return concentration(Dimensionality::OneD, params, schedule, times, options);
}

ConcentrationTrace concentration_3d(const ChannelParams& params, const EmissionSchedule& schedule,
                                    std::span<const double> times, const KernelOptions& options) {
    return concentration(Dimensionality::ThreeD, params, schedule, times, options);
}

std::vector<double> uniform_time_grid(double time_step, double horizon) {
    require(time_step > 0.0 && std::isfinite(time_step), "time step must be > 0");
    require(horizon >= 0.0 && std::isfinite(horizon), "horizon must be >= 0");
    const auto steps = static_cast<std::size_t>(std::floor(horizon / time_step + 1e-9));
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        grid[i] = static_cast<double>(i) * time_step;
    }
    return grid;
}

}  // namespace mcvd
