// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcvd/channel.hpp"
#include "mcvd/csv.hpp"
#include "mcvd/experiments.hpp"
#include "mcvd/modem.hpp"
#include "mcvd/quadrature.hpp"

using namespace mcvd;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    std::string name;
    double time_limit_s;  // <= 0: untimed
    std::function<Outcome()> check;
};

ChannelParams air(double x) {
    ChannelParams p;
    p.diffusion_coefficient = 0.43;
    p.cross_section_area = 1.0;
    p.distance = x;
    return p;
}

std::string fmt(double v) { return format_number(v); }

std::string decode(const DetectionReport& r) {
    std::string s;
    for (const auto d : r.decisions) {
        s.push_back(d ? '1' : '0');
    }
    return s;
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> xs(0.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = xs(rng);
        const double t = 150.0 * (1.0 - unit(rng));  // (0, 150]
        const auto p = air(x);
        const double q = quadrature_step_kernel_1d(p, t, 1e-10);
        const double c = step_kernel_1d(p, t);
        worst = std::max(worst, std::abs(c - q) / std::max(q, 1e-30));
    }
    return {worst <= 1e-8, "max rel diff " + fmt(worst) + " (limit 1e-8, 100 points)"};
}

Outcome conservation() {
    double worst = 0.0;
    for (const double t : {0.1, 1.0, 10.0, 100.0}) {
        const auto p = air(0.0);
        const double half_width = 20.0 * std::sqrt(p.diffusion_coefficient * t);
        auto density = [&](double x) {
            auto q = p;
            q.distance = std::abs(x);
            return p.cross_section_area * impulse_kernel_1d(q, t);
        };
        QuadratureOptions opts;
        opts.rel_tol = 1e-12;
        const double mass = integrate(density, -half_width, half_width, opts).value;
        worst = std::max(worst, std::abs(mass - 1.0));
    }
    return {worst <= 1e-6, "max |mass - 1| " + fmt(worst) + " (limit 1e-6)"};
}

Outcome distance_claim() {
    const auto r = run_distance_sweep(default_sweep(SweepKind::Distance));
    const auto& s = r.summary;
    const bool signal_down = s[0].signal > s[1].signal && s[1].signal > s[2].signal;
    const bool ratio_up =
        s[0].signal_to_isi < s[1].signal_to_isi && s[1].signal_to_isi < s[2].signal_to_isi;
    std::ostringstream d;
    d << "Z(15s) = " << fmt(s[0].signal) << ", " << fmt(s[1].signal) << ", " << fmt(s[2].signal)
      << "; signal_to_isi = " << fmt(s[0].signal_to_isi) << ", " << fmt(s[1].signal_to_isi)
      << ", " << fmt(s[2].signal_to_isi) << "; absolute Z(45s) = " << fmt(s[0].interference)
      << ", " << fmt(s[1].interference) << ", " << fmt(s[2].interference) << " (reported only)";
    return {signal_down && ratio_up, d.str()};
}

Outcome frequency_claim() {
    const auto r = run_frequency_sweep(default_sweep(SweepKind::Frequency));
    const auto& s = r.summary;  // f ascending
    const bool signal_down = s[0].signal > s[1].signal && s[1].signal > s[2].signal;
    const bool isi_down =
        s[0].interference > s[1].interference && s[1].interference > s[2].interference;
    std::ostringstream d;
    d << "f = 1/30, 1/20, 1/10: signal " << fmt(s[0].signal) << ", " << fmt(s[1].signal) << ", "
      << fmt(s[2].signal) << "; interference " << fmt(s[0].interference) << ", "
      << fmt(s[1].interference) << ", " << fmt(s[2].interference);
    return {signal_down && isi_down, d.str()};
}

Outcome compare_dims_claim() {
    const auto spec = default_sweep(SweepKind::CompareDims);
    const auto r = run_compare_dims(spec);
    std::size_t n1 = 0;
    std::size_t n3 = 0;
    for (const auto& row : r.rows) {
        (row.dimensionality == Dimensionality::OneD ? n1 : n3) += 1;
    }
    const bool both = n1 > 0 && n1 == n3 && spec.schedule.bit_period == 20.0 &&
                      spec.sweep_values == std::vector<double>{0.5};

    // Continuous-source 3D response at the run's channel, far past transients.
    auto channel = spec.channel;
    channel.distance = 0.5;
    const double late = spec.schedule.rate * step_kernel_3d(channel, 1e6);
    const double steady =
        spec.schedule.rate / (4.0 * std::numbers::pi * channel.diffusion_coefficient * 0.5);
    const double rel = std::abs(late - steady) / steady;

    const double u1 = r.summary[0].signal;
    const double u3 = r.summary[1].signal;
    std::ostringstream d;
    d << "rows 1d=" << n1 << " 3d=" << n3 << "; 3D(1e6 s) = " << fmt(late) << " vs "
      << fmt(steady) << " rel " << fmt(rel) << " (limit 1e-3); recorded at t=10 s, A=1: 1D "
      << fmt(u1) << ", 3D " << fmt(u3) << ", 3D-1D " << fmt(u3 - u1)
      << (u3 > u1 ? " (3D above)" : " (1D above)");
    return {both && rel <= 1e-3, d.str()};
}

Outcome superposition() {
    const auto grid = uniform_time_grid(0.1, 180.0);
    const auto p = air(1.0);
    auto sched = [](const char* bits) {
        EmissionSchedule s;
        s.bits = BitSequence::parse(bits);
        s.bit_period = 30.0;
        s.rate = 10000.0;
        return s;
    };
    const auto full = concentration_1d(p, sched("10110"), grid);
    const auto a = concentration_1d(p, sched("10000"), grid);
    const auto b = concentration_1d(p, sched("00100"), grid);
    const auto c = concentration_1d(p, sched("00010"), grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double sum = a.values[i] + b.values[i] + c.values[i];
        worst = std::max(worst, std::abs(full.values[i] - sum) / std::max(full.values[i], 1e-30));
    }
    return {worst <= 1e-10 && grid.size() == 1801,
            "max rel diff " + fmt(worst) + " over " + std::to_string(grid.size()) +
                " grid points (limit 1e-10)"};
}

Outcome detector_contract() {
    const auto provider = make_trace_provider(Dimensionality::OneD);
    EmissionSchedule msg;  // "10", T_b = 30 s, 10^4 molecules/s
    const auto samples = mid_bit_samples(provider, air(1.0), msg);
    const double mid = midpoint_threshold(samples);
    const auto midpoint = detect(provider, air(1.0), msg, {mid, 1});
    const auto zero = detect(provider, air(1.0), msg, {0.0, 1});

    EmissionSchedule silent = msg;
    silent.bits = BitSequence::parse("00000");
    bool zeros_ok = true;
    for (const double threshold : {1e-12, 1.0, 1e6}) {
        zeros_ok = zeros_ok && decode(detect(provider, air(1.0), silent, {threshold, 1})) == "00000";
    }

    const bool mid_ok = decode(midpoint) == "10";
    const bool zero_ok = decode(zero) == "11";
    std::ostringstream d;
    d << "midpoint -> " << decode(midpoint) << " (want 10; Z = " << fmt(samples[0]) << ", "
      << fmt(samples[1]) << ", threshold " << fmt(mid) << "); threshold 0 -> " << decode(zero)
      << " (want 11); all-zero -> " << (zeros_ok ? "00000" : "nonzero");
    return {mid_ok && zero_ok && zeros_ok, d.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism() {
    const std::filesystem::path cli = MCVD_CLI_PATH;
    const auto dir = std::filesystem::temp_directory_path() / "mcvd_acceptance";
    std::filesystem::create_directories(dir);
    std::ostringstream d;
    bool ok = true;
    for (const char* command : {"sweep-distance", "sweep-frequency", "compare-dims"}) {
        std::string files[2];
        for (int run = 0; run < 2; ++run) {
            const auto out = dir / (std::string(command) + "_" + std::to_string(run) + ".csv");
            std::filesystem::remove(out);
            const std::string cmd = "\"" + cli.string() + "\" " + command + " --output \"" +
                                    out.string() + "\" > /dev/null";
            const int status = std::system(cmd.c_str());
            ok = ok && status == 0;
            files[run] = slurp(out);
        }
        const bool same = !files[0].empty() && files[0] == files[1];
        ok = ok && same;
        d << command << (same ? " identical" : " DIFFERENT") << " (" << files[0].size()
          << " bytes); ";
    }
    return {ok, d.str()};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"oracle equivalence (closed form vs quadrature)", 5.0, oracle_equivalence},
        {"impulse kernel conservation", 1.0, conservation},
        {"distance sweep: signal down, signal_to_isi up", 1.0, distance_claim},
        {"frequency sweep: signal and interference down", 1.0, frequency_claim},
        {"1D vs 3D comparison, 3D steady state", 1.0, compare_dims_claim},
        {"superposition of '10110'", 0.0, superposition},
        {"detector contract", 0.0, detector_contract},
        {"CLI determinism", 0.0, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = outcome.pass;
        std::ostringstream t;
        t << std::fixed << std::setprecision(4) << elapsed << " s";
        std::string timing = t.str();
        if (c.time_limit_s > 0.0) {
            timing += " (limit " + fmt(c.time_limit_s) + " s)";
            if (elapsed >= c.time_limit_s) {
                pass = false;
                timing += " TOO SLOW";
            }
        }
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << c.name << ": " << outcome.detail << " ["
                  << timing << "]\n";
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
