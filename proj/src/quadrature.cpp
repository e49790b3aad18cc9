#include "mcvd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace mcvd {
namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg << "integrand is not finite at " << x;
        throw NumericalError(msg.str());
    }
    return y;
}

Segment gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double f_center = checked(f, center);
    double kronrod = f_center * kKronrodWeights[7];
    double gauss = f_center * kGaussWeights[3];
    double magnitude = std::abs(f_center) * kKronrodWeights[7];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double left = checked(f, center - dx);
        const double right = checked(f, center + dx);
        const double pair = left + right;
        kronrod += kKronrodWeights[j] * pair;
        magnitude += kKronrodWeights[j] * (std::abs(left) + std::abs(right));
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    magnitude *= std::abs(half);
    // No estimate is trusted below the rounding noise of the rule itself.
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * magnitude;
    return {lo, hi, kronrod, std::max(std::abs(kronrod - gauss), roundoff)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
    if (!(options.rel_tol > 0.0) || !(options.abs_tol >= 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (a == b) {
        return {};
    }
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);

    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod(f, lo, hi);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);

    auto converged = [&] {
        return total_error <= std::max(options.abs_tol, options.rel_tol * std::abs(total));
    };

    while (!converged()) {
        if (heap.size() >= options.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge within " << options.max_intervals
                << " intervals (estimate " << total << ", error " << total_error << ")";
            throw NumericalError(msg.str());
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw NumericalError("adaptive quadrature exhausted floating-point resolution");
        }
        const Segment left = gauss_kronrod(f, worst.lo, mid);
        const Segment right = gauss_kronrod(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the segments so the running updates do not accumulate drift.
    double value = 0.0;
    double error = 0.0;
    const std::size_t count = heap.size();
    std::vector<Segment> segments;
    segments.reserve(count);
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& l, const Segment& r) { return l.lo < r.lo; });
    for (const auto& s : segments) {
        value += s.value;
        error += s.error;
    }
    return {sign * value, error, count};
}

}  // namespace mcvd
