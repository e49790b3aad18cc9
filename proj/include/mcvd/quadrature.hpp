#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace mcvd {

/// Raised when a numerical routine cannot meet its requested accuracy.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). The integrand is
/// never evaluated at the endpoints, so integrable endpoint singularities are
/// tolerated, although a smoothing substitution converges much faster.
///
/// Throws NumericalError if max_intervals is reached first, or if the
/// integrand produces a non-finite value.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace mcvd
