#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "mcvd/quadrature.hpp"

using mcvd::integrate;
using mcvd::NumericalError;
using mcvd::QuadratureOptions;

TEST_CASE("GK15 integrates low-degree polynomials on one interval") {
    const auto r = integrate([](double x) { return 3 * x * x * x - x + 2; }, -1.0, 2.0);
    CHECK(r.value == doctest::Approx(15.75).epsilon(1e-14));
    CHECK(r.intervals == 1);
}

TEST_CASE("reversed bounds flip the sign, empty interval is zero") {
    auto f = [](double x) { return std::exp(x); };
    const double forward = integrate(f, 0.0, 1.0).value;
    CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-forward).epsilon(1e-15));
    CHECK(integrate(f, 0.5, 0.5).value == 0.0);
    CHECK(forward == doctest::Approx(std::numbers::e - 1).epsilon(1e-14));
}

TEST_CASE("integrable endpoint singularity converges without evaluating the endpoint") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-9;
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.intervals > 1);
}

TEST_CASE("sharply peaked integrand meets relative tolerance") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    const double width = 0.02;
    auto f = [=](double x) { return std::exp(-(x - 0.3) * (x - 0.3) / (width * width)); };
    const double exact = width * std::sqrt(std::numbers::pi);
    CHECK(integrate(f, -1.0, 2.0, opts).value == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("tolerance below rounding noise cannot be met") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-300;
    CHECK_THROWS_AS(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, opts),
                    NumericalError);
}

TEST_CASE("non-convergence is reported") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-14;
    opts.max_intervals = 3;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opts),
                    NumericalError);
}

TEST_CASE("non-finite integrand values are rejected") {
    CHECK_THROWS_AS(integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                              0.0, 1.0),
                    NumericalError);
}

TEST_CASE("invalid tolerance") {
    QuadratureOptions opts;
    opts.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, opts), std::invalid_argument);
}
