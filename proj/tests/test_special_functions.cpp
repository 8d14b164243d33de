#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "gapbound/errors.hpp"
#include "gapbound/quadrature.hpp"
#include "gapbound/special_functions.hpp"
#include "oracles.hpp"

using gapbound::abs_sinc_integral;
using gapbound::ConvergenceError;
using gapbound::DomainError;
using gapbound::integrate;
using gapbound::QuadratureSpec;
using gapbound::sinc;
using gapbound::sinc_squared_integral;
using gapbound::sine_integral;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("quadrature rule weights integrate the constant function exactly") {
    double kron = gapbound::detail::gk15_kronrod_weights[7];
    for (int i = 0; i < 7; ++i) kron += 2.0 * gapbound::detail::gk15_kronrod_weights[i];
    CHECK(std::fabs(kron - 2.0) <= 1e-15);

    double gauss = gapbound::detail::gk15_gauss_weights[3];
    for (int i = 0; i < 3; ++i) gauss += 2.0 * gapbound::detail::gk15_gauss_weights[i];
    CHECK(std::fabs(gauss - 2.0) <= 1e-15);
}

TEST_CASE("quadrature is exact on a smooth polynomial and an oscillatory sine") {
    const double poly = integrate([](double t) { return t * t * t * t * t * t; }, 0.0, 1.0);
    CHECK(std::fabs(poly - 1.0 / 7.0) <= 1e-15);

    const double wave = integrate([](double t) { return std::sin(50.0 * t); }, 0.0, 10.0);
    const double exact = (1.0 - std::cos(500.0)) / 50.0;
    CHECK(std::fabs(wave - exact) <= 1e-12);
}

TEST_CASE("quadrature respects orientation and degenerate intervals") {
    auto f = [](double t) { return std::exp(-t); };
    const double fwd = integrate(f, 0.0, 2.0);
    const double bwd = integrate(f, 2.0, 0.0);
    CHECK(fwd == -bwd);
    CHECK(integrate(f, 1.5, 1.5) == 0.0);
}

TEST_CASE("quadrature validates its inputs") {
    auto f = [](double t) { return t; };
    CHECK_THROWS_AS(integrate(f, 0.0, std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS((integrate(f, 0.0, 1.0, QuadratureSpec{0.0, 0.0, 60})), DomainError);
    CHECK_THROWS_AS((integrate(f, 0.0, 1.0, QuadratureSpec{1e-12, -1.0, 60})), DomainError);
    CHECK_THROWS_AS((integrate(f, 0.0, 1.0, QuadratureSpec{1e-12, 0.0, 0})), DomainError);
}

TEST_CASE("exhausted subdivision reports failure but carries its best estimate") {
    auto f = [](double t) { return std::sin(50.0 * t); };
    const QuadratureSpec starved{1e-15, 0.0, 1};
    bool threw = false;
    try {
        integrate(f, 0.0, 10.0, starved);
    } catch (const ConvergenceError& e) {
        threw = true;
        CHECK(std::isfinite(e.estimate));
    }
    CHECK(threw);
}

TEST_CASE("sinc: exact at zero, series and direct branches agree at the seam") {
    CHECK(sinc(0.0) == 1.0);
    // 0.1 is the branch switch point; on each side the value must match the
    // direct formula at the same argument to rounding (the series truncation
    // there is below 1e-17).
    CHECK(std::fabs(sinc(0.09999999) - std::sin(0.09999999) / 0.09999999) <= 1e-14);
    CHECK(std::fabs(sinc(0.10000001) - std::sin(0.10000001) / 0.10000001) <= 1e-14);
    const double direct = std::sin(0.05) / 0.05;
    CHECK(std::fabs(sinc(0.05) - direct) <= 1e-14);
}

TEST_CASE("sinc: frozen reference values") {
    CHECK(std::fabs(sinc(0.760683) - 0.90631228432903769439) <= 1e-15);
    CHECK(std::fabs(sinc(4.4934094579090641753) - (-0.21723362821122165741)) <= 1e-15);
    CHECK(std::fabs(sinc(1.1005813893701378069) - 0.81) <= 1e-15);
    CHECK(std::fabs(sinc(kPi)) <= 1e-16);
}

TEST_CASE("sinc: even symmetry") {
    for (double x : {0.01, 0.05, 0.09}) {
        CHECK(sinc(-x) == sinc(x));  // series branch is a function of x^2
    }
    for (double x : {0.5, 1.0, 2.0, 4.0, 10.0}) {
        CHECK(std::fabs(sinc(-x) - sinc(x)) <= 1e-16);
    }
}

TEST_CASE("sinc: strictly decreasing on [0, pi]") {
    const int n = 10001;
    double prev = sinc(0.0);
    for (int i = 1; i < n; ++i) {
        const double x = kPi * i / (n - 1);
        const double v = sinc(x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("sinc: bounded between its global minimum and 1") {
    for (int i = 0; i <= 5000; ++i) {
        const double x = 50.0 * i / 5000.0;
        const double v = sinc(x);
        CHECK(v <= 1.0);
        CHECK(v >= -0.21723362821122165741 - 1e-15);
    }
}

TEST_CASE("sinc: rejects non-finite input") {
    CHECK_THROWS_AS(sinc(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(sinc(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("sine integral: frozen reference values") {
    CHECK(sine_integral(0.0) == 0.0);
    // series branch (x <= 2)
    CHECK(std::fabs(sine_integral(1.0) - 0.94608307036718301494) <= 1e-15);
    CHECK(std::fabs(sine_integral(2.0) - 1.6054129768026948486) <= 1e-15);
    CHECK(std::fabs(sine_integral(kPi / 2) - 1.3707621681544884801) <= 1e-15);
    CHECK(std::fabs(sine_integral(0.760683) - 0.7366499737299227377) <= 1e-15);
    CHECK(std::fabs(sine_integral(0.76071763438542028) - 0.73668136315542896127) <= 1e-15);
    // quadrature branch (x > 2)
    CHECK(std::fabs(sine_integral(kPi) - 1.8519370519824661704) <= 1e-12);
    CHECK(std::fabs(sine_integral(10.0) - 1.6583475942188740493) <= 1e-12);
    CHECK(std::fabs(sine_integral(4 * kPi) - 1.4921612255844600555) <= 1e-12);
}

TEST_CASE("sine integral: agrees with an independent fixed-step oracle") {
    for (int i = 0; i <= 20; ++i) {
        const double x = 4.0 * kPi * i / 20.0;
        CHECK(std::fabs(sine_integral(x) - testoracle::si(x)) <= 1e-10);
    }
}

TEST_CASE("sine integral: increasing where the integrand is positive") {
    double prev = sine_integral(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double x = kPi * i / 100.0;
        const double v = sine_integral(x);
        CHECK(v > prev);
        prev = v;
    }
    for (int i = 0; i <= 100; ++i) {
        CHECK(sine_integral(30.0 * i / 100.0) >= 0.0);
    }
}

TEST_CASE("sine integral derivative matches the kernel by central differences") {
    const double h = 1e-6;
    for (int i = 1; i <= 16; ++i) {
        const double x = 0.25 * i;
        const double diff = (sine_integral(x + h) - sine_integral(x - h)) / (2.0 * h);
        CHECK(std::fabs(diff - sinc(x)) <= 1e-6);
    }
}

TEST_CASE("sine integral: rejects negative and non-finite input") {
    CHECK_THROWS_AS(sine_integral(-0.5), DomainError);
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("sine integral: bit-identical on repeated calls") {
    CHECK(sine_integral(7.3) == sine_integral(7.3));
    CHECK(sine_integral(1.7) == sine_integral(1.7));
}

TEST_CASE("rectified kernel integral: reduces to the sine integral for c <= 1") {
    for (double c : {0.25, 0.5042, 0.9, 1.0}) {
        CHECK(std::fabs(abs_sinc_integral(c) - sine_integral(kPi * c)) <= 1e-11);
    }
}

TEST_CASE("rectified kernel integral: frozen values past the first kink") {
    CHECK(std::fabs(abs_sinc_integral(2.0) - 2.2857225278323038905) <= 1e-11);
    CHECK(std::fabs(abs_sinc_integral(5.5602) - 2.937440710937910079) <= 1e-11);
}

TEST_CASE("rectified kernel integral: positive, increasing in c, rejects c <= 0") {
    double prev = 0.0;
    for (int i = 1; i <= 60; ++i) {
        const double c = 7.0 * i / 60.0;
        const double v = abs_sinc_integral(c);
        CHECK(v > prev);  // equals int_0^{pi c} |sin u|/u du, so increasing in c
        prev = v;
    }
    CHECK_THROWS_AS(abs_sinc_integral(0.0), DomainError);
    CHECK_THROWS_AS(abs_sinc_integral(-1.0), DomainError);
}

TEST_CASE("squared kernel integral: frozen values") {
    CHECK(sinc_squared_integral(0.0) == 0.0);
    CHECK(std::fabs(sinc_squared_integral(kPi / 2) - 1.2153172796148848273) <= 1e-12);
    CHECK(std::fabs(sinc_squared_integral(kPi * 3.6747) - 1.5290645061762307385) <= 1e-12);
    CHECK(std::fabs(sinc_squared_integral(50.0) - 1.5608486556119331327) <= 1e-11);
    CHECK(std::fabs(sinc_squared_integral(1e4) - 1.570746325340138036) <= 1e-10);
}

TEST_CASE("squared kernel integral: increasing and capped by pi/2") {
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double x = 20.0 * i / 40.0;
        const double v = sinc_squared_integral(x);
        CHECK(v > prev);
        CHECK(v < kPi / 2);
        prev = v;
    }
    CHECK_THROWS_AS(sinc_squared_integral(-0.1), DomainError);
}

TEST_CASE("integral helpers are bit-identical on repeated calls") {
    CHECK(abs_sinc_integral(5.5602) == abs_sinc_integral(5.5602));
    CHECK(sinc_squared_integral(11.7) == sinc_squared_integral(11.7));
}
