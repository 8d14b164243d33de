#pragma once

#include "gapbound/quadrature.hpp"

namespace gapbound {

// sin(x)/x extended continuously by sinc(0) = 1. Even; range [-0.2173, 1];
// strictly decreasing on [0, pi].
double sinc(double x);

// Si(x) = integral of sinc over [0, x], for x >= 0. Power series on [0, 2],
// series value at 2 plus adaptive quadrature beyond.
double sine_integral(double x, const QuadratureSpec& spec = {});

// Integral over [0, 1] of |sin(pi c v)| / v, for c > 0. The integrand has
// kinks at v = k/c; every kink is forced to be a subdivision breakpoint.
// Equals Si(pi c) for c <= 1 (the integrand is nonnegative there).
double abs_sinc_integral(double c, const QuadratureSpec& spec = {});

// Integral of sinc^2 over [0, x], for x >= 0. Monotone in x, bounded by pi/2.
double sinc_squared_integral(double x, const QuadratureSpec& spec = {});

}  // namespace gapbound
