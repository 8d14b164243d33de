#pragma once

#include "gapbound/bound.hpp"
#include "gapbound/quadrature.hpp"

namespace gapbound {

// Two lower-bound flavors for h(c):
//   v1: c - 2*sqrt((c/pi) * integral over [0,1] of |sin(pi c v)|/v dv)
//   v2: c - 2*sqrt((c/pi) * integral over [0, pi c] of sinc^2)
enum class LargeGapVariant { v1, v2 };

double h_lower(double c, LargeGapVariant variant, const QuadratureSpec& spec = {});

// Bracket containing the crossing h_lower = 1 with comfortable margin.
Interval default_threshold_bracket(LargeGapVariant variant);

// Bisection root of h_lower(c) = 1 over the bracket, to width <= tol.
// Requires h_lower < 1 at the low end and > 1 at the high end.
double find_large_gap_threshold(LargeGapVariant variant, Interval bracket,
                                double tol = 1e-8, const QuadratureSpec& spec = {});

inline double find_large_gap_threshold(LargeGapVariant variant, double tol = 1e-8,
                                       const QuadratureSpec& spec = {}) {
    return find_large_gap_threshold(variant, default_threshold_bracket(variant), tol, spec);
}

}  // namespace gapbound
