#include "gapbound/large_gaps.hpp"

#include <cmath>

#include "gapbound/errors.hpp"
#include "gapbound/special_functions.hpp"

namespace gapbound {

double h_lower(double c, LargeGapVariant variant, const QuadratureSpec& spec) {
    if (!std::isfinite(c) || !(c > 0.0)) {
        throw DomainError("h_lower: c must be finite and > 0");
    }
    const double integral = (variant == LargeGapVariant::v1)
                                ? abs_sinc_integral(c, spec)
                                : sinc_squared_integral(M_PI * c, spec);
    // Both integrals are strictly positive for c > 0: the radicand is safe.
    return c - 2.0 * std::sqrt((c / M_PI) * integral);
}

Interval default_threshold_bracket(LargeGapVariant variant) {
    return (variant == LargeGapVariant::v1) ? Interval{4.0, 7.0} : Interval{3.0, 5.0};
}

double find_large_gap_threshold(LargeGapVariant variant, Interval bracket, double tol,
                                const QuadratureSpec& spec) {
    if (!std::isfinite(bracket.lo) || !std::isfinite(bracket.hi) ||
        !(bracket.lo > 0.0) || !(bracket.lo < bracket.hi)) {
        throw DomainError("find_large_gap_threshold: bracket must be a nonempty interval with lo > 0");
    }
    if (!(tol > 0.0)) throw DomainError("find_large_gap_threshold: tol must be > 0");

    double lo = bracket.lo, hi = bracket.hi;
    if (!(h_lower(lo, variant, spec) < 1.0) || !(h_lower(hi, variant, spec) > 1.0)) {
        throw BracketError("find_large_gap_threshold: h_lower - 1 does not change sign over the bracket");
    }
    int iterations = 0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (h_lower(mid, variant, spec) >= 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (++iterations > 200) {
            throw ConvergenceError("find_large_gap_threshold: bisection budget exhausted",
                                   0.5 * (lo + hi));
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace gapbound
