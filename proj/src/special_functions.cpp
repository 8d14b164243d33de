#include "gapbound/special_functions.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gapbound/errors.hpp"

namespace gapbound {

namespace {

// Nested even polynomial for sin(x)/x; |x| < 0.1 keeps the truncation well
// below double roundoff (next omitted term is x^10/11! < 1e-17).
double sinc_series(double x) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
}

// 12-term Maclaurin partial sum of Si; adequate to full double precision for
// x <= 2 (term 12 at x = 2 is ~1.4e-17).
double sine_integral_series(double x) {
    double power = x;   // x^(2n+1) / (2n+1)!  running factor
    double sum = x;     // n = 0 term
    for (int n = 1; n < 12; ++n) {
        power *= -(x * x) / (2.0 * n * (2.0 * n + 1.0));
        sum += power / (2.0 * n + 1.0);
    }
    return sum;
}

const double si_at_two = sine_integral_series(2.0);

}  // namespace

double sinc(double x) {
    if (!std::isfinite(x)) throw DomainError("sinc: argument must be finite");
    if (std::fabs(x) < 0.1) return sinc_series(x);
    return std::sin(x) / x;
}

double sine_integral(double x, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("sine_integral: argument must be finite and >= 0");
    }
    if (x <= 2.0) return sine_integral_series(x);
    try {
        return si_at_two + integrate([](double t) { return sinc(t); }, 2.0, x, spec);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string("sine_integral: ") + e.what(),
                               si_at_two + e.estimate);
    }
}

double abs_sinc_integral(double c, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(c) || !(c > 0.0)) {
        throw DomainError("abs_sinc_integral: argument must be finite and > 0");
    }
    // |sin(pi c v)| / v = pi c |sinc(pi c v)|, removing the v = 0 singularity.
    // Zeros of sin(pi c v) in (0, 1) sit at v = k/c; integrate piecewise so the
    // quadrature never straddles a kink.
    std::vector<double> edges{0.0};
    for (double k = 1.0; k / c < 1.0; k += 1.0) edges.push_back(k / c);
    edges.push_back(1.0);

    QuadratureSpec piece = spec;
    piece.abs_tol = spec.abs_tol / static_cast<double>(edges.size() - 1);
    const double pic = M_PI * c;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        total += integrate([pic](double v) { return pic * std::fabs(sinc(pic * v)); },
                           edges[i], edges[i + 1], piece);
    }
    return total;
}

double sinc_squared_integral(double x, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("sinc_squared_integral: argument must be finite and >= 0");
    }
    if (x == 0.0) return 0.0;
    // Fixed-width chunking keeps per-panel oscillation counts small on long
    // ranges; the chunk layout depends only on x, so results are reproducible.
    const int nchunks = std::max(1, static_cast<int>(std::ceil(x / 8.0)));
    QuadratureSpec piece = spec;
    piece.abs_tol = spec.abs_tol / static_cast<double>(nchunks);
    double total = 0.0;
    for (int i = 0; i < nchunks; ++i) {
        const double a = x * static_cast<double>(i) / nchunks;
        const double b = x * static_cast<double>(i + 1) / nchunks;
        total += integrate([](double t) { const double s = sinc(t); return s * s; },
                           a, b, piece);
    }
    return total;
}

}  // namespace gapbound
