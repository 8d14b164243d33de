#include "gapbound/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "gapbound/errors.hpp"
#include "gapbound/special_functions.hpp"

namespace gapbound {

void BoundParams::validate() const {
    if (!std::isfinite(c) || !(c > 0.0) || !(c < 1.0)) {
        throw DomainError("bound params: c must lie in (0, 1)");
    }
    if (!std::isfinite(beta) || !(beta > 0.0)) {
        throw DomainError("bound params: beta must be > 0");
    }
    if (!std::isfinite(delta) || !(delta >= 0.0) || !(delta < 1.0)) {
        throw DomainError("bound params: delta must lie in [0, 1)");
    }
}

double g_kernel(double t, double c, double log_T) {
    if (!std::isfinite(c) || !(c > 0.0) || !(c < 1.0)) {
        throw DomainError("g_kernel: c must lie in (0, 1)");
    }
    if (!std::isfinite(log_T) || !(log_T > 0.0)) {
        throw DomainError("g_kernel: log_T must be > 0");
    }
    if (!std::isfinite(t) || !(t >= 0.0) || !(t <= 1.0)) {
        throw DomainError("g_kernel: t must lie in [0, 1]");
    }
    // sinc(0) = 1 makes t = 0 return the limit value 2c/log_T exactly.
    return (2.0 * c / log_T) * sinc(M_PI * c * t);
}

namespace {

void check_phi_domain(double phi, const BoundParams& params, const char* who) {
    if (!std::isfinite(phi) || !(phi >= 0.0) || !(phi <= 1.0 - params.delta)) {
        throw DomainError(std::string(who) + ": phi must lie in [0, 1-delta]");
    }
}

}  // namespace

double envelope(double phi, const BoundParams& params, const QuadratureSpec& spec) {
    params.validate();
    check_phi_domain(phi, params, "envelope");
    const double linear = 2.0 * params.beta * params.c * (1.0 - params.delta - phi);
    if (phi == 0.0) return linear;  // Si(0) = 0; keep the endpoint closed-form
    return linear + (2.0 * params.alpha() / M_PI) * sine_integral(M_PI * params.c * phi, spec);
}

int envelope_derivative_sign(double phi, const BoundParams& params) {
    params.validate();
    check_phi_domain(phi, params, "envelope_derivative_sign");
    const double d = params.alpha() * sinc(M_PI * params.c * phi) - params.beta;
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
}

std::optional<CriticalPoint> solve_critical_phi(const BoundParams& params, double tol) {
    params.validate();
    if (!(tol > 0.0)) throw DomainError("solve_critical_phi: tol must be > 0");
    if (params.beta > 0.5) {
        throw CaseError("solve_critical_phi: beta > 1/2 is the endpoint regime; no interior critical point exists");
    }
    if (params.beta == 0.5) {
        // sinc(0) = 1 = 4 beta^2 exactly: the critical point degenerates to 0.
        return CriticalPoint{0.0, 0.0, 0.0, 0.0};
    }
    const double target = 4.0 * params.beta * params.beta;
    const double width = 1.0 - params.delta;
    const double pic = M_PI * params.c;
    // sinc decreases strictly on [0, pi c (1-delta)] subset of [0, pi), so a
    // sign check at the right endpoint settles existence.
    if (sinc(pic * width) - target > 0.0) return std::nullopt;

    double lo = 0.0, hi = width;
    double phi0 = 0.5 * width;
    for (int iter = 0; iter < 200; ++iter) {
        phi0 = 0.5 * (lo + hi);
        const double fm = sinc(pic * phi0) - target;
        if (fm >= 0.0) {
            lo = phi0;
        } else {
            hi = phi0;
        }
        if (hi - lo <= tol && std::fabs(fm) <= tol) {
            return CriticalPoint{phi0, std::fabs(fm), lo, hi};
        }
    }
    throw ConvergenceError("solve_critical_phi: bisection budget exhausted", phi0);
}

BoundEvaluation evaluate_bound(const BoundParams& params, double phi_tol,
                               const QuadratureSpec& spec) {
    params.validate();
    if (!(phi_tol > 0.0)) throw DomainError("evaluate_bound: phi_tol must be > 0");
    if (params.beta >= 0.5) {
        // Endpoint regime: alpha <= beta, the envelope decreases from phi = 0.
        const double g_max = 2.0 * params.beta * params.c * (1.0 - params.delta);
        return {g_max, params.c + g_max, 0.0, BoundCase::case1,
                Maximizer::endpoint_phi_zero, std::nullopt};
    }
    const auto critical = solve_critical_phi(params, phi_tol);
    if (critical) {
        const double g_max = envelope(critical->phi0, params, spec);
        return {g_max, params.c + g_max, critical->phi0, BoundCase::case2,
                Maximizer::interior, critical};
    }
    const double width = 1.0 - params.delta;
    const double g0 = envelope(0.0, params, spec);
    const double g1 = envelope(width, params, spec);
    if (g0 >= g1) {
        return {g0, params.c + g0, 0.0, BoundCase::case2,
                Maximizer::endpoint_phi_zero, std::nullopt};
    }
    return {g1, params.c + g1, width, BoundCase::case2,
            Maximizer::endpoint_phi_one, std::nullopt};
}

BetaSearchResult optimize_beta(double c, Interval beta_range, double tol,
                               double delta, double phi_tol) {
    if (!std::isfinite(beta_range.lo) || !std::isfinite(beta_range.hi) ||
        !(beta_range.lo > 0.0) || !(beta_range.hi <= 0.5) ||
        !(beta_range.lo < beta_range.hi)) {
        throw DomainError("optimize_beta: beta_range must be a nonempty interval within (0, 1/2]");
    }
    if (!(tol > 0.0)) throw DomainError("optimize_beta: tol must be > 0");

    long evals = 0;
    const auto h_at = [&](double beta) {
        ++evals;
        return evaluate_bound({c, beta, delta}, phi_tol);
    };

    // Coarse scan: 200 equal intervals, endpoints included, lowest index on
    // ties so the result is independent of evaluation order.
    constexpr int kIntervals = 200;
    const double span = beta_range.hi - beta_range.lo;
    int best = 0;
    double best_h = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kIntervals; ++i) {
        const double beta = beta_range.lo + span * static_cast<double>(i) / kIntervals;
        const double h = h_at(beta).h_upper;
        if (h < best_h) {
            best_h = h;
            best = i;
        }
    }
    double a = beta_range.lo + span * static_cast<double>(std::max(0, best - 1)) / kIntervals;
    double b = beta_range.lo + span * static_cast<double>(std::min(kIntervals, best + 1)) / kIntervals;

    // Golden-section refinement of the bracket around the best grid point.
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = h_at(x1).h_upper;
    double f2 = h_at(x2).h_upper;
    int iter = 0;
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = h_at(x1).h_upper;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = h_at(x2).h_upper;
        }
        if (++iter > 500) {
            throw ConvergenceError("optimize_beta: golden-section budget exhausted",
                                   0.5 * (a + b));
        }
    }
    const double beta_star = 0.5 * (a + b);
    return {beta_star, h_at(beta_star), evals};
}

OptimizationResult find_critical_c(Interval c_bracket, double tol_c, double tol_beta,
                                   Interval beta_range, double delta, double phi_tol) {
    if (!std::isfinite(c_bracket.lo) || !std::isfinite(c_bracket.hi) ||
        !(c_bracket.lo > 0.0) || !(c_bracket.hi < 1.0) ||
        !(c_bracket.lo < c_bracket.hi)) {
        throw DomainError("find_critical_c: c_bracket must be a nonempty interval within (0, 1)");
    }
    if (!(tol_c > 0.0)) throw DomainError("find_critical_c: tol_c must be > 0");

    long beta_evals = 0;
    const auto min_h = [&](double c) {
        BetaSearchResult r = optimize_beta(c, beta_range, tol_beta, delta, phi_tol);
        beta_evals += r.evals;
        return r;
    };

    double lo = c_bracket.lo, hi = c_bracket.hi;
    BetaSearchResult witness = min_h(lo);
    if (!(witness.eval.h_upper < 1.0)) {
        throw BracketError("find_critical_c: bound not below 1 at the low end of the bracket");
    }
    if (min_h(hi).eval.h_upper < 1.0) {
        throw BracketError("find_critical_c: bound already below 1 at the high end of the bracket");
    }

    std::vector<std::pair<double, bool>> trace{{lo, true}, {hi, false}};
    int iterations = 0;
    while (hi - lo > tol_c) {
        const double mid = 0.5 * (lo + hi);
        BetaSearchResult r = min_h(mid);
        const bool certified = r.eval.h_upper < 1.0;
        trace.emplace_back(mid, certified);
        if (certified) {
            lo = mid;
            witness = std::move(r);
        } else {
            hi = mid;
        }
        if (++iterations > 200) {
            throw ConvergenceError("find_critical_c: bisection budget exhausted", lo);
        }
    }

    // The predicate must behave monotonically across everything we sampled:
    // every certified c strictly below every uncertified one.
    double max_pass = -std::numeric_limits<double>::infinity();
    double min_fail = std::numeric_limits<double>::infinity();
    for (const auto& [c, certified] : trace) {
        if (certified) {
            max_pass = std::max(max_pass, c);
        } else {
            min_fail = std::min(min_fail, c);
        }
    }
    if (!(max_pass < min_fail)) {
        throw ConvergenceError("find_critical_c: threshold predicate not monotone across the bisection trace", lo);
    }

    return {lo, witness.beta_star, witness.eval.phi_max, witness.eval.h_upper,
            beta_evals, iterations};
}

VerificationReport verify_interval(const BoundParams& params, std::size_t grid_size,
                                   const QuadratureSpec& spec) {
    params.validate();
    if (grid_size < 2) throw DomainError("verify_interval: grid_size must be >= 2");

    const double width = 1.0 - params.delta;
    const double alpha = params.alpha();
    const double denom = static_cast<double>(grid_size - 1);
    double max_value = -std::numeric_limits<double>::infinity();
    std::size_t max_index = 0;
    bool monotone = true;
    double prev_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double phi = width * static_cast<double>(i) / denom;
        const double value = params.c + envelope(phi, params, spec);
        if (value > max_value) {  // strict: lowest index wins ties
            max_value = value;
            max_index = i;
        }
        const double d = alpha * sinc(M_PI * params.c * phi) - params.beta;
        if (i > 0 && !(d < prev_d)) monotone = false;
        prev_d = d;
    }
    const double arg_max = width * static_cast<double>(max_index) / denom;
    return {max_value, arg_max, max_index, grid_size, max_value < 1.0, monotone};
}

double coarse_split_bound(double c, double alpha, double beta) {
    if (!std::isfinite(c) || !(c > 0.0)) {
        throw DomainError("coarse_split_bound: c must be > 0");
    }
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > 0.0) || !(beta > 0.0)) {
        throw DomainError("coarse_split_bound: alpha and beta must be > 0");
    }
    if (!(4.0 * alpha * beta >= 1.0)) {
        throw DomainError("coarse_split_bound: quadratic split requires 4*alpha*beta >= 1");
    }
    return c + 2.0 * c * std::max(alpha, beta);
}

}  // namespace gapbound
