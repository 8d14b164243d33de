#pragma once

#include <cstddef>
#include <optional>

#include "gapbound/quadrature.hpp"

namespace gapbound {

// Closed real interval used for search brackets and ranges.
struct Interval {
    double lo;
    double hi;
};

// Parameters of the upper-bound evaluation: gap multiple c, quadratic-split
// weight beta (the companion weight alpha = 1/(4 beta) is derived, never
// stored), and truncation offset delta (0 for all default runs).
struct BoundParams {
    double c;
    double beta;
    double delta = 0.0;

    double alpha() const { return 1.0 / (4.0 * beta); }
    void validate() const;
};

// Interior critical point of the envelope: sinc(pi c phi0) = 4 beta^2.
// lo/hi is the final bisection bracket containing phi0, so
// sinc(pi c lo) >= 4 beta^2 >= sinc(pi c hi).
struct CriticalPoint {
    double phi0;
    double residual;
    double lo;
    double hi;
};

// case1: beta >= 1/2, the envelope maximum sits at phi = 0 in closed form.
// case2: beta < 1/2, the maximum is interior when the critical-point
// equation has a root, otherwise at an endpoint.
enum class BoundCase { case1, case2 };

enum class Maximizer { interior, endpoint_phi_zero, endpoint_phi_one };

struct BoundEvaluation {
    double g_max;
    double h_upper;   // c + g_max
    double phi_max;
    BoundCase bound_case;
    Maximizer maximizer;
    std::optional<CriticalPoint> critical;  // set iff maximizer == interior
};

struct BetaSearchResult {
    double beta_star;
    BoundEvaluation eval;
    long evals;  // number of bound evaluations spent
};

// Outcome of the threshold search in c. c_star is the largest certified c
// (the bound stays below 1 there); beta/phi/h describe the witness at c_star.
struct OptimizationResult {
    double c_star;
    double beta_star;
    double phi_star;
    double h_star;
    long beta_evals;
    int c_iterations;
};

// Dense-grid certification report over phi in [0, 1-delta].
struct VerificationReport {
    double max_value;
    double arg_max_phi;
    std::size_t max_index;
    std::size_t grid_size;
    bool passes;               // max_value < 1
    bool derivative_monotone;  // alpha*sinc(pi c phi) - beta strictly decreases
};

// Prime-power weight of the quadratic form at normalized position
// t = log n / log T: (2c/log T) * sinc(pi c t). Positive and at most
// 2c/log T on t in [0, 1]; t = 0 returns the limit value exactly.
double g_kernel(double t, double c, double log_T);

// Envelope G(phi) = 2 beta c (1 - delta - phi) + (2 alpha / pi) Si(pi c phi)
// for phi in [0, 1-delta]. G(0) = 2 beta c (1 - delta) exactly.
double envelope(double phi, const BoundParams& params, const QuadratureSpec& spec = {});

// Sign (+1/0/-1) of dG/dphi = 2c (alpha*sinc(pi c phi) - beta).
int envelope_derivative_sign(double phi, const BoundParams& params);

// Bisection solve of sinc(pi c phi0) = 4 beta^2 on [0, 1-delta], valid
// because sinc is strictly decreasing there. Runs until both the bracket
// width and the residual are within tol. beta = 1/2 is the boundary case
// with the exact root phi0 = 0; beta > 1/2 is the wrong case entirely.
// Returns nullopt when no interior root exists (envelope maximum is then at
// an endpoint); that is an expected outcome, not an error.
std::optional<CriticalPoint> solve_critical_phi(const BoundParams& params, double tol = 1e-6);

// Maximum of the envelope and the resulting upper bound h = c + max G.
// beta >= 1/2 uses the closed form 2 beta c (1 - delta) with no quadrature.
BoundEvaluation evaluate_bound(const BoundParams& params, double phi_tol = 1e-6,
                               const QuadratureSpec& spec = {});

// Minimize h_upper over beta: coarse scan on a 200-interval grid, then
// golden-section refinement of the best grid bracket to width <= tol.
// beta_range must sit within (0, 1/2]; beta >= 1/2 is covered by the closed
// form and tiny beta provably worsens the bound, so the default range is
// (0.3, 0.5).
BetaSearchResult optimize_beta(double c, Interval beta_range = {0.3, 0.5},
                               double tol = 1e-8, double delta = 0.0,
                               double phi_tol = 1e-6);

// Bisection in c of the predicate "min over beta of h_upper(c, beta) < 1".
// The bracket must straddle the threshold: certified at the low end, not
// certified at the high end. Returns the largest certified c with its
// witness. The recorded pass/fail trace must be consistent with a monotone
// threshold or the run aborts.
OptimizationResult find_critical_c(Interval c_bracket = {0.5, 0.52},
                                   double tol_c = 1e-5, double tol_beta = 1e-6,
                                   Interval beta_range = {0.3, 0.5},
                                   double delta = 0.0, double phi_tol = 1e-6);

// Evaluate c + G(phi) on a uniform grid of grid_size points over
// [0, 1-delta]; report the maximum, its location (lowest index on ties),
// pass/fail against 1, and whether the derivative factor decreases strictly
// across the grid (the structural one-sign-change claim).
VerificationReport verify_interval(const BoundParams& params, std::size_t grid_size,
                                   const QuadratureSpec& spec = {});

// The coarse comparison bound c + 2c*max(alpha, beta) obtained by splitting
// the weight function at its maximum; requires the same split validity
// condition 4*alpha*beta >= 1. Minimized at alpha = beta = 1/2, where it
// coincides with the closed-form endpoint case of evaluate_bound.
double coarse_split_bound(double c, double alpha, double beta);

}  // namespace gapbound
