/* C interface to the gap-bound library.
 *
 * Every function returns a gapbound_status; outputs go through pointers.
 * On any failure the thread-local message from gapbound_last_error()
 * describes what went wrong. Handles returned by the sieve constructors
 * must be released with gapbound_sieve_free.
 */
#ifndef GAPBOUND_H
#define GAPBOUND_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gapbound_status {
    GAPBOUND_OK = 0,
    GAPBOUND_ERR_DOMAIN = 1,      /* argument outside the documented domain */
    GAPBOUND_ERR_CONVERGENCE = 2, /* iteration budget exhausted */
    GAPBOUND_ERR_BRACKET = 3,     /* bracket does not straddle a sign change */
    GAPBOUND_ERR_CASE = 4,        /* wrong analytic case for the operation */
    GAPBOUND_ERR_IO = 5,          /* file or cache-format failure */
    GAPBOUND_ERR_INVALID = 6      /* null pointer or unexpected failure */
} gapbound_status;

const char* gapbound_version(void);

/* Message for the most recent failure on this thread; empty if none. */
const char* gapbound_last_error(void);

/* ---- special functions -------------------------------------------------- */

gapbound_status gapbound_sinc(double x, double* out);
gapbound_status gapbound_sine_integral(double x, double* out);
gapbound_status gapbound_abs_sinc_integral(double c, double* out);
gapbound_status gapbound_sinc_squared_integral(double x, double* out);

/* ---- bound evaluation ---------------------------------------------------- */

typedef struct gapbound_params {
    double c;
    double beta;
    double delta;
} gapbound_params;

/* Prime-power kernel weight (2c/log_T) sinc(pi c t) for t in [0, 1]. */
gapbound_status gapbound_g_kernel(double t, double c, double log_T, double* out);

gapbound_status gapbound_envelope(double phi, const gapbound_params* params, double* out);

/* sign(+1/0/-1) of the envelope derivative in phi. */
gapbound_status gapbound_envelope_derivative_sign(double phi, const gapbound_params* params,
                                                  int* out);

/* Solves sinc(pi c phi0) = 4 beta^2. *has_root = 0 and GAPBOUND_OK when no
 * interior root exists (endpoint maximum); beta > 1/2 is GAPBOUND_ERR_CASE. */
gapbound_status gapbound_solve_critical_phi(const gapbound_params* params, double tol,
                                            int* has_root, double* phi0, double* residual);

#define GAPBOUND_CASE_ENDPOINT 1
#define GAPBOUND_CASE_INTERIOR 2

#define GAPBOUND_MAX_AT_INTERIOR 0
#define GAPBOUND_MAX_AT_PHI_ZERO 1
#define GAPBOUND_MAX_AT_PHI_ONE 2

typedef struct gapbound_bound_eval {
    double g_max;
    double h_upper;
    double phi_max;
    int bound_case; /* GAPBOUND_CASE_* */
    int maximizer;  /* GAPBOUND_MAX_AT_* */
} gapbound_bound_eval;

gapbound_status gapbound_evaluate_bound(const gapbound_params* params, double phi_tol,
                                        gapbound_bound_eval* out);

gapbound_status gapbound_optimize_beta(double c, double beta_lo, double beta_hi, double tol,
                                       double delta, double phi_tol, double* beta_star,
                                       gapbound_bound_eval* eval, long* evals);

typedef struct gapbound_critical_c {
    double c_star;
    double beta_star;
    double phi_star;
    double h_star;
    long beta_evals;
    int c_iterations;
} gapbound_critical_c;

gapbound_status gapbound_find_critical_c(double c_lo, double c_hi, double tol_c,
                                         double tol_beta, double phi_tol,
                                         gapbound_critical_c* out);

typedef struct gapbound_verification {
    double max_value;
    double arg_max_phi;
    uint64_t max_index;
    int passes;
    int derivative_monotone;
} gapbound_verification;

gapbound_status gapbound_verify_interval(const gapbound_params* params, uint64_t grid_size,
                                         gapbound_verification* out);

gapbound_status gapbound_coarse_split_bound(double c, double alpha, double beta, double* out);

/* ---- large-gap lower bounds ---------------------------------------------- */

#define GAPBOUND_VARIANT_V1 1
#define GAPBOUND_VARIANT_V2 2

gapbound_status gapbound_h_lower(double c, int variant, double* out);

/* Pass lo = hi = 0 to use the built-in default bracket for the variant. */
gapbound_status gapbound_large_gap_threshold(int variant, double lo, double hi, double tol,
                                             double* out);

/* ---- prime-power table and finite-scale audit ----------------------------- */

typedef struct gapbound_sieve gapbound_sieve;

gapbound_status gapbound_sieve_build(uint64_t limit, gapbound_sieve** out);
gapbound_status gapbound_sieve_load(const char* path, gapbound_sieve** out);
gapbound_status gapbound_sieve_save(const gapbound_sieve* sieve, const char* path);
void gapbound_sieve_free(gapbound_sieve* sieve);

gapbound_status gapbound_sieve_limit(const gapbound_sieve* sieve, uint64_t* out);
gapbound_status gapbound_sieve_mangoldt(const gapbound_sieve* sieve, uint64_t n, double* out);
gapbound_status gapbound_chebyshev_psi(const gapbound_sieve* sieve, double x, double* out);
gapbound_status gapbound_chebyshev_L(const gapbound_sieve* sieve, double x, double* out);
gapbound_status gapbound_H_direct(const gapbound_sieve* sieve, double x, double c,
                                  double log_T, double* out);

gapbound_status gapbound_divisor_identity_check(const gapbound_sieve* sieve, uint64_t m,
                                                double tol, double* max_deviation,
                                                uint64_t* arg_max_n, int* passes);

typedef struct gapbound_empirical_run {
    double T;
    double y;
    double c;
    double delta;
    double S;
    double norm;
    double ratio;
    double S1;
    double S2;
} gapbound_empirical_run;

typedef struct gapbound_chain_audit {
    double split_lhs, split_rhs, split_slack_rel;
    double divisor_lhs, divisor_rhs, divisor_slack_rel;
    double si_approx_max_abs_err;
    double si_approx_fitted_const;
    double ratio_slack;
    double max_envelope;
    int split_holds;
    int divisor_holds;
    int ratio_within;
    int passes;
} gapbound_chain_audit;

/* coeffs = NULL with ncoeffs = 0 selects the all-ones scheme; otherwise
 * coeffs[0..ncoeffs-1] holds b_1..b_n and must cover floor(T^(1-delta)). */
gapbound_status gapbound_empirical_ratio(const gapbound_sieve* sieve, double T, double delta,
                                         double c, const double* coeffs, uint64_t ncoeffs,
                                         gapbound_empirical_run* out);

/* Runs the quadratic-form sums and the link-by-link audit in one call with a
 * consistent coefficient scheme (same convention as gapbound_empirical_ratio). */
gapbound_status gapbound_run_chain_audit(const gapbound_sieve* sieve, double T, double delta,
                                         double c, double beta, const double* coeffs,
                                         uint64_t ncoeffs, gapbound_empirical_run* run_out,
                                         gapbound_chain_audit* audit_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GAPBOUND_H */
