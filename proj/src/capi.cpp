#include "gapbound.h"

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "gapbound/bound.hpp"
#include "gapbound/errors.hpp"
#include "gapbound/large_gaps.hpp"
#include "gapbound/sieve.hpp"
#include "gapbound/special_functions.hpp"

struct gapbound_sieve {
    gapbound::SieveTable table;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs the body, translating exceptions to status codes and recording the
// message for gapbound_last_error.
template <typename F>
gapbound_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return GAPBOUND_OK;
    } catch (const gapbound::DomainError& e) {
        set_error(e.what());
        return GAPBOUND_ERR_DOMAIN;
    } catch (const gapbound::ConvergenceError& e) {
        set_error(e.what());
        return GAPBOUND_ERR_CONVERGENCE;
    } catch (const gapbound::BracketError& e) {
        set_error(e.what());
        return GAPBOUND_ERR_BRACKET;
    } catch (const gapbound::CaseError& e) {
        set_error(e.what());
        return GAPBOUND_ERR_CASE;
    } catch (const gapbound::IoError& e) {
        set_error(e.what());
        return GAPBOUND_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return GAPBOUND_ERR_INVALID;
    } catch (...) {
        set_error("unknown failure");
        return GAPBOUND_ERR_INVALID;
    }
}

gapbound_status invalid(const char* message) {
    set_error(message);
    return GAPBOUND_ERR_INVALID;
}

gapbound::BoundParams to_params(const gapbound_params* p) {
    return {p->c, p->beta, p->delta};
}

void fill_eval(const gapbound::BoundEvaluation& eval, gapbound_bound_eval* out) {
    out->g_max = eval.g_max;
    out->h_upper = eval.h_upper;
    out->phi_max = eval.phi_max;
    out->bound_case = (eval.bound_case == gapbound::BoundCase::case1) ? GAPBOUND_CASE_ENDPOINT
                                                                      : GAPBOUND_CASE_INTERIOR;
    switch (eval.maximizer) {
        case gapbound::Maximizer::interior: out->maximizer = GAPBOUND_MAX_AT_INTERIOR; break;
        case gapbound::Maximizer::endpoint_phi_zero: out->maximizer = GAPBOUND_MAX_AT_PHI_ZERO; break;
        case gapbound::Maximizer::endpoint_phi_one: out->maximizer = GAPBOUND_MAX_AT_PHI_ONE; break;
    }
}

gapbound::LargeGapVariant to_variant(int variant) {
    if (variant == GAPBOUND_VARIANT_V1) return gapbound::LargeGapVariant::v1;
    if (variant == GAPBOUND_VARIANT_V2) return gapbound::LargeGapVariant::v2;
    throw gapbound::DomainError("variant must be GAPBOUND_VARIANT_V1 or GAPBOUND_VARIANT_V2");
}

gapbound::CoefficientScheme to_scheme(const double* coeffs, std::uint64_t ncoeffs) {
    if (coeffs == nullptr && ncoeffs == 0) return gapbound::CoefficientScheme::ones();
    if (coeffs == nullptr) {
        throw gapbound::DomainError("coeffs must not be null when ncoeffs > 0");
    }
    return gapbound::CoefficientScheme::custom(std::vector<double>(coeffs, coeffs + ncoeffs));
}

void fill_run(const gapbound::EmpiricalRun& run, gapbound_empirical_run* out) {
    out->T = run.T;
    out->y = run.y;
    out->c = run.c;
    out->delta = run.delta;
    out->S = run.S;
    out->norm = run.norm;
    out->ratio = run.ratio;
    out->S1 = run.S1;
    out->S2 = run.S2;
}

void fill_audit(const gapbound::ChainAudit& audit, gapbound_chain_audit* out) {
    out->split_lhs = audit.quadratic_split.lhs;
    out->split_rhs = audit.quadratic_split.rhs;
    out->split_slack_rel = audit.quadratic_split.slack_rel;
    out->divisor_lhs = audit.divisor_bound.lhs;
    out->divisor_rhs = audit.divisor_bound.rhs;
    out->divisor_slack_rel = audit.divisor_bound.slack_rel;
    out->si_approx_max_abs_err = audit.si_approx_max_abs_err;
    out->si_approx_fitted_const = audit.si_approx_fitted_const;
    out->ratio_slack = audit.ratio_slack;
    out->max_envelope = audit.max_envelope;
    out->split_holds = audit.quadratic_split.holds ? 1 : 0;
    out->divisor_holds = audit.divisor_bound.holds ? 1 : 0;
    out->ratio_within = audit.ratio_within ? 1 : 0;
    out->passes = audit.passes ? 1 : 0;
}

}  // namespace

extern "C" {

const char* gapbound_version(void) { return "1.0.0"; }

const char* gapbound_last_error(void) { return g_last_error.c_str(); }

gapbound_status gapbound_sinc(double x, double* out) {
    if (!out) return invalid("gapbound_sinc: out must not be null");
    return guarded([&] { *out = gapbound::sinc(x); });
}

gapbound_status gapbound_sine_integral(double x, double* out) {
    if (!out) return invalid("gapbound_sine_integral: out must not be null");
    return guarded([&] { *out = gapbound::sine_integral(x); });
}

gapbound_status gapbound_abs_sinc_integral(double c, double* out) {
    if (!out) return invalid("gapbound_abs_sinc_integral: out must not be null");
    return guarded([&] { *out = gapbound::abs_sinc_integral(c); });
}

gapbound_status gapbound_sinc_squared_integral(double x, double* out) {
    if (!out) return invalid("gapbound_sinc_squared_integral: out must not be null");
    return guarded([&] { *out = gapbound::sinc_squared_integral(x); });
}

gapbound_status gapbound_g_kernel(double t, double c, double log_T, double* out) {
    if (!out) return invalid("gapbound_g_kernel: out must not be null");
    return guarded([&] { *out = gapbound::g_kernel(t, c, log_T); });
}

gapbound_status gapbound_envelope(double phi, const gapbound_params* params, double* out) {
    if (!params || !out) return invalid("gapbound_envelope: params and out must not be null");
    return guarded([&] { *out = gapbound::envelope(phi, to_params(params)); });
}

gapbound_status gapbound_envelope_derivative_sign(double phi, const gapbound_params* params,
                                                  int* out) {
    if (!params || !out) {
        return invalid("gapbound_envelope_derivative_sign: params and out must not be null");
    }
    return guarded([&] { *out = gapbound::envelope_derivative_sign(phi, to_params(params)); });
}

gapbound_status gapbound_solve_critical_phi(const gapbound_params* params, double tol,
                                            int* has_root, double* phi0, double* residual) {
    if (!params || !has_root || !phi0 || !residual) {
        return invalid("gapbound_solve_critical_phi: all pointers must be non-null");
    }
    return guarded([&] {
        const auto cp = gapbound::solve_critical_phi(to_params(params), tol);
        if (cp) {
            *has_root = 1;
            *phi0 = cp->phi0;
            *residual = cp->residual;
        } else {
            *has_root = 0;
            *phi0 = 0.0;
            *residual = 0.0;
        }
    });
}

gapbound_status gapbound_evaluate_bound(const gapbound_params* params, double phi_tol,
                                        gapbound_bound_eval* out) {
    if (!params || !out) return invalid("gapbound_evaluate_bound: params and out must not be null");
    return guarded([&] { fill_eval(gapbound::evaluate_bound(to_params(params), phi_tol), out); });
}

gapbound_status gapbound_optimize_beta(double c, double beta_lo, double beta_hi, double tol,
                                       double delta, double phi_tol, double* beta_star,
                                       gapbound_bound_eval* eval, long* evals) {
    if (!beta_star || !eval) {
        return invalid("gapbound_optimize_beta: beta_star and eval must not be null");
    }
    return guarded([&] {
        const auto r = gapbound::optimize_beta(c, {beta_lo, beta_hi}, tol, delta, phi_tol);
        *beta_star = r.beta_star;
        fill_eval(r.eval, eval);
        if (evals) *evals = r.evals;
    });
}

gapbound_status gapbound_find_critical_c(double c_lo, double c_hi, double tol_c,
                                         double tol_beta, double phi_tol,
                                         gapbound_critical_c* out) {
    if (!out) return invalid("gapbound_find_critical_c: out must not be null");
    return guarded([&] {
        const auto r = gapbound::find_critical_c({c_lo, c_hi}, tol_c, tol_beta,
                                                 {0.3, 0.5}, 0.0, phi_tol);
        out->c_star = r.c_star;
        out->beta_star = r.beta_star;
        out->phi_star = r.phi_star;
        out->h_star = r.h_star;
        out->beta_evals = r.beta_evals;
        out->c_iterations = r.c_iterations;
    });
}

gapbound_status gapbound_verify_interval(const gapbound_params* params, uint64_t grid_size,
                                         gapbound_verification* out) {
    if (!params || !out) return invalid("gapbound_verify_interval: params and out must not be null");
    return guarded([&] {
        const auto r = gapbound::verify_interval(to_params(params),
                                                 static_cast<std::size_t>(grid_size));
        out->max_value = r.max_value;
        out->arg_max_phi = r.arg_max_phi;
        out->max_index = r.max_index;
        out->passes = r.passes ? 1 : 0;
        out->derivative_monotone = r.derivative_monotone ? 1 : 0;
    });
}

gapbound_status gapbound_coarse_split_bound(double c, double alpha, double beta, double* out) {
    if (!out) return invalid("gapbound_coarse_split_bound: out must not be null");
    return guarded([&] { *out = gapbound::coarse_split_bound(c, alpha, beta); });
}

gapbound_status gapbound_h_lower(double c, int variant, double* out) {
    if (!out) return invalid("gapbound_h_lower: out must not be null");
    return guarded([&] { *out = gapbound::h_lower(c, to_variant(variant)); });
}

gapbound_status gapbound_large_gap_threshold(int variant, double lo, double hi, double tol,
                                             double* out) {
    if (!out) return invalid("gapbound_large_gap_threshold: out must not be null");
    return guarded([&] {
        const auto v = to_variant(variant);
        const gapbound::Interval bracket =
            (lo == 0.0 && hi == 0.0) ? gapbound::default_threshold_bracket(v)
                                     : gapbound::Interval{lo, hi};
        *out = gapbound::find_large_gap_threshold(v, bracket, tol);
    });
}

gapbound_status gapbound_sieve_build(uint64_t limit, gapbound_sieve** out) {
    if (!out) return invalid("gapbound_sieve_build: out must not be null");
    return guarded([&] { *out = new gapbound_sieve{gapbound::SieveTable::build(limit)}; });
}

gapbound_status gapbound_sieve_load(const char* path, gapbound_sieve** out) {
    if (!path || !out) return invalid("gapbound_sieve_load: path and out must not be null");
    return guarded([&] { *out = new gapbound_sieve{gapbound::SieveTable::load(path)}; });
}

gapbound_status gapbound_sieve_save(const gapbound_sieve* sieve, const char* path) {
    if (!sieve || !path) return invalid("gapbound_sieve_save: sieve and path must not be null");
    return guarded([&] { sieve->table.save(path); });
}

void gapbound_sieve_free(gapbound_sieve* sieve) { delete sieve; }

gapbound_status gapbound_sieve_limit(const gapbound_sieve* sieve, uint64_t* out) {
    if (!sieve || !out) return invalid("gapbound_sieve_limit: sieve and out must not be null");
    return guarded([&] { *out = sieve->table.limit(); });
}

gapbound_status gapbound_sieve_mangoldt(const gapbound_sieve* sieve, uint64_t n, double* out) {
    if (!sieve || !out) return invalid("gapbound_sieve_mangoldt: sieve and out must not be null");
    return guarded([&] { *out = sieve->table.mangoldt(n); });
}

gapbound_status gapbound_chebyshev_psi(const gapbound_sieve* sieve, double x, double* out) {
    if (!sieve || !out) return invalid("gapbound_chebyshev_psi: sieve and out must not be null");
    return guarded([&] { *out = sieve->table.chebyshev_psi(x); });
}

gapbound_status gapbound_chebyshev_L(const gapbound_sieve* sieve, double x, double* out) {
    if (!sieve || !out) return invalid("gapbound_chebyshev_L: sieve and out must not be null");
    return guarded([&] { *out = sieve->table.chebyshev_L(x); });
}

gapbound_status gapbound_H_direct(const gapbound_sieve* sieve, double x, double c,
                                  double log_T, double* out) {
    if (!sieve || !out) return invalid("gapbound_H_direct: sieve and out must not be null");
    return guarded([&] { *out = sieve->table.H_direct(x, c, log_T); });
}

gapbound_status gapbound_divisor_identity_check(const gapbound_sieve* sieve, uint64_t m,
                                                double tol, double* max_deviation,
                                                uint64_t* arg_max_n, int* passes) {
    if (!sieve || !max_deviation || !arg_max_n || !passes) {
        return invalid("gapbound_divisor_identity_check: all pointers must be non-null");
    }
    return guarded([&] {
        const auto r = gapbound::divisor_identity_check(sieve->table, m, tol);
        *max_deviation = r.max_deviation;
        *arg_max_n = r.arg_max_n;
        *passes = r.passes ? 1 : 0;
    });
}

gapbound_status gapbound_empirical_ratio(const gapbound_sieve* sieve, double T, double delta,
                                         double c, const double* coeffs, uint64_t ncoeffs,
                                         gapbound_empirical_run* out) {
    if (!sieve || !out) return invalid("gapbound_empirical_ratio: sieve and out must not be null");
    return guarded([&] {
        const auto run = gapbound::empirical_ratio(sieve->table, T, delta, c,
                                                   to_scheme(coeffs, ncoeffs));
        fill_run(run, out);
    });
}

gapbound_status gapbound_run_chain_audit(const gapbound_sieve* sieve, double T, double delta,
                                         double c, double beta, const double* coeffs,
                                         uint64_t ncoeffs, gapbound_empirical_run* run_out,
                                         gapbound_chain_audit* audit_out) {
    if (!sieve || !run_out || !audit_out) {
        return invalid("gapbound_run_chain_audit: sieve, run_out, and audit_out must not be null");
    }
    return guarded([&] {
        const auto run = gapbound::empirical_ratio(sieve->table, T, delta, c,
                                                   to_scheme(coeffs, ncoeffs));
        const gapbound::BoundParams params{c, beta, delta};
        const auto audit = gapbound::chain_audit(sieve->table, run, params);
        fill_run(run, run_out);
        fill_audit(audit, audit_out);
    });
}

}  // extern "C"
