#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gapbound/bound.hpp"

namespace gapbound {

// Exact prime-power weight table up to a fixed limit: weight(n) = log p when
// n = p^k (p prime, k >= 1) and 0 otherwise, plus the running sum of
// weight(n)/n. Immutable after construction; limits up to 10^7 are supported
// (memory scales as two doubles per integer).
class SieveTable {
public:
    static SieveTable build(std::uint64_t limit);

    // Binary cache round-trip; the stored weight doubles are bit-exact.
    static SieveTable load(const std::string& path);
    void save(const std::string& path) const;

    std::uint64_t limit() const { return limit_; }

    // weight(n) for 1 <= n <= limit.
    double mangoldt(std::uint64_t n) const;

    // Sum of weight(n) over n <= x (growth-rate sanity: approximately x).
    double chebyshev_psi(double x) const;

    // L(x) = sum of weight(n)/n over n <= x, exact prefix lookup;
    // elementarily log x + O(1). Requires 1 <= x <= limit.
    double chebyshev_L(double x) const;

    // H(x) = sum of g(log n / log_T) * weight(n) / n over n <= x, the
    // kernel-weighted analogue of L. Requires 1 <= x <= limit and
    // log_T >= log x (so the kernel argument stays within [0, 1]).
    double H_direct(double x, double c, double log_T) const;

    // Ascending list of n <= limit with nonzero weight.
    const std::vector<std::uint64_t>& prime_powers() const { return prime_powers_; }

private:
    SieveTable() = default;
    void finalize();

    std::uint64_t limit_ = 0;
    std::vector<double> mangoldt_;   // index 0..limit; entries 0, 1 are zero
    std::vector<double> prefix_L_;   // prefix_L_[n] = sum over m <= n of weight(m)/m
    std::vector<std::uint64_t> prime_powers_;
};

struct DivisorIdentityReport {
    double max_deviation;
    std::uint64_t arg_max_n;
    std::uint64_t checked_up_to;
    bool passes;
};

// Check sum over divisors d of n of weight(d) = log n for every n <= m.
// The identity is exact; deviations beyond tol indicate a broken table.
DivisorIdentityReport divisor_identity_check(const SieveTable& table, std::uint64_t m,
                                             double tol = 1e-9);

// Coefficient sequence b_k of the quadratic form. Either the all-ones
// default or an explicit finite vector (b[0] holds b_1).
class CoefficientScheme {
public:
    static CoefficientScheme ones();
    static CoefficientScheme custom(std::vector<double> values);

    bool is_ones() const { return ones_; }
    const char* tag() const { return ones_ ? "ones" : "custom"; }
    double value(std::uint64_t k) const;  // b_k, k >= 1

    // A custom vector must cover k = 1..y_floor with finite values and must
    // not vanish identically on that range.
    void validate_for(std::uint64_t y_floor) const;

private:
    bool ones_ = true;
    std::vector<double> values_;
};

// One direct evaluation of the quadratic-form sums at finite scale:
//   S    = sum over kn <= y of |b_k||b_kn| g(n) weight(n) / (kn)
//   S1   = sum over k <= y of (b_k^2/k) H(y/k)
//   S2   = sum over kn <= y of (b_kn^2/(kn)) g(n) weight(n)
//   norm = sum over k <= y of b_k^2/k,  ratio = S / norm
// with n ranging over prime powers and g the positive kernel weight.
struct EmpiricalRun {
    double T;
    double y;  // T^(1-delta)
    double c;
    double delta;
    CoefficientScheme scheme;
    double S;
    double norm;
    double ratio;
    double S1;
    double S2;
};

EmpiricalRun empirical_ratio(const SieveTable& table, double T, double delta, double c,
                             const CoefficientScheme& scheme);

struct LinkReport {
    double lhs;
    double rhs;
    double slack_rel;  // (rhs - lhs) relative to the larger magnitude
    bool holds;        // lhs <= rhs up to 1e-12 relative
};

// Link-by-link audit of the inequality chain behind the upper bound, at the
// finite scale of an EmpiricalRun:
//   (i)  S <= alpha*S1 + beta*S2           - exact (quadratic split)
//   (ii) S2 <= (2c/log T) * sum (b_k^2/k) log k   - exact (divisor identity)
//   (iii) per-k error of replacing H(y/k) by its sine-integral approximation
//        - finite-size effect, measured and reported
//   (iv) ratio <= grid max of the envelope + slack, where the slack is the
//        weighted link-(iii) error mass; decays like 1/log T
// Exact links failing beyond 1e-12 relative means an implementation bug.
struct ChainAudit {
    LinkReport quadratic_split;    // (i)
    LinkReport divisor_bound;      // (ii)
    double si_approx_max_abs_err;  // (iii) max over k of |err_k|
    double si_approx_fitted_const; // (iii) max |err_k| * log^3 T / log^2(y/k)
    double ratio_slack;            // (iv) alpha * sum w_k |err_k| / norm
    double max_envelope;           // (iv) grid max of the envelope
    bool ratio_within;             // (iv) ratio <= max_envelope + ratio_slack
    bool passes;                   // both exact links hold
};

ChainAudit chain_audit(const SieveTable& table, const EmpiricalRun& run,
                       const BoundParams& params, std::size_t grid_size = 100001);

}  // namespace gapbound
