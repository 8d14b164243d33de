#include "gapbound/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "gapbound/errors.hpp"
#include "gapbound/special_functions.hpp"

namespace gapbound {

namespace {

constexpr std::uint64_t kMaxLimit = 100000000;  // two doubles per integer: ~1.6 GB
constexpr char kCacheMagic[4] = {'G', 'B', 'S', 'V'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

SieveTable SieveTable::build(std::uint64_t limit) {
    if (limit < 2) throw DomainError("sieve: limit must be >= 2");
    if (limit > kMaxLimit) throw DomainError("sieve: limit above supported maximum");
    SieveTable table;
    table.limit_ = limit;
    table.mangoldt_.assign(limit + 1, 0.0);

    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        if (p <= limit / p) {
            for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
        }
        const double log_p = std::log(static_cast<double>(p));
        for (std::uint64_t q = p;; q *= p) {
            table.mangoldt_[q] = log_p;
            if (q > limit / p) break;
        }
    }
    table.finalize();
    return table;
}

void SieveTable::finalize() {
    prefix_L_.assign(limit_ + 1, 0.0);
    prime_powers_.clear();
    double running = 0.0;
    for (std::uint64_t n = 1; n <= limit_; ++n) {
        const double w = mangoldt_[n];
        if (w != 0.0) {
            running += w / static_cast<double>(n);
            prime_powers_.push_back(n);
        }
        prefix_L_[n] = running;
    }
}

void SieveTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("sieve cache: cannot open for writing: " + path);
    out.write(kCacheMagic, sizeof kCacheMagic);
    out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
    out.write(reinterpret_cast<const char*>(&limit_), sizeof limit_);
    out.write(reinterpret_cast<const char*>(mangoldt_.data() + 1),
              static_cast<std::streamsize>(limit_ * sizeof(double)));
    if (!out) throw IoError("sieve cache: write failed: " + path);
}

SieveTable SieveTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("sieve cache: cannot open: " + path);
    char magic[4] = {};
    std::uint32_t version = 0;
    std::uint64_t limit = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&limit), sizeof limit);
    if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) {
        throw IoError("sieve cache: bad header: " + path);
    }
    if (version != kCacheVersion) throw IoError("sieve cache: unsupported version");
    if (limit < 2 || limit > kMaxLimit) throw IoError("sieve cache: implausible limit field");

    SieveTable table;
    table.limit_ = limit;
    table.mangoldt_.assign(limit + 1, 0.0);
    in.read(reinterpret_cast<char*>(table.mangoldt_.data() + 1),
            static_cast<std::streamsize>(limit * sizeof(double)));
    if (!in || in.gcount() != static_cast<std::streamsize>(limit * sizeof(double))) {
        throw IoError("sieve cache: truncated data: " + path);
    }
    table.finalize();
    return table;
}

double SieveTable::mangoldt(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw DomainError("mangoldt: n out of table range");
    return mangoldt_[n];
}

double SieveTable::chebyshev_psi(double x) const {
    if (!std::isfinite(x) || x < 1.0 || x > static_cast<double>(limit_)) {
        throw DomainError("chebyshev_psi: x out of table range");
    }
    const auto nx = static_cast<std::uint64_t>(x);
    double sum = 0.0;
    for (std::uint64_t q : prime_powers_) {
        if (q > nx) break;
        sum += mangoldt_[q];
    }
    return sum;
}

double SieveTable::chebyshev_L(double x) const {
    if (!std::isfinite(x) || x < 1.0 || x > static_cast<double>(limit_)) {
        throw DomainError("chebyshev_L: x out of table range");
    }
    return prefix_L_[static_cast<std::uint64_t>(x)];
}

double SieveTable::H_direct(double x, double c, double log_T) const {
    if (!std::isfinite(x) || x < 1.0 || x > static_cast<double>(limit_)) {
        throw DomainError("H_direct: x out of table range");
    }
    if (!std::isfinite(log_T) || !(log_T > 0.0) || !(log_T >= std::log(x))) {
        throw DomainError("H_direct: log_T must be >= log x");
    }
    const auto nx = static_cast<std::uint64_t>(x);
    double sum = 0.0;
    for (std::uint64_t q : prime_powers_) {
        if (q > nx) break;
        const double t = std::log(static_cast<double>(q)) / log_T;
        sum += g_kernel(t, c, log_T) * mangoldt_[q] / static_cast<double>(q);
    }
    return sum;
}

DivisorIdentityReport divisor_identity_check(const SieveTable& table, std::uint64_t m,
                                             double tol) {
    if (m < 1 || m > table.limit()) {
        throw DomainError("divisor_identity_check: m out of table range");
    }
    std::vector<double> acc(m + 1, 0.0);
    for (std::uint64_t q : table.prime_powers()) {
        if (q > m) break;
        const double w = table.mangoldt(q);
        for (std::uint64_t mult = q; mult <= m; mult += q) acc[mult] += w;
    }
    double max_dev = 0.0;
    std::uint64_t arg_max = 1;
    for (std::uint64_t n = 1; n <= m; ++n) {
        const double dev = std::fabs(acc[n] - std::log(static_cast<double>(n)));
        if (dev > max_dev) {
            max_dev = dev;
            arg_max = n;
        }
    }
    return {max_dev, arg_max, m, max_dev <= tol};
}

CoefficientScheme CoefficientScheme::ones() {
    CoefficientScheme s;
    s.ones_ = true;
    return s;
}

CoefficientScheme CoefficientScheme::custom(std::vector<double> values) {
    CoefficientScheme s;
    s.ones_ = false;
    s.values_ = std::move(values);
    return s;
}

double CoefficientScheme::value(std::uint64_t k) const {
    if (k < 1) throw DomainError("coefficient scheme: k must be >= 1");
    if (ones_) return 1.0;
    if (k > values_.size()) throw DomainError("coefficient scheme: k beyond stored length");
    return values_[k - 1];
}

void CoefficientScheme::validate_for(std::uint64_t y_floor) const {
    if (ones_) return;
    if (values_.size() < y_floor) {
        throw DomainError("coefficient scheme: fewer values than floor(y)");
    }
    bool any_nonzero = false;
    for (std::uint64_t k = 0; k < y_floor; ++k) {
        if (!std::isfinite(values_[k])) {
            throw DomainError("coefficient scheme: values must be finite");
        }
        if (values_[k] != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) {
        throw DomainError("coefficient scheme: identically zero up to floor(y)");
    }
}

EmpiricalRun empirical_ratio(const SieveTable& table, double T, double delta, double c,
                             const CoefficientScheme& scheme) {
    if (!std::isfinite(T) || !(T > 1.0)) throw DomainError("empirical_ratio: T must be > 1");
    if (!std::isfinite(delta) || !(delta >= 0.0) || !(delta < 1.0)) {
        throw DomainError("empirical_ratio: delta must lie in [0, 1)");
    }
    if (!std::isfinite(c) || !(c > 0.0) || !(c < 1.0)) {
        throw DomainError("empirical_ratio: c must lie in (0, 1)");
    }
    const double y = std::pow(T, 1.0 - delta);
    if (y > static_cast<double>(table.limit())) {
        throw DomainError("empirical_ratio: sieve limit too small for y = T^(1-delta)");
    }
    const auto Y = static_cast<std::uint64_t>(y);
    scheme.validate_for(Y);
    const double log_T = std::log(T);

    double norm = 0.0;
    for (std::uint64_t k = 1; k <= Y; ++k) {
        const double b = scheme.value(k);
        norm += b * b / static_cast<double>(k);
    }
    if (!(norm > 0.0)) throw DomainError("empirical_ratio: coefficient norm must be positive");

    double S = 0.0, S2 = 0.0;
    for (std::uint64_t n : table.prime_powers()) {
        if (n > Y) break;
        const double t = std::log(static_cast<double>(n)) / log_T;
        const double gw = g_kernel(t, c, log_T) * table.mangoldt(n);
        const std::uint64_t k_max = Y / n;
        for (std::uint64_t k = 1; k <= k_max; ++k) {
            const double bk = scheme.value(k);
            const double bkn = scheme.value(k * n);
            const double inv = 1.0 / static_cast<double>(k * n);
            S += std::fabs(bk) * std::fabs(bkn) * gw * inv;
            S2 += bkn * bkn * gw * inv;
        }
    }

    double S1 = 0.0;
    for (std::uint64_t k = 1; k <= Y; ++k) {
        const double b = scheme.value(k);
        if (b == 0.0) continue;
        S1 += (b * b / static_cast<double>(k)) * table.H_direct(y / static_cast<double>(k), c, log_T);
    }

    return {T, y, c, delta, scheme, S, norm, S / norm, S1, S2};
}

namespace {

LinkReport make_link(double lhs, double rhs) {
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs),
                                   std::numeric_limits<double>::min()});
    return {lhs, rhs, (rhs - lhs) / scale, rhs - lhs >= -1e-12 * scale};
}

}  // namespace

ChainAudit chain_audit(const SieveTable& table, const EmpiricalRun& run,
                       const BoundParams& params, std::size_t grid_size) {
    params.validate();
    if (grid_size < 2) throw DomainError("chain_audit: grid_size must be >= 2");
    if (run.c != params.c || run.delta != params.delta) {
        throw DomainError("chain_audit: params must share c and delta with the run");
    }
    const double log_T = std::log(run.T);
    const auto Y = static_cast<std::uint64_t>(run.y);
    const double alpha = params.alpha();

    ChainAudit audit{};
    audit.quadratic_split = make_link(run.S, alpha * run.S1 + params.beta * run.S2);

    double log_weight_sum = 0.0;
    for (std::uint64_t k = 1; k <= Y; ++k) {
        const double b = run.scheme.value(k);
        log_weight_sum += (b * b / static_cast<double>(k)) * std::log(static_cast<double>(k));
    }
    audit.divisor_bound = make_link(run.S2, (2.0 * run.c / log_T) * log_weight_sum);

    double max_abs_err = 0.0, fitted = 0.0, slack_sum = 0.0;
    for (std::uint64_t k = 1; k <= Y; ++k) {
        const double b = run.scheme.value(k);
        if (b == 0.0) continue;
        const double w = b * b / static_cast<double>(k);
        const double x = run.y / static_cast<double>(k);
        const double log_x = std::log(x);
        const double err = table.H_direct(x, run.c, log_T) -
                           (2.0 / M_PI) * sine_integral(M_PI * run.c * log_x / log_T);
        const double abs_err = std::fabs(err);
        max_abs_err = std::max(max_abs_err, abs_err);
        if (log_x >= 1.0) {
            fitted = std::max(fitted, abs_err * log_T * log_T * log_T / (log_x * log_x));
        }
        slack_sum += w * abs_err;
    }
    audit.si_approx_max_abs_err = max_abs_err;
    audit.si_approx_fitted_const = fitted;
    audit.ratio_slack = alpha * slack_sum / run.norm;

    const double width = 1.0 - params.delta;
    double max_env = -std::numeric_limits<double>::infinity();
    const double denom = static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) {
        max_env = std::max(max_env, envelope(width * static_cast<double>(i) / denom, params));
    }
    audit.max_envelope = max_env;
    audit.ratio_within =
        run.ratio <= max_env + audit.ratio_slack + 1e-12 * std::max(1.0, std::fabs(run.ratio));
    audit.passes = audit.quadratic_split.holds && audit.divisor_bound.holds;
    return audit;
}

}  // namespace gapbound
