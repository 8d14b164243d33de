#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gapbound/errors.hpp"

namespace gapbound {

// Tolerance/budget contract for adaptive quadrature.
// abs_tol must be positive, rel_tol nonnegative, max_depth at least 1.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    int max_depth = 60;

    void validate() const {
        if (!(abs_tol > 0.0)) throw DomainError("quadrature: abs_tol must be > 0");
        if (!(rel_tol >= 0.0)) throw DomainError("quadrature: rel_tol must be >= 0");
        if (max_depth < 1) throw DomainError("quadrature: max_depth must be >= 1");
    }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; only the nonnegative half is tabulated.
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> gk15_kronrod_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Weights of the embedded 7-point Gauss rule (nodes 1, 3, 5, 7 above).
inline constexpr std::array<double, 4> gk15_gauss_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    double integral;   // 15-point estimate
    double error;      // |15-point - 7-point|
    double resabs;     // 15-point estimate of integral of |f|
};

template <typename F>
PanelResult gk15_panel(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    // Index layout: i = 0..6 positive-node pairs, 14 = center.
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[static_cast<std::size_t>(i)];
        fv[2 * i] = f(center - dx);
        fv[2 * i + 1] = f(center + dx);
    }
    fv[14] = f(center);

    double kron = gk15_kronrod_weights[7] * fv[14];
    double abs_kron = gk15_kronrod_weights[7] * std::fabs(fv[14]);
    for (int i = 0; i < 7; ++i) {
        const double w = gk15_kronrod_weights[static_cast<std::size_t>(i)];
        kron += w * (fv[2 * i] + fv[2 * i + 1]);
        abs_kron += w * (std::fabs(fv[2 * i]) + std::fabs(fv[2 * i + 1]));
    }
    double gauss = gk15_gauss_weights[3] * fv[14];
    for (int i = 0; i < 3; ++i) {
        const int j = 2 * i + 1;  // odd-index Kronrod nodes are the Gauss nodes
        const double w = gk15_gauss_weights[static_cast<std::size_t>(i)];
        gauss += w * (fv[2 * j] + fv[2 * j + 1]);
    }
    return {half * kron, std::fabs(half * (kron - gauss)), half * abs_kron};
}

}  // namespace detail

// Adaptive bisection quadrature of f over [a, b] driven by an embedded
// Gauss7/Kronrod15 pair. Each subinterval is accepted when its error
// estimate fits within its width-proportional share of the global budget
// (or hits the floating-point noise floor); otherwise it is split, left
// half first, so the evaluation order is deterministic.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: endpoints must be finite");
    }
    if (a == b) return 0.0;
    const double sign = (b > a) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double total_width = hi - lo;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // rel_tol is interpreted against a first whole-interval estimate.
    const detail::PanelResult whole = detail::gk15_panel(f, lo, hi);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(whole.integral));

    struct Segment {
        double a, b;
        int depth;
    };
    std::vector<Segment> stack;
    stack.push_back({lo, hi, 0});

    double result = 0.0;
    double err_sum = 0.0;
    bool depth_exhausted = false;

    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        const detail::PanelResult r = detail::gk15_panel(f, seg.a, seg.b);
        const double budget = tol * ((seg.b - seg.a) / total_width);
        const double noise_floor = 50.0 * eps * r.resabs;
        if (r.error <= std::max(budget, noise_floor)) {
            result += r.integral;
            err_sum += r.error;
        } else if (seg.depth >= spec.max_depth) {
            result += r.integral;
            err_sum += r.error;
            depth_exhausted = true;
        } else {
            const double mid = 0.5 * (seg.a + seg.b);
            stack.push_back({mid, seg.b, seg.depth + 1});
            stack.push_back({seg.a, mid, seg.depth + 1});
        }
    }

    const double tol_eff = std::max(tol, spec.rel_tol * std::fabs(result));
    if (depth_exhausted && err_sum > tol_eff) {
        throw ConvergenceError(
            "integrate: error estimate " + std::to_string(err_sum) +
                " above tolerance " + std::to_string(tol_eff) +
                " with subdivision depth exhausted",
            sign * result);
    }
    return sign * result;
}

}  // namespace gapbound
