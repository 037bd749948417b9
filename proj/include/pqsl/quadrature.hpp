// quadrature.hpp — panel-split adaptive Gauss–Kronrod integration.
//
// The 7/15-point rule itself comes from Boost.Math. The adaptive control is
// done here because Boost's stopping rule is relative to the panel estimate,
// which never terminates on panels where an oscillatory integrand cancels.
// Here a panel is accepted once |K15 - G7| <= rel_tol * (L1 norm of the
// panel), so cancellation does not drive the recursion. Panels where f is
// negligible may instead meet their width share of rel_tol * (coarse L1 of
// the whole interval), which stops refinement in far tails.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pqsl/errors.hpp"

namespace pqsl::quadrature {

struct Options {
    double rel_tol{1e-10};
    unsigned max_depth{16};
};

struct Result {
    double value{0.0};
    double error{0.0};  // summed |K15 - G7| over accepted panels
    double l1{0.0};     // integral of |f|
    std::size_t panels{0};
    bool converged{true};
};

namespace detail {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

/// Absolute error allowed per unit length from the global scale.
struct Budget {
    double per_length{0.0};
};

template <class F>
void refine(F& f, double a, double b, unsigned depth, const Options& opt, const Budget& budget, Result& acc) {
    double err = 0.0;
    double l1 = 0.0;
    const double value = Rule::integrate(f, a, b, 0, opt.rel_tol, &err, &l1);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
    const double share = 0.5 * budget.per_length * std::abs(b - a);
    if (err <= std::max({0.5 * opt.rel_tol * l1, share, floor}) || err == 0.0) {
        acc.value += value;
        acc.error += err;
        acc.l1 += l1;
        ++acc.panels;
        return;
    }
    const double mid = 0.5 * (a + b);
    if (depth >= opt.max_depth || mid <= a || mid >= b) {
        acc.value += value;
        acc.error += err;
        acc.l1 += l1;
        ++acc.panels;
        acc.converged = false;
        return;
    }
    refine(f, a, mid, depth + 1, opt, budget, acc);
    refine(f, mid, b, depth + 1, opt, budget, acc);
}

}  // namespace detail

/// Integrates f over [a, b], first splitting the interval into `min_panels`
/// equal panels and then bisecting each panel adaptively. Does not throw on
/// non-convergence; inspect Result::converged.
template <class F>
Result integrate_unchecked(F f, double a, double b, std::size_t min_panels, const Options& opt = {}) {
    Result acc;
    if (a == b) return acc;
    const std::size_t n = std::max<std::size_t>(min_panels, 1);
    const double h = (b - a) / static_cast<double>(n);
    auto panel = [&](std::size_t k) {
        const double lo = a + h * static_cast<double>(k);
        const double hi = (k + 1 == n) ? b : a + h * static_cast<double>(k + 1);
        return std::pair{lo, hi};
    };
    // Coarse L1 over the initial panels sets the global scale.
    double coarse_l1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto [lo, hi] = panel(k);
        double err = 0.0;
        double l1 = 0.0;
        detail::Rule::integrate(f, lo, hi, 0, opt.rel_tol, &err, &l1);
        coarse_l1 += l1;
    }
    const detail::Budget budget{opt.rel_tol * coarse_l1 / std::abs(b - a)};
    for (std::size_t k = 0; k < n; ++k) {
        const auto [lo, hi] = panel(k);
        detail::refine(f, lo, hi, 0, opt, budget, acc);
    }
    return acc;
}

/// As integrate_unchecked, but throws ToleranceError if the requested
/// tolerance was not reached.
template <class F>
Result integrate(F f, double a, double b, std::size_t min_panels, const Options& opt = {},
                 const std::string& what = "quadrature") {
    Result r = integrate_unchecked(f, a, b, min_panels, opt);
    if (!r.converged || !std::isfinite(r.value))
        throw ToleranceError(what + " did not converge", r.error, opt.rel_tol * r.l1);
    return r;
}

}  // namespace pqsl::quadrature
