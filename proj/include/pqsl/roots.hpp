// roots.hpp — bracketing root finders on a boolean predicate.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace pqsl::roots {

/// Bisects between a and b (either order) where pred(a) != pred(b),
/// shrinking until the bracket is no wider than `width` or the two ends are
/// adjacent doubles. Returns the final bracket {a', b'} with pred(a') ==
/// pred(a) and pred(b') == pred(b).
template <class Pred>
std::pair<double, double> bisect(Pred pred, double a, double b, double width = 0.0) {
    const bool at_a = pred(a);
    for (int iter = 0; iter < 2100; ++iter) {
        const double mid = a + 0.5 * (b - a);
        if (mid == a || mid == b) break;
        if (pred(mid) == at_a)
            a = mid;
        else
            b = mid;
        if (std::abs(b - a) <= width) break;
    }
    return {a, b};
}

/// Root of a continuous f with a sign change on [lo, hi], bracketed to
/// `width` (adjacent doubles when width == 0).
template <class F>
double bisect_root(F f, double lo, double hi, double width = 0.0) {
    const bool neg_lo = f(lo) < 0.0;
    auto [a, b] = bisect([&](double x) { return (f(x) < 0.0) == neg_lo; }, lo, hi, width);
    return 0.5 * (a + b);
}

/// Inclusive uniform grid of n >= 2 points; the last point is exactly `stop`.
inline double grid_point(double start, double stop, std::size_t n, std::size_t k) {
    if (k + 1 == n) return stop;
    return start + (stop - start) * static_cast<double>(k) / static_cast<double>(n - 1);
}

}  // namespace pqsl::roots
