// nonmarkov.hpp — BLP (trace-distance backflow) and RHP (divisibility)
// non-Markovianity of the dephasing map, plus the closed-form measure and
// critical peak-weight angles valid for tau in [pi/(dw dn), 2 pi/(dw dn)].
//
// For this model the optimal BLP pair has D(t) = |kappa_t| and the RHP rate
// is h_t = max(0, d ln|kappa_t| / dt), so both measures are integrals over
// the set where |kappa_t| grows and reduce to sums over interval endpoints.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqsl/dephasing.hpp"
#include "pqsl/errors.hpp"
#include "pqsl/roots.hpp"

namespace pqsl {

enum class BoundaryKind { domain_edge, stationary, cusp };

struct Interval {
    double start;
    double end;
    BoundaryKind start_kind;
    BoundaryKind end_kind;
};

/// Disjoint, ordered sub-intervals of [0, tau] on which |kappa_t| increases.
struct MonotoneIntervals {
    std::vector<Interval> intervals;

    bool empty() const noexcept { return intervals.empty(); }
    std::size_t size() const noexcept { return intervals.size(); }
    bool starts_at_cusp() const noexcept {
        return std::any_of(intervals.begin(), intervals.end(),
                           [](const Interval& i) { return i.start_kind == BoundaryKind::cusp; });
    }
};

struct ScanOptions {
    int points_per_half_period{40};  // grid points per pi / (dw |dn|)
    int max_doublings{8};
    double root_rel{1e-12};           // bracket width relative to tau
    double cusp_threshold{kCuspThreshold};
};

namespace detail {

/// Instant of exact destructive interference nearest to t.
inline double nearest_cusp_time(const SpectralParams& p, double t) {
    const double half = p.half_period();
    const double k = std::max(0.0, std::round((t / half - 1.0) / 2.0));
    return (2.0 * k + 1.0) * half;
}

inline std::pair<double, BoundaryKind> classify_boundary(const SpectralParams& p, double lo, double hi,
                                                         const ScanOptions& opt) {
    const double t = 0.5 * (lo + hi);
    const double tc = nearest_cusp_time(p, t);
    const double slack = std::max(std::abs(hi - lo), 64.0 * std::numeric_limits<double>::epsilon() * tc);
    if (std::abs(tc - t) <= slack && abs_kappa(p, tc) < opt.cusp_threshold) return {tc, BoundaryKind::cusp};
    return {t, BoundaryKind::stationary};
}

inline MonotoneIntervals scan_once(const SpectralParams& p, double tau, std::size_t cells, const ScanOptions& opt) {
    MonotoneIntervals out;
    auto rising = [&](double t) { return modulus_growth(p, t) > 0.0; };
    const double width = opt.root_rel * tau;

    bool prev = rising(0.0);
    double prev_t = 0.0;
    bool open = prev;
    std::pair<double, BoundaryKind> opened{0.0, BoundaryKind::domain_edge};

    for (std::size_t k = 1; k <= cells; ++k) {
        const double t = roots::grid_point(0.0, tau, cells + 1, k);
        const bool cur = rising(t);
        if (cur != prev) {
            const auto [lo, hi] = roots::bisect(rising, prev_t, t, width);
            const auto boundary = classify_boundary(p, lo, hi, opt);
            if (cur) {
                opened = boundary;
                open = true;
            } else if (open) {
                out.intervals.push_back({opened.first, boundary.first, opened.second, boundary.second});
                open = false;
            }
        }
        prev = cur;
        prev_t = t;
    }
    if (open) out.intervals.push_back({opened.first, tau, opened.second, BoundaryKind::domain_edge});
    return out;
}

}  // namespace detail

/// Intervals of [0, tau] where d|kappa_t|/dt > 0. Sign changes are located on
/// a uniform grid, refined by bisection, and the grid is doubled until the
/// interval count agrees across two successive densities.
inline MonotoneIntervals find_increasing_intervals(const SpectralParams& p, double tau, const ScanOptions& opt = {}) {
    p.validate();
    if (!(tau > 0.0)) throw ParameterError("find_increasing_intervals: tau must be > 0");
    const double half_periods = tau / p.half_period();
    auto cells = static_cast<std::size_t>(std::max(8.0, std::ceil(half_periods * opt.points_per_half_period)));
    MonotoneIntervals current = detail::scan_once(p, tau, cells, opt);
    for (int d = 0; d < opt.max_doublings; ++d) {
        cells *= 2;
        MonotoneIntervals finer = detail::scan_once(p, tau, cells, opt);
        const bool stable = finer.size() == current.size();
        current = std::move(finer);
        if (stable) break;
    }
    return current;
}

/// BLP measure: total increase of |kappa_t| over [0, tau].
inline double blp(const SpectralParams& p, double tau, const ScanOptions& opt = {}) {
    double total = 0.0;
    for (const auto& i : find_increasing_intervals(p, tau, opt).intervals)
        total += abs_kappa(p, i.end) - abs_kappa(p, i.start);
    return total;
}

/// Throws ParameterError unless tau lies in [pi/(dw dn), 2 pi/(dw dn)].
inline void require_window(const SpectralParams& p, double tau, const char* who) {
    const double lo = p.half_period();
    const double hi = p.window_end();
    constexpr double slack = 1e-12;
    if (!(tau >= lo * (1.0 - slack) && tau <= hi * (1.0 + slack)))
        throw ParameterError(std::string(who) + ": tau = " + std::to_string(tau) + " ps outside the valid window [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "] ps");
}

/// exp(-(pi sigma / dw)^2 / 2) = |kappa| at the first interference minimum
/// for unit |cos 2 xi|.
inline double half_period_envelope(const SpectralParams& p) {
    const double r = std::numbers::pi * p.sigma / p.delta_omega();
    return std::exp(-0.5 * r * r);
}

/// |kappa_tau| - |cos 2 xi| exp(-(pi sigma/dw)^2 / 2), unclamped.
inline double blp_closed_form_signed(const SpectralParams& p, double tau) {
    p.validate();
    require_window(p, tau, "blp_closed_form");
    return abs_kappa(p, tau) - std::abs(std::cos(2.0 * p.xi)) * half_period_envelope(p);
}

/// Closed-form measure, clamped at zero.
inline double blp_closed_form(const SpectralParams& p, double tau) {
    return std::max(0.0, blp_closed_form_signed(p, tau));
}

/// The two non-zero eigenvalues of (Lambda_{t+eps,t} x 1)|Psi><Psi| to first
/// order in eps, with |Psi> maximally entangled:
///   1/2 +- 1/2 sqrt(1 + (kdot/k) eps + conj(kdot/k) eps).
inline std::pair<double, double> divisibility_eigenvalues(const SpectralParams& p, double t, double eps) {
    const ComplexScalar k = kappa(p, t);
    if (std::abs(k) < kCuspThreshold) throw CuspError("divisibility_eigenvalues: |kappa_t| vanishes", t);
    const ComplexScalar r = kappa_dot(p, t) / k;
    const double root = std::sqrt(std::max(0.0, 1.0 + 2.0 * r.real() * eps));
    return {0.5 - 0.5 * root, 0.5 + 0.5 * root};
}

/// RHP rate h_t: the eps -> 0 slope of the trace norm of the eigenvalues
/// above, i.e. max(0, Re(kappa_dot / kappa)).
inline double h_t(const SpectralParams& p, double t) {
    p.validate();
    const ComplexScalar k = kappa(p, t);
    if (std::abs(k) < kCuspThreshold) throw CuspError("h_t: |kappa_t| vanishes at t = " + std::to_string(t), t);
    return std::max(0.0, (kappa_dot(p, t) / k).real());
}

struct RhpResult {
    double value{0.0};
    bool saturated{false};  // an interval starts at a zero of |kappa|; value uses the floor
};

/// RHP measure: total increase of ln|kappa_t| over [0, tau]. |kappa| is
/// clamped below at `floor`; hitting the clamp marks the result saturated.
inline RhpResult rhp(const SpectralParams& p, double tau, double floor = kCuspThreshold,
                     const ScanOptions& opt = {}) {
    RhpResult out;
    for (const auto& i : find_increasing_intervals(p, tau, opt).intervals) {
        double lo = abs_kappa(p, i.start);
        if (i.start_kind == BoundaryKind::cusp || lo < floor) {
            lo = std::max(lo, floor);
            out.saturated = true;
        }
        out.value += std::log(std::max(abs_kappa(p, i.end), floor)) - std::log(lo);
    }
    return out;
}

struct CriticalPair {
    double low;   // rad
    double high;  // rad
    double q;
};

/// q = sqrt(v) |cos d| / sqrt(u - v sin^2 d) with u = e^{sigma^2 dn^2 tau^2},
/// v = e^{(pi sigma/dw)^2}, d = dw dn tau / 2. Returns nullopt where the
/// expression is undefined (tau at the window start, where the closed-form
/// measure vanishes identically).
inline std::optional<double> critical_q(const SpectralParams& p, double tau) {
    p.validate();
    require_window(p, tau, "critical_xi");
    const double sd = p.sigma * p.delta_n * tau;
    const double r = std::numbers::pi * p.sigma / p.delta_omega();
    const double v = std::exp(r * r);
    const double d = 0.5 * p.beat() * tau;
    // u - v sin^2 d = v (expm1(ln u - ln v) + cos^2 d), no cancellation near the window start.
    const double cos_d = std::cos(d);
    const double denom = v * (std::expm1(sd * sd - r * r) + cos_d * cos_d);
    if (!(denom > 0.0) || tau <= p.half_period() * (1.0 + 1e-12)) return std::nullopt;
    return std::sqrt(v) * std::abs(cos_d) / std::sqrt(denom);
}

/// Peak-weight angles where the closed-form measure switches between zero
/// and positive values, ascending; the non-Markovian region is the open
/// interval between them. nullopt when no transition exists (q > 1 or q
/// undefined).
inline std::optional<CriticalPair> critical_xi(const SpectralParams& p, double tau) {
    const auto q = critical_q(p, tau);
    if (!q || *q > 1.0) return std::nullopt;
    const double a = 0.5 * std::acos(*q);
    const double b = 0.5 * std::acos(-*q);
    return CriticalPair{std::min(a, b), std::max(a, b), *q};
}

}  // namespace pqsl
