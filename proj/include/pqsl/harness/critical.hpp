// critical.hpp — critical peak-weight angles by closed form and by
// independent bisection, plus the onset of numeric BLP backflow.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "pqsl/harness/config.hpp"
#include "pqsl/nonmarkov.hpp"
#include "pqsl/roots.hpp"

namespace pqsl::harness {

struct CriticalReport {
    double tau{0.0};
    std::optional<CriticalPair> closed_form;
    // Roots of the unclamped closed-form measure in xi found by bisection.
    double bisect_low{0.0};
    double bisect_high{0.0};
    // Edges of the xi range where the numeric BLP is non-zero.
    std::optional<double> numeric_low;
    std::optional<double> numeric_high;

    bool transition() const noexcept { return closed_form.has_value(); }
    double max_method_gap() const noexcept {
        if (!closed_form) return 0.0;
        return std::max(std::abs(closed_form->low - bisect_low), std::abs(closed_form->high - bisect_high));
    }
};

/// Edge of the non-zero region of the numeric BLP between a (zero) and b
/// (non-zero), to `width` rad.
inline double numeric_blp_edge(const SpectralParams& p, double tau, double a, double b, const ScanOptions& opt = {},
                               double width = 1e-9) {
    auto active = [&](double xi) { return !find_increasing_intervals(p.with_xi(xi), tau, opt).empty(); };
    const auto [lo, hi] = roots::bisect(active, a, b, width);
    return 0.5 * (lo + hi);
}

inline CriticalReport solve_critical(const RunConfig& cfg) {
    const SpectralParams& p = cfg.spectral;
    CriticalReport rep;
    rep.tau = cfg.tau;
    rep.closed_form = critical_xi(p, cfg.tau);
    if (!rep.closed_form) return rep;

    constexpr double quarter = std::numbers::pi / 4;
    auto f = [&](double xi) { return blp_closed_form_signed(p.with_xi(xi), cfg.tau); };
    rep.bisect_low = roots::bisect_root(f, 0.0, quarter);
    rep.bisect_high = roots::bisect_root(f, quarter, std::numbers::pi / 2);

    ScanOptions opt;
    opt.root_rel = cfg.tolerances.root_abs;
    auto active = [&](double xi) { return !find_increasing_intervals(p.with_xi(xi), cfg.tau, opt).empty(); };
    if (active(quarter)) {
        if (!active(0.0)) rep.numeric_low = numeric_blp_edge(p, cfg.tau, 0.0, quarter, opt);
        if (!active(std::numbers::pi / 2))
            rep.numeric_high = numeric_blp_edge(p, cfg.tau, std::numbers::pi / 2, quarter, opt);
    }
    return rep;
}

inline std::string format_report(const CriticalReport& r) {
    std::ostringstream out;
    out.precision(12);
    out << "tau_ps = " << r.tau << '\n';
    if (!r.transition()) {
        out << "no transition: the closed-form measure has no sign change in xi at this tau\n";
        return out.str();
    }
    const auto& c = *r.closed_form;
    out << "q = " << c.q << '\n'
        << "closed_form_xi_low_rad  = " << c.low << '\n'
        << "closed_form_xi_high_rad = " << c.high << '\n'
        << "bisection_xi_low_rad    = " << r.bisect_low << '\n'
        << "bisection_xi_high_rad   = " << r.bisect_high << '\n'
        << "max_difference_rad      = " << r.max_method_gap() << '\n'
        << "sum_minus_half_pi       = " << (c.low + c.high - std::numbers::pi / 2) << '\n';
    if (r.numeric_low && r.numeric_high) {
        out << "numeric_blp_onset_low_rad  = " << *r.numeric_low << " (offset " << (*r.numeric_low - c.low) << ")\n"
            << "numeric_blp_onset_high_rad = " << *r.numeric_high << " (offset " << (*r.numeric_high - c.high)
            << ")\n";
    } else {
        out << "numeric_blp_onset: backflow present over the whole xi range\n";
    }
    return out.str();
}

}  // namespace pqsl::harness
