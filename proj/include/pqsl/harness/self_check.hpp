// self_check.hpp — oracle self-tests behind `photon-qsl check`.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pqsl/harness/config.hpp"
#include "pqsl/nonmarkov.hpp"
#include "pqsl/oracles.hpp"
#include "pqsl/qsl.hpp"
#include "pqsl/spectral.hpp"

namespace pqsl::harness {

struct CheckResult {
    std::string name;
    bool passed;
    double measured;
    double limit;
};

inline std::vector<CheckResult> run_self_checks(const RunConfig& cfg) {
    const SpectralParams& base = cfg.spectral;
    const double tau = cfg.tau;
    std::vector<CheckResult> out;
    auto record = [&](std::string name, double measured, double limit) {
        out.push_back({std::move(name), measured <= limit, measured, limit});
    };

    record("pdf normalization |integral - 1|", std::abs(integrate_pdf(base) - 1.0), 1e-10);

    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double t = 2.0 * tau * k / 200.0;
        worst = std::max(worst, std::abs(kappa(base, t) - characteristic_numeric(base, t)));
    }
    record("closed-form kappa vs quadrature, max abs error", worst, 1e-8);

    worst = 0.0;
    for (int k = 1; k <= 50; ++k) {
        const double t = tau * k / 50.0;
        const ComplexScalar a = kappa_dot(base, t);
        worst = std::max(worst, std::abs(a - oracle::kappa_dot_fd(base, t)) / std::abs(a));
    }
    record("kappa_dot vs central difference, max rel error", worst, 1e-6);

    worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const PureStateAngle a{k * std::numbers::pi / 42.0};
        const double t = tau * k / 20.0;
        const double direct = bures_angle_direct(a, evolve(pure_state(a), base, t));
        worst = std::max(worst, std::abs(direct - bures_angle(a, kappa(base, t))));
    }
    record("Bures angle closed form vs direct overlap", worst, 1e-12);

    const PureStateAngle a{cfg.alpha};
    if (a.coherence_weight() > 1e-14) {
        const QslOptions qopt{cfg.tolerances.quadrature_rel, 20};
        const double g1 = gamma_p_generic(base, a, tau, NormOrder::one, qopt);
        const double gi = gamma_p(base, a, tau, NormOrder::infinity, qopt);
        record("Gamma^1 (singular values) / Gamma^inf (closed form) - 2", std::abs(g1 / gi - 2.0), 1e-9);
        const double tq = qsl_time(base, a, tau, qopt).tau_qsl;
        record("unified bound vs single-expression tau_QSL, rel",
               std::abs(tq - qsl_time_closed_form(base, a, tau, qopt)) / tq, 1e-12);
    }

    worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const SpectralParams p = base.with_xi(std::numbers::pi / 2 * k / 21.0);
        const double t = tau * (0.05 + 0.9 * k / 20.0);
        if (abs_kappa(p, t) <= 0.1) continue;
        worst = std::max(worst, std::abs(h_t(p, t) - oracle::h_t_trace_norm(p, t, 1e-7)));
    }
    record("h_t vs 4x4 trace-norm finite difference", worst, 1e-5);

    record("BLP endpoints vs trapezoid of max(0, d|kappa|/dt)",
           std::abs(blp(base, tau) - oracle::blp_trapezoid(base, tau, 1'000'000)), 1e-6);

    if (tau >= base.half_period() * (1 - 1e-12) && tau <= base.window_end() * (1 + 1e-12)) {
        if (const auto c = critical_xi(base, tau)) {
            auto f = [&](double xi) { return blp_closed_form_signed(base.with_xi(xi), tau); };
            const double lo = roots::bisect_root(f, 0.0, std::numbers::pi / 4);
            record("critical angle closed form vs bisection", std::abs(lo - c->low), 1e-4);
        }
    }
    return out;
}

inline std::string format_checks(const std::vector<CheckResult>& results) {
    std::ostringstream out;
    out.precision(3);
    for (const auto& r : results)
        out << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << std::scientific << r.measured
            << " (limit " << r.limit << ")\n";
    return out.str();
}

}  // namespace pqsl::harness
