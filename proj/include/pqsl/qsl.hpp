// qsl.hpp — Bures angle, time-averaged generator norms and the unified
// quantum speed limit bound max{tau_1, tau_2, tau_inf} for a pure
// polarization state under dephasing.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "pqsl/dephasing.hpp"
#include "pqsl/errors.hpp"
#include "pqsl/linalg2.hpp"
#include "pqsl/quadrature.hpp"

namespace pqsl {

struct QslBounds {
    double tau1{0.0};     // p = 1   (ps)
    double tau2{0.0};     // p = 2   (ps)
    double tau_inf{0.0};  // p = inf (ps)
    double tau_qsl{0.0};  // max of the three
    double bures_angle{0.0};
    double drive_time{0.0};
    bool degenerate{false};  // initial state is a fixed point of the map
};

struct QslOptions {
    double rel_tol{1e-10};
    /// Minimum Kronrod nodes per carrier period 2 pi / (mean omega * |dn|).
    int nodes_per_carrier_period{20};
};

namespace detail {

constexpr double kFidelitySlack = 1e-12;

/// arccos(sqrt(F)) given 1 - F directly, which avoids cancellation for F near 1.
inline double angle_from_infidelity(double one_minus_f) {
    if (one_minus_f < -kFidelitySlack || one_minus_f > 1.0 + kFidelitySlack)
        throw NumericalDomainError("Bures angle: fidelity " + std::to_string(1.0 - one_minus_f) +
                                   " lies outside [0, 1]");
    const double x = std::clamp(one_minus_f, 0.0, 1.0);
    return std::atan2(std::sqrt(x), std::sqrt(1.0 - x));
}

}  // namespace detail

/// Bures angle between |psi0><psi0| and its dephased image, from Re kappa_tau:
/// theta = arccos sqrt(1 - (1 - Re kappa_tau) sin^2(2 alpha) / 2).
inline double bures_angle(PureStateAngle a, ComplexScalar kappa_tau) {
    if (!(std::abs(kappa_tau) <= 1.0 + 1e-9))
        throw NumericalDomainError("bures_angle: |kappa_tau| exceeds 1");
    const double s2 = std::sin(2.0 * a.alpha);
    return detail::angle_from_infidelity(0.5 * (1.0 - kappa_tau.real()) * s2 * s2);
}

/// Bures angle from the overlap <psi0|rho_tau|psi0> computed by a direct
/// matrix sandwich.
inline double bures_angle_direct(PureStateAngle a, const DensityMatrix2& rho_tau) {
    rho_tau.validate();
    const double v = a.amp_v();
    const double h = a.amp_h();
    const double overlap = v * v * rho_tau.rho_vv + h * h * rho_tau.rho_hh + 2.0 * v * h * rho_tau.rho_vh.real();
    return detail::angle_from_infidelity(1.0 - overlap);
}

/// rho_dot = L_t rho_t for the dephasing generator: zero diagonal,
/// off-diagonal rho_vh * kappa_dot.
inline Matrix2c dephasing_generator_image(ComplexScalar rho_vh, ComplexScalar kdot) {
    const ComplexScalar off = rho_vh * kdot;
    return {{{ComplexScalar{0.0, 0.0}, off}, {std::conj(off), ComplexScalar{0.0, 0.0}}}};
}

/// Schatten p-norm of a Hermitian 2x2 matrix from its singular values.
inline double generator_norm(const Matrix2c& rho_dot, NormOrder p) {
    if (!is_hermitian(rho_dot)) throw ParameterError("generator_norm: matrix is not Hermitian");
    return schatten_norm(singular_values(rho_dot), p);
}

/// ||L_t rho_t||_p / (|rho_vh| |kappa_dot|): both singular values coincide.
inline double norm_factor(NormOrder p) noexcept {
    switch (p) {
        case NormOrder::one: return 2.0;
        case NormOrder::two: return std::numbers::sqrt2;
        case NormOrder::infinity: return 1.0;
    }
    return 0.0;
}

namespace detail {

inline std::size_t carrier_panels(const SpectralParams& p, double tau, const QslOptions& opt) {
    const double mean_omega = 0.5 * (std::abs(p.omega1) + std::abs(p.omega2));
    const double period = 2.0 * std::numbers::pi / (mean_omega * std::abs(p.delta_n));
    const double nodes = std::ceil(tau / period) * opt.nodes_per_carrier_period;
    return static_cast<std::size_t>(std::max(1.0, std::ceil(nodes / 15.0)));
}

}  // namespace detail

/// Integral of |kappa_dot| over [0, tau].
inline double integrated_kappa_dot(const SpectralParams& p, double tau, const QslOptions& opt = {}) {
    p.validate();
    if (!(tau > 0.0)) throw ParameterError("integrated_kappa_dot: tau must be > 0");
    return quadrature::integrate([&](double t) { return abs_kappa_dot(p, t); }, 0.0, tau,
                                 detail::carrier_panels(p, tau, opt), {opt.rel_tol, 16},
                                 "integral of |kappa_dot|")
        .value;
}

/// Gamma_tau^p = (1/tau) int_0^tau ||L_t rho_t||_p dt via the closed-form
/// norm |rho_vh| |kappa_dot| times the p-dependent constant.
inline double gamma_p(const SpectralParams& p, PureStateAngle a, double tau, NormOrder order,
                      const QslOptions& opt = {}) {
    const double rho_vh = 0.5 * a.coherence_weight();
    if (!(tau > 0.0)) throw ParameterError("gamma_p: tau must be > 0");
    if (rho_vh == 0.0) return 0.0;
    return norm_factor(order) * rho_vh * integrated_kappa_dot(p, tau, opt) / tau;
}

/// Gamma_tau^p through the generic singular-value route: builds L_t rho_t at
/// each node and takes its Schatten norm. Same panel layout as gamma_p.
inline double gamma_p_generic(const SpectralParams& p, PureStateAngle a, double tau, NormOrder order,
                              const QslOptions& opt = {}) {
    p.validate();
    if (!(tau > 0.0)) throw ParameterError("gamma_p_generic: tau must be > 0");
    const ComplexScalar rho_vh = pure_state(a).rho_vh;
    auto integrand = [&](double t) {
        return generator_norm(dephasing_generator_image(rho_vh, kappa_dot(p, t)), order);
    };
    const auto r = quadrature::integrate(integrand, 0.0, tau, detail::carrier_panels(p, tau, opt),
                                         {opt.rel_tol, 16}, "generic generator norm integral");
    return r.value / tau;
}

/// Unified QSL bound. For alpha with sin 2 alpha == 0 (pole states) all
/// bounds are 0 and `degenerate` is set.
inline QslBounds qsl_time(const SpectralParams& p, PureStateAngle a, double tau, const QslOptions& opt = {}) {
    p.validate();
    if (!(tau > 0.0)) throw ParameterError("qsl_time: tau must be > 0");
    QslBounds b;
    b.drive_time = tau;
    if (a.coherence_weight() < 1e-14) {
        b.degenerate = true;
        return b;
    }
    b.bures_angle = bures_angle(a, kappa(p, tau));
    const double sin2 = std::pow(std::sin(b.bures_angle), 2);
    const double gamma_inf = gamma_p(p, a, tau, NormOrder::infinity, opt);
    b.tau_inf = sin2 / gamma_inf;
    b.tau1 = sin2 / (2.0 * gamma_inf);
    b.tau2 = sin2 / (std::numbers::sqrt2 * gamma_inf);
    b.tau_qsl = std::max({b.tau1, b.tau2, b.tau_inf});
    return b;
}

/// Single-expression form tau_QSL = 2 tau sin^2(theta) / (|sin 2 alpha| int |kappa_dot|).
inline double qsl_time_closed_form(const SpectralParams& p, PureStateAngle a, double tau, const QslOptions& opt = {}) {
    const double w = a.coherence_weight();
    if (w < 1e-14) return 0.0;
    const double theta = bures_angle(a, kappa(p, tau));
    return 2.0 * tau * std::pow(std::sin(theta), 2) / (w * integrated_kappa_dot(p, tau, opt));
}

}  // namespace pqsl
