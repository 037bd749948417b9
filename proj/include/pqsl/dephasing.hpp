// dephasing.hpp — closed-form dephasing factor kappa_t and the induced
// evolution of the photon polarization state.
//
//   kappa_t = exp(-sigma^2 dn^2 t^2 / 2) (cos^2 xi e^{i w1 dn t} + sin^2 xi e^{i w2 dn t})
//
// Evaluated as envelope * carrier * beat with beat = cos^2 xi + sin^2 xi e^{i dw dn t},
// so the modulus never depends on the large carrier phase w1 dn t.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "pqsl/errors.hpp"
#include "pqsl/spectral.hpp"

namespace pqsl {

/// |kappa_t| below this is treated as an exact zero of the coherence.
inline constexpr double kCuspThreshold = 1e-13;

/// Polarization state in the (V, H) basis. Only the upper triangle is
/// stored; rho_hv = conj(rho_vh).
struct DensityMatrix2 {
    double rho_vv{1.0};
    double rho_hh{0.0};
    ComplexScalar rho_vh{0.0, 0.0};

    double trace() const noexcept { return rho_vv + rho_hh; }
    /// rho_vv rho_hh - |rho_vh|^2; non-negative for a physical state.
    double determinant() const noexcept { return rho_vv * rho_hh - std::norm(rho_vh); }

    /// Eigenvalues in ascending order.
    std::array<double, 2> eigenvalues() const noexcept {
        const double half_tr = 0.5 * trace();
        const double half_gap = std::hypot(0.5 * (rho_vv - rho_hh), std::abs(rho_vh));
        return {half_tr - half_gap, half_tr + half_gap};
    }

    void validate(double tol = 1e-12) const {
        if (!std::isfinite(rho_vv) || !std::isfinite(rho_hh) || !std::isfinite(rho_vh.real()) ||
            !std::isfinite(rho_vh.imag()))
            throw ParameterError("DensityMatrix2: entries must be finite");
        if (std::abs(trace() - 1.0) > tol) throw ParameterError("DensityMatrix2: trace must be 1");
        if (rho_vv < -tol || rho_hh < -tol) throw ParameterError("DensityMatrix2: negative population");
        if (determinant() < -tol) throw ParameterError("DensityMatrix2: state is not positive semidefinite");
    }
};

/// Pure initial state sin(alpha)|H> + cos(alpha)|V>.
struct PureStateAngle {
    double alpha{std::numbers::pi / 4};

    /// Amplitudes (V, H).
    double amp_v() const noexcept { return std::cos(alpha); }
    double amp_h() const noexcept { return std::sin(alpha); }
    /// |sin 2 alpha|; zero for the two dephasing-free pole states.
    double coherence_weight() const noexcept { return std::abs(std::sin(2.0 * alpha)); }
};

inline DensityMatrix2 pure_state(PureStateAngle a) {
    const double c = a.amp_v();
    const double s = a.amp_h();
    return {c * c, s * s, ComplexScalar{s * c, 0.0}};
}

namespace detail {

struct KappaParts {
    double envelope;        // exp(-sigma^2 dn^2 t^2 / 2)
    double decay_rate;      // sigma^2 dn^2 t
    ComplexScalar carrier;  // e^{i w1 dn t}
    ComplexScalar beat;     // cos^2 xi + sin^2 xi e^{i dw dn t}
    double w1;              // cos^2 xi
    double w2;              // sin^2 xi
    double beat_phase;      // dw dn t
};

inline KappaParts kappa_parts(const SpectralParams& p, double t) {
    const auto [w1, w2] = peak_weights(p.xi);
    const double sd = p.sigma * p.delta_n;
    const double phase = p.delta_omega() * p.delta_n * t;
    KappaParts k{};
    k.w1 = w1;
    k.w2 = w2;
    k.envelope = std::exp(-0.5 * sd * sd * t * t);
    k.decay_rate = sd * sd * t;
    k.carrier = std::polar(1.0, p.omega1 * p.delta_n * t);
    k.beat_phase = phase;
    k.beat = ComplexScalar{k.w1, 0.0} + k.w2 * std::polar(1.0, phase);
    return k;
}

}  // namespace detail

/// Closed-form dephasing factor kappa_t (phase convention e^{+i omega dn t}).
inline ComplexScalar kappa(const SpectralParams& p, double t) {
    p.validate();
    const auto k = detail::kappa_parts(p, t);
    return k.envelope * k.carrier * k.beat;
}

/// |kappa_t|, computed without the carrier phase.
inline double abs_kappa(const SpectralParams& p, double t) {
    p.validate();
    const auto k = detail::kappa_parts(p, t);
    return k.envelope * std::abs(k.beat);
}

/// Analytic time derivative of kappa_t.
inline ComplexScalar kappa_dot(const SpectralParams& p, double t) {
    p.validate();
    const auto k = detail::kappa_parts(p, t);
    const ComplexScalar a1{-k.decay_rate, p.omega1 * p.delta_n};
    const ComplexScalar a2{-k.decay_rate, p.omega2 * p.delta_n};
    return k.envelope * k.carrier * (a1 * k.w1 + a2 * k.w2 * std::polar(1.0, k.beat_phase));
}

/// |d kappa_t / dt|.
inline double abs_kappa_dot(const SpectralParams& p, double t) {
    p.validate();
    const auto k = detail::kappa_parts(p, t);
    const ComplexScalar a1{-k.decay_rate, p.omega1 * p.delta_n};
    const ComplexScalar a2{-k.decay_rate, p.omega2 * p.delta_n};
    return k.envelope * std::abs(a1 * k.w1 + a2 * k.w2 * std::polar(1.0, k.beat_phase));
}

/// A quantity with the sign of d|kappa_t|/dt that stays continuous through
/// cusps: (d|kappa_t|/dt) * |beat|. It vanishes at t = 0 and at every cusp.
inline double modulus_growth(const SpectralParams& p, double t) {
    const auto k = detail::kappa_parts(p, t);
    const double beta = p.delta_omega() * p.delta_n;
    return k.envelope * (-k.decay_rate * std::norm(k.beat) - beta * k.w1 * k.w2 * std::sin(k.beat_phase));
}

/// d|kappa_t|/dt = Re(conj(kappa) kappa_dot) / |kappa|. Throws CuspError
/// where |kappa_t| < kCuspThreshold.
inline double abs_kappa_dt(const SpectralParams& p, double t) {
    p.validate();
    const auto k = detail::kappa_parts(p, t);
    const double beat_abs = std::abs(k.beat);
    if (k.envelope * beat_abs < kCuspThreshold)
        throw CuspError("abs_kappa_dt: |kappa_t| vanishes at t = " + std::to_string(t), t);
    const double beta = p.delta_omega() * p.delta_n;
    return k.envelope * (-k.decay_rate * beat_abs - beta * k.w1 * k.w2 * std::sin(k.beat_phase) / beat_abs);
}

/// The dephasing map applied to rho0 for duration t: populations are kept,
/// the coherence is multiplied by kappa_t.
inline DensityMatrix2 evolve(const DensityMatrix2& rho0, const SpectralParams& p, double t) {
    rho0.validate();
    DensityMatrix2 out = rho0;
    out.rho_vh = rho0.rho_vh * kappa(p, t);
    return out;
}

}  // namespace pqsl
