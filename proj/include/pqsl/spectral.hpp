// spectral.hpp — two-peaked Gaussian frequency distribution of the photon
// and its characteristic function by direct quadrature.
//
// Units: angular frequencies in rad/ps, times in ps. A frequency quoted in
// PHz is read as angular, so 2.676 PHz -> 2676 rad/ps.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>

#include "pqsl/errors.hpp"
#include "pqsl/quadrature.hpp"

namespace pqsl {

using ComplexScalar = std::complex<double>;

/// Environment of the polarization qubit: two Gaussian peaks of common width
/// whose weights are cos^2(xi) and sin^2(xi), plus the birefringence
/// delta_n = n_V - n_H of the plate.
struct SpectralParams {
    double omega1{2676.0};  // rad/ps
    double omega2{2692.0};  // rad/ps
    double sigma{1.8};      // rad/ps
    double xi{std::numbers::pi / 4};
    double delta_n{0.01};

    double delta_omega() const noexcept { return omega2 - omega1; }
    /// Angular beat frequency of the two peaks as seen by the coherence, rad/ps.
    double beat() const noexcept { return std::abs(delta_omega() * delta_n); }
    /// pi / (delta_omega * |delta_n|): first instant of full destructive interference.
    double half_period() const noexcept { return std::numbers::pi / beat(); }
    /// 2 pi / (delta_omega * |delta_n|): the driving time used for the reference sweep.
    double window_end() const noexcept { return 2.0 * std::numbers::pi / beat(); }

    void validate() const {
        auto bad = [](const std::string& m) { throw ParameterError("SpectralParams: " + m); };
        if (!std::isfinite(omega1) || !std::isfinite(omega2) || !std::isfinite(sigma) ||
            !std::isfinite(xi) || !std::isfinite(delta_n))
            bad("all fields must be finite");
        if (!(sigma > 0.0)) bad("sigma must be > 0");
        if (!(omega2 > omega1)) bad("omega2 must exceed omega1");
        if (delta_n == 0.0) bad("delta_n must be non-zero");
        constexpr double slack = 1e-12;
        if (xi < -slack || xi > std::numbers::pi / 2 + slack) bad("xi must lie in [0, pi/2]");
    }

    SpectralParams with_xi(double x) const {
        SpectralParams p = *this;
        p.xi = x;
        return p;
    }
};

/// Unit-area Gaussian.
inline double gaussian(double omega, double center, double width) noexcept {
    const double z = (omega - center) / width;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * width);
}

/// Peak weights {cos^2 xi, sin^2 xi}. The larger one is formed as 1 minus
/// the smaller, which makes their floating-point sum exactly 1.
inline std::pair<double, double> peak_weights(double xi) noexcept {
    const double c = std::cos(xi);
    const double s = std::sin(xi);
    const double c2 = c * c;
    const double s2 = s * s;
    if (s2 <= 0.5) return {1.0 - s2, s2};
    return {c2, 1.0 - c2};
}

/// Weighted two-component Gaussian mixture. Unlike SpectralParams it carries
/// no ordering constraint on the centers, so it can represent peak swaps.
struct GaussianMixture {
    double center1;
    double center2;
    double width;
    double weight1;
    double weight2;

    static GaussianMixture from(const SpectralParams& p) {
        const auto [w1, w2] = peak_weights(p.xi);
        return {p.omega1, p.omega2, p.sigma, w1, w2};
    }

    double operator()(double omega) const noexcept {
        return weight1 * gaussian(omega, center1, width) + weight2 * gaussian(omega, center2, width);
    }
};

/// f(omega) for the two-peaked environment, in ps/rad.
inline double pdf(double omega, const SpectralParams& p) {
    p.validate();
    return GaussianMixture::from(p)(omega);
}

struct SpectralQuadrature {
    double rel_tol{1e-10};
    double half_width_sigmas{12.0};
    int nodes_per_oscillation{10};
};

/// Truncated support [omega1 - 12 sigma, omega2 + 12 sigma].
inline std::pair<double, double> support(const SpectralParams& p, const SpectralQuadrature& q = {}) {
    return {p.omega1 - q.half_width_sigmas * p.sigma, p.omega2 + q.half_width_sigmas * p.sigma};
}

namespace detail {

/// Panel count so that every e^{i omega delta_n t} oscillation carries at
/// least `nodes_per_oscillation` Kronrod nodes and each Gaussian is resolved.
inline std::size_t panel_count(double a, double b, double sigma, double phase_rate, const SpectralQuadrature& q) {
    constexpr double nodes_per_panel = 15.0;
    const double width = b - a;
    const double oscillations = std::abs(phase_rate) * width / (2.0 * std::numbers::pi);
    const double by_phase = std::ceil(oscillations * q.nodes_per_oscillation / nodes_per_panel);
    const double by_shape = std::ceil(width / sigma);
    return static_cast<std::size_t>(std::max({1.0, by_phase, by_shape}));
}

}  // namespace detail

/// Integral of any density over the truncated support of p.
template <class Density>
double integrate_density(Density&& f, const SpectralParams& p, const SpectralQuadrature& q = {}) {
    const auto [a, b] = support(p, q);
    const auto r = quadrature::integrate(f, a, b, detail::panel_count(a, b, p.sigma, 0.0, q),
                                         {q.rel_tol, 16}, "integrate_pdf");
    return r.value;
}

/// Normalization of f(omega); equals 1 up to the quadrature tolerance.
inline double integrate_pdf(const SpectralParams& p, const SpectralQuadrature& q = {}) {
    p.validate();
    return integrate_density(GaussianMixture::from(p), p, q);
}

/// Characteristic function of a density at phase rate delta_n * t:
/// integral of f(omega) e^{+i omega delta_n t}, real and imaginary parts
/// integrated separately.
template <class Density>
ComplexScalar characteristic_of(Density&& f, const SpectralParams& p, double t, const SpectralQuadrature& q = {}) {
    const double rate = p.delta_n * t;
    const auto [a, b] = support(p, q);
    const std::size_t panels = detail::panel_count(a, b, p.sigma, rate, q);
    const quadrature::Options opt{q.rel_tol, 16};
    // Integrate against the shifted phase (omega - mid) and restore the
    // carrier afterwards; this keeps the cos/sin arguments small.
    const double mid = 0.5 * (a + b);
    const auto re = quadrature::integrate([&](double w) { return f(w) * std::cos((w - mid) * rate); },
                                          a, b, panels, opt, "characteristic_numeric (real part)");
    const auto im = quadrature::integrate([&](double w) { return f(w) * std::sin((w - mid) * rate); },
                                          a, b, panels, opt, "characteristic_numeric (imaginary part)");
    return ComplexScalar{re.value, im.value} * std::polar(1.0, mid * rate);
}

/// kappa_t by quadrature of the spectral density; the reference for the
/// closed form in dephasing.hpp.
inline ComplexScalar characteristic_numeric(const SpectralParams& p, double t, const SpectralQuadrature& q = {}) {
    p.validate();
    if (!(t >= 0.0)) throw ParameterError("characteristic_numeric: t must be >= 0");
    return characteristic_of(GaussianMixture::from(p), p, t, q);
}

}  // namespace pqsl
