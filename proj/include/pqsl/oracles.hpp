// oracles.hpp — independent reference computations used by the test suites
// and by `photon-qsl check`. Every routine here takes a different numerical
// path from the production kernel it validates: dense-grid trapezoid sums,
// finite differences, Eigen decompositions.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pqsl/dephasing.hpp"
#include "pqsl/linalg2.hpp"
#include "pqsl/roots.hpp"

namespace pqsl::oracle {

/// Composite trapezoid rule on n uniformly spaced nodes.
template <class F>
double trapezoid(F f, double a, double b, std::size_t nodes) {
    const double h = (b - a) / static_cast<double>(nodes - 1);
    double sum = 0.5 * (f(a) + f(b));
    for (std::size_t k = 1; k + 1 < nodes; ++k) sum += f(a + h * static_cast<double>(k));
    return sum * h;
}

/// Central finite difference of the closed-form kappa.
inline ComplexScalar kappa_dot_fd(const SpectralParams& p, double t, double h = 1e-6) {
    return (kappa(p, t + h) - kappa(p, t - h)) / (2.0 * h);
}

/// Singular values via Eigen's Jacobi SVD, descending.
inline std::array<double, 2> singular_values_svd(const Matrix2c& a) {
    Eigen::Matrix2cd m;
    m << a[0][0], a[0][1], a[1][0], a[1][1];
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues();
    return {sv(0), sv(1)};
}

/// Trace norm of a Hermitian matrix as the sum of |eigenvalues|.
inline double trace_norm(const Eigen::Matrix4cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

/// (Lambda_{t+eps,t} x 1) applied to the projector on (|VV> + |HH>)/sqrt(2).
/// Basis order |s s'> = VV, VH, HV, HH; the intermediate dephasing map scales
/// system coherences by kappa_{t+eps} / kappa_t.
inline Eigen::Matrix4cd intermediate_map_on_bell(const SpectralParams& p, double t, double eps) {
    const ComplexScalar ratio = kappa(p, t + eps) / kappa(p, t);
    Eigen::Vector4cd psi(1.0, 0.0, 0.0, 1.0);
    psi /= std::sqrt(2.0);
    Eigen::Matrix4cd rho = psi * psi.adjoint();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const int si = i / 2;
            const int sj = j / 2;
            if (si == 0 && sj == 1) rho(i, j) *= ratio;
            if (si == 1 && sj == 0) rho(i, j) *= std::conj(ratio);
        }
    return rho;
}

/// Finite-eps RHP rate (||(Lambda_{t+eps,t} x 1) rho||_1 - 1) / eps.
inline double h_t_trace_norm(const SpectralParams& p, double t, double eps = 1e-7) {
    return (trace_norm(intermediate_map_on_bell(p, t, eps)) - 1.0) / eps;
}

/// d|kappa|/dt by trapezoid-friendly evaluation; 0 at a cusp node.
inline double abs_kappa_dt_or_zero(const SpectralParams& p, double t) {
    try {
        return abs_kappa_dt(p, t);
    } catch (const CuspError&) {
        return 0.0;
    }
}

/// BLP as the trapezoid integral of max(0, d|kappa|/dt) on a dense grid.
inline double blp_trapezoid(const SpectralParams& p, double tau, std::size_t nodes = 1'000'000) {
    return trapezoid([&](double t) { return std::max(0.0, abs_kappa_dt_or_zero(p, t)); }, 0.0, tau, nodes);
}

/// BLP as the sum of positive increments of |kappa| sampled on a dense grid.
inline double blp_dense_increments(const SpectralParams& p, double tau, std::size_t nodes = 1'000'000) {
    double total = 0.0;
    double prev = abs_kappa(p, 0.0);
    for (std::size_t k = 1; k < nodes; ++k) {
        const double cur = abs_kappa(p, roots::grid_point(0.0, tau, nodes, k));
        if (cur > prev) total += cur - prev;
        prev = cur;
    }
    return total;
}

/// Integral of |kappa_dot| by the trapezoid rule.
inline double integrated_kappa_dot_trapezoid(const SpectralParams& p, double tau, std::size_t nodes = 1'000'000) {
    return trapezoid([&](double t) { return std::abs(kappa_dot(p, t)); }, 0.0, tau, nodes);
}

}  // namespace pqsl::oracle
