// linalg2.hpp — 2x2 complex matrices: singular values and Schatten norms.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "pqsl/errors.hpp"

namespace pqsl {

using Matrix2c = std::array<std::array<std::complex<double>, 2>, 2>;

enum class NormOrder { one, two, infinity };

inline const char* to_string(NormOrder p) noexcept {
    switch (p) {
        case NormOrder::one: return "1";
        case NormOrder::two: return "2";
        case NormOrder::infinity: return "inf";
    }
    return "?";
}

/// Singular values of a 2x2 complex matrix, descending.
///
/// sigma_1^2 is the larger eigenvalue of A^H A, taken with hypot so that
/// nearly equal singular values do not cancel; sigma_2 = |det A| / sigma_1.
inline std::array<double, 2> singular_values(const Matrix2c& a) noexcept {
    const double p = std::norm(a[0][0]) + std::norm(a[1][0]);
    const double q = std::norm(a[0][1]) + std::norm(a[1][1]);
    const std::complex<double> w = std::conj(a[0][0]) * a[0][1] + std::conj(a[1][0]) * a[1][1];
    const double s1 = std::sqrt(0.5 * (p + q) + std::hypot(0.5 * (p - q), std::abs(w)));
    if (s1 == 0.0) return {0.0, 0.0};
    const double det = std::abs(a[0][0] * a[1][1] - a[0][1] * a[1][0]);
    return {s1, std::min(s1, det / s1)};
}

/// Schatten p-norm (sum a_i^p)^{1/p} for p in {1, 2, inf}.
inline double schatten_norm(const std::array<double, 2>& sv, NormOrder p) {
    switch (p) {
        case NormOrder::one: return sv[0] + sv[1];
        case NormOrder::two: return std::hypot(sv[0], sv[1]);
        case NormOrder::infinity: return std::max(sv[0], sv[1]);
    }
    throw ParameterError("schatten_norm: unsupported norm order");
}

inline bool is_hermitian(const Matrix2c& a, double tol = 1e-12) noexcept {
    return std::abs(a[0][0].imag()) <= tol && std::abs(a[1][1].imag()) <= tol &&
           std::abs(a[0][1] - std::conj(a[1][0])) <= tol;
}

}  // namespace pqsl
