#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pqsl/dephasing.hpp"
#include "pqsl/oracles.hpp"
#include "test_support.hpp"

using namespace pqsl;
using pqsl::test::kPi;
using pqsl::test::paper;

TEST(Kappa, IsExactlyOneAtZero) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 200; ++k) {
        const auto p = test::random_params(rng);
        EXPECT_EQ(kappa(p, 0.0), ComplexScalar(1.0, 0.0));
    }
    EXPECT_EQ(kappa(paper(), 0.0), ComplexScalar(1.0, 0.0));
}

TEST(Kappa, VanishesAtEqualWeightInterference) {
    const auto p = paper();
    EXPECT_LT(std::abs(kappa(p, p.half_period())), 1e-15);
}

TEST(Kappa, ModulusAtWindowEnd) {
    const auto p = paper();
    const double tau = p.window_end();
    EXPECT_NEAR(std::abs(kappa(p, tau)), 0.7789375825619012, 1e-14);
    EXPECT_NEAR(std::abs(kappa(p, tau)), std::exp(-0.5 * std::pow(1.8 * 0.01 * tau, 2)), 1e-15);
    EXPECT_NEAR(abs_kappa(p, tau), std::abs(kappa(p, tau)), 1e-15);
}

TEST(Kappa, ModulusBoundedByOne) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        const auto p = test::random_params(rng);
        for (int j = 1; j <= 400; ++j) {
            const double t = 3.0 * p.window_end() * j / 400.0;
            const double m = abs_kappa(p, t);
            ASSERT_LE(m, 1.0 + 1e-12);
            ASSERT_LT(m, 1.0) << "equality only at t = 0";
        }
    }
}

TEST(KappaDot, AtOriginForSinglePeak) {
    const auto d = kappa_dot(paper(0.0), 0.0);
    EXPECT_EQ(d.real(), 0.0);
    EXPECT_NEAR(d.imag(), 26.76, 1e-12);
}

TEST(KappaDot, SinglePeakFactorization) {
    const auto p = paper(kPi / 2);
    const double sd2 = std::pow(p.sigma * p.delta_n, 2);
    for (double t : {0.5, 3.0, 17.0, 40.0, 70.0}) {
        const ComplexScalar expected = ComplexScalar(-sd2 * t, p.omega2 * p.delta_n) * kappa(p, t);
        EXPECT_LT(std::abs(kappa_dot(p, t) - expected), 1e-13 * std::abs(expected) + 1e-15);
    }
}

TEST(KappaDot, MatchesCentralDifferences) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        const auto p = test::random_params(rng);
        const double t = test::uniform(rng, 0.01, 2.0 * p.window_end());
        const ComplexScalar a = kappa_dot(p, t);
        EXPECT_LE(std::abs(a - oracle::kappa_dot_fd(p, t, 1e-6)) / std::abs(a), 1e-6) << "case " << k;
        EXPECT_NEAR(abs_kappa_dot(p, t), std::abs(a), 1e-12 * std::abs(a));
    }
}

TEST(AbsKappaDt, SinglePeakDecay) {
    const auto p = paper(0.0);
    const double sd2 = std::pow(p.sigma * p.delta_n, 2);
    for (double t : {1.0, 10.0, 39.0}) {
        const double expected = -sd2 * t * std::exp(-0.5 * sd2 * t * t);
        EXPECT_NEAR(abs_kappa_dt(p, t), expected, 1e-15);
        EXPECT_LT(abs_kappa_dt(p, t), 0.0);
    }
}

TEST(AbsKappaDt, ZeroAtOrigin) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(abs_kappa_dt(test::random_params(rng), 0.0), 0.0);
}

TEST(AbsKappaDt, PositiveInRevivalRegion) {
    const auto p = paper();
    const double t = 1.5 * p.half_period();
    EXPECT_GT(abs_kappa_dt(p, t), 0.0);
    EXPECT_GT(abs_kappa(p, t + 1e-4), abs_kappa(p, t - 1e-4));
}

TEST(AbsKappaDt, MatchesDifferenceOfModulus) {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 100; ++k) {
        const auto p = test::random_params(rng);
        const double t = test::uniform(rng, 0.1, 2.0 * p.window_end());
        if (abs_kappa(p, t) < 1e-3) continue;
        const double h = 1e-6;
        const double fd = (abs_kappa(p, t + h) - abs_kappa(p, t - h)) / (2 * h);
        EXPECT_NEAR(abs_kappa_dt(p, t), fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST(AbsKappaDt, SignalsCusp) {
    const auto p = paper();
    EXPECT_THROW(abs_kappa_dt(p, p.half_period()), CuspError);
    try {
        abs_kappa_dt(p, 3.0 * p.half_period());
        FAIL() << "expected a cusp";
    } catch (const CuspError& e) {
        EXPECT_DOUBLE_EQ(e.time(), 3.0 * p.half_period());
    }
}

TEST(ModulusGrowth, HasSignOfModulusDerivative) {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 200; ++k) {
        const auto p = test::random_params(rng);
        const double t = test::uniform(rng, 0.1, 2.0 * p.window_end());
        if (abs_kappa(p, t) < 1e-6) continue;
        const double d = abs_kappa_dt(p, t);
        if (std::abs(d) < 1e-9) continue;
        EXPECT_EQ(d > 0.0, modulus_growth(p, t) > 0.0);
    }
}

TEST(Revival, PresentInsideTheTransitionRegion) {
    // A revival exists for intermediate weights; see the decisions notes for
    // why very unequal weights stay monotone at these parameters.
    for (double xi = 0.3; xi <= 1.27; xi += 0.05) {
        const auto p = paper(xi);
        bool revival = false;
        for (int j = 1; j <= 4000 && !revival; ++j) revival = modulus_growth(p, p.window_end() * j / 4000.0) > 0.0;
        EXPECT_TRUE(revival) << "xi = " << xi;
    }
}

TEST(Revival, AbsentForSinglePeak) {
    for (double xi : {0.0, kPi / 2}) {
        const auto p = paper(xi);
        for (int j = 0; j <= 4000; ++j) EXPECT_LE(abs_kappa_dt(p, 5.0 * p.window_end() * j / 4000.0), 0.0);
    }
}

TEST(PureState, Examples) {
    const auto v = pure_state({0.0});
    EXPECT_EQ(v.rho_vv, 1.0);
    EXPECT_EQ(v.rho_hh, 0.0);
    EXPECT_EQ(v.rho_vh, ComplexScalar(0.0, 0.0));

    const auto d = pure_state({kPi / 4});
    EXPECT_NEAR(d.rho_vv, 0.5, 1e-15);
    EXPECT_NEAR(d.rho_hh, 0.5, 1e-15);
    EXPECT_NEAR(d.rho_vh.real(), 0.5, 1e-15);
    EXPECT_EQ(d.rho_vh.imag(), 0.0);

    const auto s = pure_state({kPi / 6});
    EXPECT_NEAR(s.rho_hh, 0.25, 1e-15);
    EXPECT_NEAR(s.rho_vh.real(), std::sqrt(3.0) / 4.0, 1e-15);
    EXPECT_NEAR(s.determinant(), 0.0, 1e-15);
}

TEST(Evolve, IdentityAtZero) {
    const auto rho = pure_state({0.4});
    const auto out = evolve(rho, paper(), 0.0);
    EXPECT_EQ(out.rho_vv, rho.rho_vv);
    EXPECT_EQ(out.rho_hh, rho.rho_hh);
    EXPECT_EQ(out.rho_vh, rho.rho_vh);
}

TEST(Evolve, DiagonalStatesAreFixed) {
    const DensityMatrix2 rho{0.3, 0.7, {0.0, 0.0}};
    for (double t : {1.0, 20.0, 39.0}) {
        const auto out = evolve(rho, paper(0.7), t);
        EXPECT_EQ(out.rho_vv, 0.3);
        EXPECT_EQ(out.rho_hh, 0.7);
        EXPECT_EQ(std::abs(out.rho_vh), 0.0);
    }
}

TEST(Evolve, FullyDephasedAtInterference) {
    const auto p = paper();
    const auto out = evolve(pure_state({kPi / 4}), p, p.half_period());
    EXPECT_LT(std::abs(out.rho_vh), 1e-15);
    const auto ev = out.eigenvalues();
    EXPECT_NEAR(ev[0], 0.5, 1e-15);
    EXPECT_NEAR(ev[1], 0.5, 1e-15);
}

TEST(Evolve, PreservesTraceAndPositivity) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 300; ++k) {
        const auto p = test::random_params(rng);
        const auto rho = pure_state({test::uniform(rng, -kPi, kPi)});
        const auto out = evolve(rho, p, test::uniform(rng, 0.0, 3.0 * p.window_end()));
        EXPECT_EQ(out.trace(), rho.trace());
        EXPECT_GE(out.determinant(), -1e-12);
        EXPECT_GE(out.eigenvalues()[0], -1e-12);
    }
}

TEST(Evolve, IsLinear) {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 50; ++k) {
        const auto p = test::random_params(rng);
        const double t = test::uniform(rng, 0.0, 2.0 * p.window_end());
        const auto a = pure_state({test::uniform(rng, 0.0, kPi)});
        const auto b = pure_state({test::uniform(rng, 0.0, kPi)});
        const double w = test::uniform(rng, 0.0, 1.0);
        const DensityMatrix2 mix{w * a.rho_vv + (1 - w) * b.rho_vv, w * a.rho_hh + (1 - w) * b.rho_hh,
                                 w * a.rho_vh + (1 - w) * b.rho_vh};
        const auto lhs = evolve(mix, p, t);
        const auto ea = evolve(a, p, t);
        const auto eb = evolve(b, p, t);
        EXPECT_NEAR(lhs.rho_vv, w * ea.rho_vv + (1 - w) * eb.rho_vv, 1e-15);
        EXPECT_LT(std::abs(lhs.rho_vh - (w * ea.rho_vh + (1 - w) * eb.rho_vh)), 1e-15);
    }
}

TEST(Evolve, RejectsUnphysicalInput) {
    EXPECT_THROW(evolve(DensityMatrix2{0.6, 0.6, {0.0, 0.0}}, paper(), 1.0), ParameterError);
    EXPECT_THROW(evolve(DensityMatrix2{0.5, 0.5, {0.9, 0.0}}, paper(), 1.0), ParameterError);
}
