#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "pqsl/nonmarkov.hpp"
#include "pqsl/oracles.hpp"
#include "test_support.hpp"

using namespace pqsl;
using pqsl::test::kPi;
using pqsl::test::paper;

namespace {

double window() { return paper().window_end(); }

}  // namespace

TEST(Intervals, EmptyForSinglePeak) {
    EXPECT_TRUE(find_increasing_intervals(paper(0.0), window()).empty());
    EXPECT_TRUE(find_increasing_intervals(paper(kPi / 2), window()).empty());
}

TEST(Intervals, EqualWeightsStartAtCusp) {
    const auto p = paper();
    const auto iv = find_increasing_intervals(p, window());
    ASSERT_EQ(iv.size(), 1u);
    const auto& i = iv.intervals.front();
    EXPECT_EQ(i.start_kind, BoundaryKind::cusp);
    EXPECT_NEAR(i.start, p.half_period(), 1e-12);
    EXPECT_EQ(i.end_kind, BoundaryKind::stationary);
    // Interior maximum slightly before the window end.
    EXPECT_NEAR(i.end, 37.39124558, 1e-5);
    EXPECT_LT(i.end, window());
    EXPECT_GT(abs_kappa_dt(p, i.end - 1e-3), 0.0);
    EXPECT_LT(abs_kappa_dt(p, i.end + 1e-3), 0.0);
    EXPECT_TRUE(iv.starts_at_cusp());
}

TEST(Intervals, NonMarkovianJustBelowClosedFormEdge) {
    // The closed-form edge sits at 0.2966 rad, but the modulus already
    // revives here: it has a shallow minimum and maximum inside the window.
    const auto p = paper(0.29);
    const auto iv = find_increasing_intervals(p, window());
    ASSERT_EQ(iv.size(), 1u);
    EXPECT_NEAR(iv.intervals[0].start, 22.4279, 1e-3);
    EXPECT_NEAR(iv.intervals[0].end, 33.1148, 1e-3);
    EXPECT_EQ(iv.intervals[0].start_kind, BoundaryKind::stationary);
}

TEST(Intervals, EmptyBelowNumericOnset) {
    EXPECT_TRUE(find_increasing_intervals(paper(0.22), window()).empty());
    EXPECT_TRUE(find_increasing_intervals(paper(kPi / 2 - 0.22), window()).empty());
}

TEST(Intervals, StructuralInvariants) {
    std::mt19937_64 rng(73);
    for (int k = 0; k < 40; ++k) {
        const auto p = test::random_params(rng);
        const double tau = test::uniform(rng, 0.5, 3.0) * p.window_end();
        const auto iv = find_increasing_intervals(p, tau);
        double last = 0.0;
        for (const auto& i : iv.intervals) {
            EXPECT_GE(i.start, last);
            EXPECT_LT(i.start, i.end);
            EXPECT_LE(i.end, tau);
            last = i.end;
            const double mid = 0.5 * (i.start + i.end);
            EXPECT_GT(modulus_growth(p, mid), 0.0);
            for (auto [t, kind] : {std::pair{i.start, i.start_kind}, std::pair{i.end, i.end_kind}}) {
                if (kind == BoundaryKind::cusp) {
                    EXPECT_LT(abs_kappa(p, t), kCuspThreshold);
                } else if (kind == BoundaryKind::domain_edge) {
                    EXPECT_TRUE(t == 0.0 || t == tau);
                } else {
                    EXPECT_NEAR(abs_kappa_dt(p, t), 0.0, 1e-8);
                }
            }
        }
    }
}

TEST(Blp, ZeroForSinglePeak) {
    EXPECT_EQ(blp(paper(0.0), window()), 0.0);
    EXPECT_EQ(blp(paper(kPi / 2), window()), 0.0);
}

TEST(Blp, EqualWeightValue) { EXPECT_NEAR(blp(paper(), window()), 0.7883368389709259, 1e-9); }

TEST(Blp, ReferenceValues) {
    EXPECT_NEAR(blp(paper(0.5), window()), 0.2851077735556873, 1e-9);
    EXPECT_NEAR(blp(paper(0.29), window()), 0.029564476086, 1e-9);
}

TEST(Blp, SymmetricUnderComplementaryWeight) {
    for (double xi = 0.0; xi <= kPi / 4; xi += 0.05)
        EXPECT_NEAR(blp(paper(xi), window()), blp(paper(kPi / 2 - xi), window()), 1e-12) << "xi = " << xi;
}

TEST(Blp, MatchesDenseTrapezoid) {
    for (double xi : {0.27, 0.5, kPi / 4, 1.0}) {
        const auto p = paper(xi);
        EXPECT_NEAR(blp(p, window()), oracle::blp_trapezoid(p, window(), 1'000'000), 1e-6) << "xi = " << xi;
    }
}

TEST(ClosedForm, Examples) {
    const double tau = window();
    EXPECT_NEAR(blp_closed_form(paper(), tau), 0.7789375825619012, 1e-13);
    EXPECT_EQ(blp_closed_form(paper(0.0), tau), 0.0);
    EXPECT_NEAR(blp_closed_form_signed(paper(0.0), tau), 0.7789375825619012 - 0.9394, 2e-4);
    EXPECT_NEAR(std::abs(blp_closed_form(paper(), tau) - blp(paper(), tau)), 0.0094, 1e-3);
}

TEST(ClosedForm, RejectsTimesOutsideWindow) {
    EXPECT_THROW(blp_closed_form(paper(), 10.0), ParameterError);
    EXPECT_THROW(blp_closed_form(paper(), 50.0), ParameterError);
    EXPECT_THROW(critical_xi(paper(), 50.0), ParameterError);
}

TEST(Critical, PaperValues) {
    const auto c = critical_xi(paper(), window());
    ASSERT_TRUE(c);
    EXPECT_NEAR(c->q, 0.829138, 1e-6);
    EXPECT_NEAR(c->low, 0.2966158667108796, 1e-12);
    EXPECT_NEAR(c->high, 1.274180460084017, 1e-12);
    EXPECT_NEAR(c->low + c->high, kPi / 2, 1e-12);
}

TEST(Critical, BracketsClosedFormZeroSet) {
    const auto p = paper();
    const double tau = window();
    const auto c = critical_xi(p, tau);
    ASSERT_TRUE(c);
    EXPECT_NEAR(blp_closed_form(p.with_xi(c->low), tau), 0.0, 1e-10);
    EXPECT_NEAR(blp_closed_form(p.with_xi(c->high), tau), 0.0, 1e-10);
    for (int k = 1; k < 100; ++k) {
        const double xi = c->low + (c->high - c->low) * k / 100.0;
        EXPECT_GT(blp_closed_form(p.with_xi(xi), tau), 0.0);
    }
    for (double xi : {0.0, 0.1, c->low - 1e-6, c->high + 1e-6, 1.5})
        EXPECT_EQ(blp_closed_form(p.with_xi(xi), tau), 0.0);
}

TEST(Critical, MatchesBisection) {
    const auto p = paper();
    const double tau = window();
    const auto c = critical_xi(p, tau);
    ASSERT_TRUE(c);
    auto f = [&](double xi) { return blp_closed_form_signed(p.with_xi(xi), tau); };
    EXPECT_NEAR(roots::bisect_root(f, 0.0, kPi / 4), c->low, 1e-12);
    EXPECT_NEAR(roots::bisect_root(f, kPi / 4, kPi / 2), c->high, 1e-12);
}

TEST(Critical, NarrowPeaksOpenTheWholeRange) {
    SpectralParams p = paper();
    p.sigma = 1e-6;
    const auto c = critical_xi(p, p.window_end());
    ASSERT_TRUE(c);
    EXPECT_NEAR(c->low, 0.0, 1e-6);
    EXPECT_NEAR(c->high, kPi / 2, 1e-6);
}

TEST(Critical, NoTransitionAtWindowStart) {
    const auto p = paper();
    const double tau = p.half_period();
    EXPECT_FALSE(critical_xi(p, tau).has_value());
    for (int k = 0; k <= 50; ++k) EXPECT_NEAR(blp_closed_form(p.with_xi(kPi / 2 * k / 50.0), tau), 0.0, 1e-12);
}

TEST(Rhp, ZeroForSinglePeak) {
    const auto r = rhp(paper(0.0), window());
    EXPECT_EQ(r.value, 0.0);
    EXPECT_FALSE(r.saturated);
}

TEST(Rhp, SaturatesAtCusp) {
    const auto r = rhp(paper(), window());
    EXPECT_TRUE(r.saturated);
    EXPECT_NEAR(r.value, std::log(0.7883368389709259) - std::log(kCuspThreshold), 1e-8);
}

TEST(Rhp, FiniteAwayFromCusp) {
    const auto r = rhp(paper(0.5), window());
    EXPECT_FALSE(r.saturated);
    EXPECT_NEAR(r.value, 0.4462483743367671, 1e-8);
    EXPECT_GT(blp(paper(0.5), window()), 0.0);
}

TEST(Rhp, ZeroExactlyWhenBlpZero) {
    for (int k = 0; k <= 60; ++k) {
        const auto p = paper(kPi / 2 * k / 60.0);
        EXPECT_EQ(rhp(p, window()).value == 0.0, blp(p, window()) == 0.0) << "xi = " << p.xi;
    }
}

TEST(Ht, ZeroForSinglePeak) {
    for (double t : {0.5, 10.0, 39.0}) EXPECT_EQ(h_t(paper(0.0), t), 0.0);
}

TEST(Ht, SignalsCusp) { EXPECT_THROW(h_t(paper(), paper().half_period()), CuspError); }

TEST(Ht, MatchesTraceNormOracleInRevival) {
    const auto p = paper();
    const double t = 1.6 * p.half_period();
    EXPECT_GT(h_t(p, t), 0.0);
    EXPECT_NEAR(h_t(p, t), oracle::h_t_trace_norm(p, t), 1e-5);
}

TEST(Ht, MatchesTraceNormOracleAtRandomPoints) {
    std::mt19937_64 rng(79);
    int done = 0;
    while (done < 20) {
        const auto p = paper(test::uniform(rng, 0.0, kPi / 2));
        const double t = test::uniform(rng, 0.0, window());
        if (abs_kappa(p, t) <= 0.1) continue;
        EXPECT_NEAR(h_t(p, t), oracle::h_t_trace_norm(p, t), 1e-5);
        ++done;
    }
}

TEST(Ht, EigenvaluesMatchFourByFourMatrix) {
    std::mt19937_64 rng(83);
    const double eps = 1e-7;
    for (int k = 0; k < 20; ++k) {
        const auto p = paper(test::uniform(rng, 0.0, kPi / 2));
        const double t = test::uniform(rng, 0.0, window());
        if (abs_kappa(p, t) <= 0.1) continue;
        const Eigen::Matrix4cd m = oracle::intermediate_map_on_bell(p, t, eps);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
        std::array<double, 4> got{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2),
                                  es.eigenvalues()(3)};
        const auto [lo, hi] = divisibility_eigenvalues(p, t, eps);
        std::array<double, 4> want{0.0, 0.0, lo, hi};
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        // First-order expansion; the neglected |kappa_dot/kappa|^2 eps^2 term is ~1e-12.
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
    }
}

TEST(Ht, PositiveExactlyWhenModulusGrows) {
    for (double xi : {0.1, 0.29, 0.5, kPi / 4, 1.2}) {
        const auto p = paper(xi);
        for (int j = 1; j <= 2000; ++j) {
            const double t = window() * j / 2000.0;
            if (abs_kappa(p, t) < 1e-9) continue;
            const double d = abs_kappa_dt(p, t);
            if (std::abs(d) < 1e-12) continue;
            EXPECT_EQ(h_t(p, t) > 0.0, d > 0.0) << "xi = " << xi << ", t = " << t;
        }
    }
}
