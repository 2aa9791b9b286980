#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mupoly/oracle.hpp"
#include "test_support.hpp"

using namespace mupoly;
using mupoly::testing::quintic;

TEST(DurandKerner, Quintic) {
    const RootReport r = durand_kerner_roots(quintic());
    ASSERT_EQ(r.all_roots.size(), 5u);
    ASSERT_EQ(r.real_roots_sorted.size(), 3u);
    EXPECT_NEAR(r.real_roots_sorted[0], 1.0, 1e-10);
    EXPECT_NEAR(r.real_roots_sorted[1], 2.0, 1e-10);
    EXPECT_NEAR(r.real_roots_sorted[2], 3.0, 1e-10);
    for (const Complex& want : mupoly::testing::quintic_roots()) {
        double best = 1e300;
        for (const Complex& z : r.all_roots) best = std::min(best, std::abs(z - want));
        EXPECT_LT(best, 1e-9);
    }
    EXPECT_LT(r.residual_max, 1e-10);
}

TEST(DurandKerner, LinearAndComplexPair) {
    const RootReport lin = durand_kerner_roots(Polynomial{-4.5, 1});
    ASSERT_EQ(lin.real_roots_sorted.size(), 1u);
    EXPECT_NEAR(lin.real_roots_sorted[0], 4.5, 1e-12);

    const RootReport pair = durand_kerner_roots(Polynomial{2, -2, 1});
    EXPECT_TRUE(pair.real_roots_sorted.empty());
    ASSERT_EQ(pair.all_roots.size(), 2u);
    EXPECT_NEAR(std::abs(pair.all_roots[0] - Complex(1, -1)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(pair.all_roots[1] - Complex(1, 1)), 0.0, 1e-10);
}

TEST(DurandKerner, RejectsConstant) { EXPECT_THROW((void)durand_kerner_roots(Polynomial{3}), Error); }

TEST(DurandKerner, ReportsNoConvergence) {
    try {
        (void)durand_kerner_roots(quintic(), 2);
        FAIL() << "expected OracleNoConvergence";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OracleNoConvergence);
    }
}

TEST(DurandKerner, RecoversRandomRoots) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = mupoly::testing::random_case(rng);
        const RootReport r = durand_kerner_roots(c.f);
        ASSERT_EQ(r.all_roots.size(), c.roots.size());
        // greedy minimal-distance assignment
        std::vector<bool> used(r.all_roots.size(), false);
        for (const Complex& want : c.roots) {
            std::size_t best = 0;
            double dist = 1e300;
            for (std::size_t i = 0; i < r.all_roots.size(); ++i)
                if (!used[i] && std::abs(r.all_roots[i] - want) < dist) {
                    dist = std::abs(r.all_roots[i] - want);
                    best = i;
                }
            used[best] = true;
            EXPECT_LT(dist, 1e-6) << "trial " << trial;
        }
        ASSERT_EQ(r.real_roots_sorted.size(), c.real_sorted.size()) << "trial " << trial;
        EXPECT_TRUE(std::is_sorted(r.real_roots_sorted.begin(), r.real_roots_sorted.end()));
        for (double root : r.real_roots_sorted)
            EXPECT_LE(std::abs(eval_horner(c.f, root)), 1e-7 * (1 + c.f.max_abs_coeff()));
    }
}

TEST(BracketIndex, Examples) {
    const std::vector<double> roots{1, 2, 3};
    EXPECT_EQ(bracket_index(roots, 2.5), 2);
    EXPECT_EQ(bracket_index(roots, 0.5), 0);
    EXPECT_EQ(bracket_index(roots, 10.0), 3);
    EXPECT_EQ(bracket_index(roots, 2.0), 2);
    EXPECT_EQ(bracket_index(roots, 2.0 - 1e-10), 2);
    EXPECT_THROW((void)bracket_index(roots, 0.0), Error);
}

TEST(BracketIndex, ConsistentWithSentinels) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> roots(static_cast<std::size_t>(trial % 6));
        for (double& r : roots) r = u(rng);
        std::sort(roots.begin(), roots.end());
        const double x0 = u(rng);
        const int k = bracket_index(roots, x0);
        const double lo = k == 0 ? 0.0 : roots[static_cast<std::size_t>(k - 1)];
        const double hi = k == static_cast<int>(roots.size()) ? 1e300 : roots[static_cast<std::size_t>(k)];
        EXPECT_LE(lo, x0 + 1e-9);
        EXPECT_LE(x0, hi);
    }
}

TEST(Bisection, Examples) {
    EXPECT_NEAR(refine_real_root_bisection(quintic(), 1.5, 2.5, 1e-12), 2.0, 1e-12);
    EXPECT_NEAR(refine_real_root_bisection(quintic(), 2.5, 3.5, 1e-12), 3.0, 1e-12);
    EXPECT_NEAR(refine_real_root_bisection(Polynomial{-1.7, 1}, 0.0, 3.4, 1e-13), 1.7, 1e-12);
    try {
        (void)refine_real_root_bisection(quintic(), 3.5, 4.0, 1e-12);
        FAIL() << "expected NoSignChange";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoSignChange);
    }
}
