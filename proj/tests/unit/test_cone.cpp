#include <gtest/gtest.h>

#include <vector>

#include "pcm/cone.hpp"
#include "pcm/error.hpp"
#include "pcm/rng.hpp"

namespace pcm {
namespace {

Cone ice_cream() { return Cone::halfspaces({{1.0, 1.0}, {1.0, -1.0}}); }

TEST(ConeContains, OrthantExamples) {
    const auto p = Cone::orthant(2);
    EXPECT_TRUE(p.contains(Point{1, 2}));
    EXPECT_FALSE(p.contains(Point{-1, 2}));
    EXPECT_TRUE(p.contains(Point{0, 0}));
    EXPECT_TRUE(p.contains(Point{-1e-13, 0}));
    EXPECT_FALSE(p.contains(Point{-1e-11, 0}));
    EXPECT_THROW(p.contains(Point{1, 2, 3}), InvalidParameter);
}

TEST(ConeContains, Halfspaces) {
    const auto p = ice_cream();
    EXPECT_TRUE(p.contains(Point{1, 0}));
    EXPECT_TRUE(p.contains(Point{1, 1}));
    EXPECT_FALSE(p.contains(Point{1, 1.5}));
    EXPECT_FALSE(p.contains(Point{-1, 0}));
    EXPECT_THROW(Cone::halfspaces({}), InvalidParameter);
    EXPECT_THROW(Cone::halfspaces({{1, 0}, {1}}), InvalidParameter);
}

TEST(ConeLeq, Examples) {
    const auto p = Cone::orthant(2);
    EXPECT_TRUE(p.leq(Point{1, 1}, Point{2, 3}));
    EXPECT_FALSE(p.leq(Point{1, 1}, Point{2, 0}));
    SplitMix64 rng(1);
    for (int k = 0; k < 100; ++k) {
        const Point x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        EXPECT_TRUE(p.leq(x, x));
    }
    EXPECT_THROW(p.leq(Point{1}, Point{1, 2}), InvalidParameter);
}

TEST(ConeAxioms, ClosedUnderNonnegativeCombinationsAndPointed) {
    for (const auto& p : {Cone::orthant(3), Cone::orthant(2), ice_cream()}) {
        SplitMix64 rng(8);
        for (int k = 0; k < 1000; ++k) {
            const Point x = p.sample(rng), y = p.sample(rng);
            const double a = rng.uniform(0, 10), b = rng.uniform(0, 10);
            Point z(x.size());
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = a * x[i] + b * y[i];
            ASSERT_TRUE(p.contains(z));
            if (norm2(x) > 1e-9) {
                Point neg(x);
                for (auto& v : neg) v = -v;
                ASSERT_FALSE(p.contains(neg));
            }
        }
    }
}

TEST(ConeOrder, PartialOrderOnSamples) {
    const auto p = ice_cream();
    SplitMix64 rng(12);
    for (int k = 0; k < 1000; ++k) {
        const Point x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Point d1 = p.sample(rng), d2 = p.sample(rng);
        const Point y{x[0] + d1[0], x[1] + d1[1]};
        const Point z{y[0] + d2[0], y[1] + d2[1]};
        ASSERT_TRUE(p.leq(x, y));
        ASSERT_TRUE(p.leq(y, z));
        ASSERT_TRUE(p.leq(x, z));  // transitive
        if (p.leq(y, x)) ASSERT_NEAR(distance2(x, y), 0.0, 1e-12);  // antisymmetric
    }
}

TEST(Normality, OrthantHoldsWithConstantOne) {
    for (std::size_t d : {1u, 2u, 5u}) {
        const auto r = normality_check(Cone::orthant(d), 1.0, 5000, 3);
        EXPECT_TRUE(r.holds);
        EXPECT_LE(r.worst_ratio, 1.0);
    }
}

TEST(Normality, OrthantFailsBelowOneWithDiagonalWitness) {
    const auto r = normality_check(Cone::orthant(2), 0.5, 100, 3);
    EXPECT_FALSE(r.holds);
    EXPECT_DOUBLE_EQ(r.worst_ratio, 1.0);
    ASSERT_TRUE(r.witness_x && r.witness_y);
    EXPECT_EQ(*r.witness_x, *r.witness_y);
}

TEST(Normality, IceCreamConeObservedRatio) {
    // Boundary rays are orthogonal, so ||x|| <= ||y|| for 0 <= x <= y and the
    // supremum 1 is attained at x = y. Observed worst ratio over 1e4 samples: 1.
    const auto r = normality_check(ice_cream(), 2.0, 10000, 2024);
    EXPECT_TRUE(r.holds);
    EXPECT_GE(r.samples, 9000u);
    EXPECT_NEAR(r.worst_ratio, 1.0, 1e-12);
    EXPECT_TRUE(normality_check(ice_cream(), 1.0, 10000, 2024).holds);
}

TEST(Normality, RejectsBadArguments) {
    EXPECT_THROW(normality_check(Cone::orthant(2), 0.0, 10, 1), InvalidParameter);
    EXPECT_THROW(normality_check(Cone::orthant(2), 1.0, 0, 1), InvalidParameter);
}

TEST(ConeSample, InfeasibleRegionThrows) {
    // x >= 0 and -x >= 0 leaves only the line x = 0 in R^2: measure zero.
    const auto p = Cone::halfspaces({{1, 0}, {-1, 0}});
    SplitMix64 rng(1);
    EXPECT_THROW(p.sample(rng, 1.0, 1000), InfeasibleSampling);
}

}  // namespace
}  // namespace pcm
