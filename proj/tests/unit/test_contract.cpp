#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pcm/contract.hpp"
#include "pcm/error.hpp"

namespace pcm {
namespace {

const TimeGrid kGrid = TimeGrid::standard();

std::vector<PointPair> pairs_for(const Space& s, const Mapping& m, std::size_t n = 200) {
    return sample_pairs(s, m, n, 77);
}

TEST(SamplePairs, IncludesDiagonalAndOrbitPairs) {
    const auto s = dirac_space(2);
    const auto m = scale(0.5);
    const auto pairs = pairs_for(s, m, 12);
    ASSERT_EQ(pairs.size(), 12u);
    EXPECT_EQ(pairs[2].x, pairs[2].y);
    EXPECT_EQ(pairs[3].y, m(pairs[3].x));
    EXPECT_NE(pairs[0].x, pairs[0].y);
}

TEST(Banach, HalvingMapPasses) {
    const auto s = dirac_space(2);
    const auto m = scale(0.5);
    const auto pairs = pairs_for(s, m);
    const auto c = check_banach(s, m, 0.6, pairs, kGrid, 0.0);
    EXPECT_TRUE(c.pass);
    EXPECT_FALSE(c.witness.has_value());

    // Brute-force oracle: step comparison 1[t > 0.5 d] >= 1[t / 0.6 > d].
    for (const auto& p : pairs) {
        const double d = distance2(p.x, p.y);
        for (double t : kGrid) ASSERT_GE(oracle::step(0.5 * d, t), oracle::step(d, t / 0.6));
    }
}

TEST(Banach, IdentityFailsWithWitnessInsideTheGap) {
    const auto s = dirac_space(2);
    const auto m = identity();
    const auto c = check_banach(s, m, 0.5, pairs_for(s, m), kGrid, 0.0);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.worst_margin, -1.0);
    ASSERT_TRUE(c.witness);
    const double d = distance2(c.witness->x, c.witness->y);
    EXPECT_GT(c.witness->t, 0.5 * d);
    EXPECT_LE(c.witness->t, d);
}

TEST(Banach, DiagonalPairsPassVacuously) {
    const auto s = dirac_space(2);
    const std::vector<PointPair> diag{{{0.1, 0.2}, {0.1, 0.2}}, {{-0.7, 0.0}, {-0.7, 0.0}}};
    for (const auto& m : {identity(), shift({1.0, 0.0}), scale(3.0)}) {
        const auto c = check_banach(s, m, 0.3, diag, kGrid, 0.0);
        EXPECT_TRUE(c.pass) << m.name;
        EXPECT_EQ(c.worst_margin, 0.0);
    }
}

TEST(Kannan, ConstantMapPassesForAnyAlpha) {
    const auto s = dirac_space(2);
    const auto m = constant({0.3, -0.2});
    for (double a : {0.01, 0.2, 0.49}) EXPECT_TRUE(check_kannan(s, m, a, pairs_for(s, m), kGrid, 0.0).pass);
}

TEST(Kannan, IdentityFails) {
    const auto s = dirac_space(2);
    const auto m = identity();
    for (double a : {0.1, 0.25, 0.45}) {
        const auto c = check_kannan(s, m, a, pairs_for(s, m), kGrid, 0.0);
        EXPECT_FALSE(c.pass);
        ASSERT_TRUE(c.witness);
        EXPECT_LE(c.witness->t, distance2(c.witness->x, c.witness->y));
    }
}

TEST(Kannan, ScaleMapThresholdMatchesStepAnalysis) {
    // On the Dirac space u -> c u is Kannan at alpha exactly when
    // c ||x - y|| <= 2 alpha (1 - c) max(||x||, ||y||) for the sampled pairs.
    const auto s = dirac_space(2);
    for (double c : {0.05, 0.1, 0.2, 0.3, 0.45}) {
        const auto m = scale(c);
        const auto pairs = pairs_for(s, m);
        for (double a : {0.1, 0.2, 0.25, 0.3, 0.45}) {
            bool expect = true;
            for (const auto& p : pairs) {
                const double lhs_jump = c * distance2(p.x, p.y);
                const double rhs_jump = (1 - c) * std::max(norm2(p.x), norm2(p.y));
                for (double t : kGrid)
                    if (oracle::step(lhs_jump, t) < oracle::step(rhs_jump, t / (2 * a))) expect = false;
            }
            EXPECT_EQ(check_kannan(s, m, a, pairs, kGrid, 0.0).pass, expect) << c << " " << a;
        }
    }
}

TEST(Kannan, MonotoneInAlpha) {
    const auto s = dirac_space(2);
    for (double c : {0.1, 0.2, 0.3}) {
        const auto m = scale(c);
        const auto pairs = pairs_for(s, m);
        bool seen_pass = false;
        for (double a = 0.02; a < 0.5; a += 0.02) {
            const bool p = check_kannan(s, m, a, pairs, kGrid, 0.0).pass;
            if (seen_pass) ASSERT_TRUE(p) << c << " " << a;
            seen_pass = seen_pass || p;
        }
    }
}

TEST(Kannan, RotationHalfOnDirectionalSpaceSweep) {
    // The directional space has F_{x,x} = Phi < 1, so the self-displacement
    // terms at t / (2 alpha) > t can exceed F_{Tx,Tx}(t) = Phi(t): every alpha
    // in the sweep fails on the sampled pairs.
    const auto s = directional_gaussian_space(Cone::orthant(2), 0.5);
    const auto m = rotation_half();
    const auto pairs = pairs_for(s, m);
    for (double a : {0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45}) {
        const auto c = check_kannan(s, m, a, pairs, kGrid, 0.0);
        EXPECT_FALSE(c.pass) << a;
        EXPECT_LT(c.worst_margin, 0.0);
        ASSERT_FALSE(c.notes.empty());
    }
}

TEST(Kannan, RejectsAlphaOutOfRange) {
    const auto s = dirac_space(2);
    const auto m = identity();
    const auto pairs = pairs_for(s, m, 4);
    EXPECT_THROW(check_kannan(s, m, 0.5, pairs, kGrid, 0.0), InvalidParameter);
    EXPECT_THROW(check_kannan(s, m, 0.0, pairs, kGrid, 0.0), InvalidParameter);
    EXPECT_THROW(check_chatterjea(s, m, 0.6, pairs, kGrid, 0.0), InvalidParameter);
    EXPECT_THROW(check_banach(s, m, 1.0, pairs, kGrid, 0.0), InvalidParameter);
}

TEST(Chatterjea, ConstantPassesIdentityFails) {
    const auto s = dirac_space(2);
    const auto c = constant({0.0, 1.0});
    EXPECT_TRUE(check_chatterjea(s, c, 0.3, pairs_for(s, c), kGrid, 0.0).pass);

    // ||x - y|| = 1, alpha = 0.25, t = 0.75: LHS F(0.75) = 0, RHS F(1.5) = 1.
    const std::vector<PointPair> pair{{{0.0, 0.0}, {1.0, 0.0}}};
    const auto r = check_chatterjea(s, identity(), 0.25, pair, TimeGrid({0.75}), 0.0);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.worst_margin, -1.0);
    EXPECT_EQ(r.witness->t, 0.75);
}

TEST(Chatterjea, DiagonalFixedPairsHaveZeroMargin) {
    const auto s = dirac_space(2);
    const std::vector<PointPair> pair{{{0.5, 0.5}, {0.5, 0.5}}};
    const auto r = check_chatterjea(s, constant({0.5, 0.5}), 0.2, pair, kGrid, 0.0);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.worst_margin, 0.0);
}

TEST(Zamfirescu, DisjunctionDominatesSingleClauses) {
    const auto s = dirac_space(2);
    for (const auto& m : {scale(0.5), scale(0.1), constant({0.2, 0.2}), identity(), rotation_half()}) {
        const auto pairs = pairs_for(s, m);
        const bool any = check_banach(s, m, 0.6, pairs, kGrid, 0.0).pass ||
                         check_kannan(s, m, 0.3, pairs, kGrid, 0.0).pass ||
                         check_chatterjea(s, m, 0.3, pairs, kGrid, 0.0).pass;
        const auto z = check_zamfirescu(s, m, 0.6, 0.3, 0.3, pairs, kGrid, 0.0);
        if (any) EXPECT_TRUE(z.pass) << m.name;
    }
}

TEST(Zamfirescu, IdentityFailsAtUnitWitness) {
    const auto s = dirac_space(2);
    const std::vector<PointPair> pair{{{0.0, 0.0}, {0.0, 1.0}}};
    const auto z = check_zamfirescu(s, identity(), 0.5, 0.25, 0.2, pair, TimeGrid({0.6}), 0.0);
    EXPECT_FALSE(z.pass);
    EXPECT_EQ(z.worst_margin, -1.0);  // all three clause margins are -1
    EXPECT_TRUE(z.beta && z.gamma);
}

TEST(Zamfirescu, ConstantMapPasses) {
    const auto s = dirac_space(2);
    const auto m = constant({1.0, 1.0});
    EXPECT_TRUE(check_zamfirescu(s, m, 0.9, 0.1, 0.4, pairs_for(s, m), kGrid, 0.0).pass);
}

TEST(ZamfirescuDelta, Values) {
    EXPECT_EQ(zamfirescu_delta(0.5, 0.25, 0.2), 2.0 / 3.0);
    EXPECT_NEAR(zamfirescu_delta(0.3, 0.3, 0.3), 6.0 / 7.0, 1e-15);
    try {
        zamfirescu_delta(0.5, 0.4, 0.2);
        FAIL() << "expected RateNotCertified";
    } catch (const RateNotCertified& e) {
        EXPECT_NEAR(e.delta(), 4.0 / 3.0, 1e-15);
    }
    EXPECT_THROW(zamfirescu_delta(1.0, 0.2, 0.2), InvalidParameter);
    EXPECT_THROW(zamfirescu_delta(0.5, 0.5, 0.2), InvalidParameter);
}

TEST(Certificates, DeterministicAcrossWorkers) {
    const auto s = directional_gaussian_space(Cone::orthant(2), 0.5);
    const auto m = rotation_half();
    const auto pairs = pairs_for(s, m);
    const auto a = check_kannan(s, m, 0.3, pairs, kGrid, 0.0, Parallelism{1});
    const auto b = check_kannan(s, m, 0.3, pairs, kGrid, 0.0, Parallelism{8});
    EXPECT_EQ(a.worst_margin, b.worst_margin);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.witness->x, b.witness->x);
    EXPECT_EQ(a.witness->t, b.witness->t);
}

TEST(Certificates, ConstantMapsPassAllFourChecks) {
    const auto s = dirac_space(2);
    oracle::TestRng rng(8);
    for (int k = 0; k < 10; ++k) {
        const auto m = constant({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        const auto pairs = pairs_for(s, m, 40);
        const double a = rng.uniform(0.01, 0.99), b = rng.uniform(0.01, 0.49),
                     g = rng.uniform(0.01, 0.49);
        EXPECT_TRUE(check_banach(s, m, a, pairs, kGrid, 0.0).pass);
        EXPECT_TRUE(check_kannan(s, m, b, pairs, kGrid, 0.0).pass);
        EXPECT_TRUE(check_chatterjea(s, m, g, pairs, kGrid, 0.0).pass);
        EXPECT_TRUE(check_zamfirescu(s, m, a, b, g, pairs, kGrid, 0.0).pass);
    }
}

}  // namespace
}  // namespace pcm
