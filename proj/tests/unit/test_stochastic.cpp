#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pcm/error.hpp"
#include "pcm/rng.hpp"
#include "pcm/stochastic.hpp"

namespace pcm {
namespace {

Ensemble normal_scalars(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        SplitMix64 rng(derive_seed(seed, j));
        v[j] = rng.normal();
    }
    return Ensemble(n, 1, std::move(v));
}

TEST(EnsembleTest, Validation) {
    EXPECT_THROW(Ensemble(0, 1, {}), InvalidParameter);
    EXPECT_THROW(Ensemble(2, 2, {1, 2, 3}), InvalidParameter);
    EXPECT_THROW(Ensemble(1, 2, {1, NAN}), InvalidParameter);
    EXPECT_THROW(Ensemble(2, 2, {1, 2, -3, 4}, Cone::orthant(2)), InvalidParameter);
    const Ensemble e(2, 2, {1, 2, 3, 4}, Cone::orthant(2), 9);
    EXPECT_EQ(e.sample(1)[0], 3);
    EXPECT_EQ(e.seed(), 9u);
}

TEST(EmpiricalMetric, Examples) {
    const auto x = normal_scalars(100, 1);
    const auto same = empirical_metric(x, x);
    for (double t : {1e-9, 0.5, 3.0}) EXPECT_EQ(same.eval(t), 1.0);

    const Ensemble a(2, 1, {0.0, 0.0}), b(2, 1, {1.0, 3.0});
    EXPECT_EQ(empirical_metric(a, b).eval(2.0), 0.5);

    const auto z = normal_scalars(10000, 7);
    const Ensemble zero(10000, 1, std::vector<double>(10000, 0.0));
    EXPECT_NEAR(empirical_metric(z, zero).eval(1.0), oracle::folded_normal_cdf(1.0), 0.02);

    EXPECT_THROW(empirical_metric(a, z), InvalidParameter);
}

TEST(EmpiricalMetric, Symmetric) {
    const auto x = normal_scalars(500, 3), y = normal_scalars(500, 4);
    const auto f = empirical_metric(x, y), g = empirical_metric(y, x);
    for (double t : TimeGrid::standard()) ASSERT_EQ(f.eval(t).value(), g.eval(t).value());
}

TEST(ScaledEnsemblePair, StableUnderEnsembleSize) {
    const auto small = scaled_ensemble_pair(100, 2, 0.15, 42);
    const auto large = scaled_ensemble_pair(200, 2, 0.15, 42);
    for (std::size_t j = 0; j < 100; ++j) {
        ASSERT_EQ(small.x.sample(j)[0], large.x.sample(j)[0]);
        ASSERT_EQ(small.y.sample(j)[1], large.y.sample(j)[1]);
    }
    ASSERT_TRUE(small.x.cone().has_value());
}

TEST(RandomKannan, RotationHalfSweepMatchesAnalyticThreshold) {
    // For T = (I + A) / 2 and Y = (1 + rho) X the samplewise inequality reads
    // rho <= alpha (1 + rho), i.e. rho <= alpha / (1 - alpha). With rho uniform
    // on [0, 0.15] the expected violation fraction is max(0, 1 - a/(1-a)/0.15).
    const std::size_t n = 10000;
    const std::vector<EnsemblePair> pairs{scaled_ensemble_pair(n, 2, 0.15, 2024)};
    const auto op = samplewise(rotation_half());
    for (double a : {0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45}) {
        const auto r = check_random_kannan(op, pairs, a, TimeGrid::standard(), 2.0 / std::sqrt(n));
        const double expected = std::max(0.0, 1.0 - a / (1.0 - a) / 0.15);
        EXPECT_NEAR(r.violation_fraction, expected, 0.02) << a;
        EXPECT_EQ(r.samplewise_pass, expected == 0.0) << a;
        if (r.samplewise_pass) {
            EXPECT_TRUE(r.distributional.pass) << a;
            EXPECT_GE(r.distributional.worst_margin, 0.0);
        }
        EXPECT_EQ(r.samples, n);
    }
}

TEST(RandomKannan, ConstantPassesIdentityFails) {
    const std::vector<EnsemblePair> pairs{scaled_ensemble_pair(1000, 2, 0.2, 5)};
    const auto grid = TimeGrid::standard();
    for (double a : {0.05, 0.25, 0.49}) {
        const auto c = check_random_kannan(samplewise(constant({0.5, 0.5})), pairs, a, grid, 0.0);
        EXPECT_TRUE(c.pass()) << a;
    }
    const auto id = check_random_kannan(samplewise(identity()), pairs, 0.25, grid, 0.0);
    EXPECT_FALSE(id.samplewise_pass);
    EXPECT_GT(id.violation_fraction, 0.99);  // rho = 0 has probability zero
}

TEST(RandomKannan, RejectsBadArguments) {
    const std::vector<EnsemblePair> pairs{scaled_ensemble_pair(10, 2, 0.2, 5)};
    EXPECT_THROW(check_random_kannan(samplewise(identity()), pairs, 0.5, TimeGrid::standard(), 0.0),
                 InvalidParameter);
    EXPECT_THROW(check_random_kannan(samplewise(identity()), {}, 0.2, TimeGrid::standard(), 0.0),
                 InvalidParameter);
}

TEST(RandomOperatorTest, ApplyIsWorkerIndependent) {
    const auto p = scaled_ensemble_pair(1000, 2, 0.1, 8);
    const auto op = samplewise(rotation_half());
    const auto a = op.apply(p.x, Parallelism{1});
    const auto b = op.apply(p.x, Parallelism{7});
    ASSERT_EQ(std::vector<double>(a.data().begin(), a.data().end()),
              std::vector<double>(b.data().begin(), b.data().end()));
}

}  // namespace
}  // namespace pcm
