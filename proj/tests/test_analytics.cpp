#include "bagen/analytics.hpp"
#include "bagen/driver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace bagen;

TEST(DegreeCounter, SelfLoopCountsTwice) {
    DegreeCounter c(10);
    c.count_edge({0, 0});
    EXPECT_EQ(c.counts[0], 2U);
}

TEST(DegreeCounter, OnlyFirstKNodes) {
    DegreeCounter c(3);
    c.count_edge({5, 2});
    EXPECT_EQ(c.counts, (std::vector<std::uint64_t>{0, 0, 1}));
}

TEST(DegreeCounter, FullRunConservation) {
    GenParams p;
    p.n = 100;
    p.d = 2;
    const auto res = run(Generator(p), DegreeCountConsumer(100), 2, 7);
    EXPECT_EQ(res.result.total(), 400U);
    for (NodeId v = 0; v < 100; ++v) EXPECT_GE(res.result.counts[v], 2U);
}

TEST(DegreeCounter, Merge) {
    DegreeCounter a(2), b(2), zero(2);
    a.counts = {1, 2};
    b.counts = {3, 0};
    EXPECT_EQ(merge(a, b).counts, (std::vector<std::uint64_t>{4, 2}));
    EXPECT_EQ(merge(a, zero).counts, a.counts);
    EXPECT_THROW(merge(a, DegreeCounter(3)), std::invalid_argument);
}

TEST(DegreeCounter, MergeOrderIrrelevant) {
    std::mt19937_64 rng(12);
    std::vector<DegreeCounter> parts(8, DegreeCounter(50));
    for (auto& p : parts)
        for (auto& c : p.counts) c = rng() % 1000;
    DegreeCounter forward(50);
    for (const auto& p : parts) forward = merge(forward, p);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(parts.begin(), parts.end(), rng);
        // Pairwise tree instead of a left fold.
        std::vector<DegreeCounter> level = parts;
        while (level.size() > 1) {
            std::vector<DegreeCounter> next;
            for (std::size_t k = 0; k + 1 < level.size(); k += 2) next.push_back(merge(level[k], level[k + 1]));
            if (level.size() % 2) next.push_back(level.back());
            level = std::move(next);
        }
        EXPECT_EQ(level[0].counts, forward.counts);
    }
}

TEST(Histogram, Invariants) {
    DegreeCounter c(6);
    c.counts = {4, 1, 1, 3, 4, 9};
    const Histogram h = degree_histogram(c);
    std::uint64_t nodes = 0, sum = 0;
    for (const auto& [deg, cnt] : h) {
        nodes += cnt;
        sum += deg * cnt;
    }
    EXPECT_EQ(nodes, 6U);
    EXPECT_EQ(sum, c.total());
    EXPECT_EQ(degree_histogram(c, 2).size(), 4U);
}

TEST(FitExponent, SyntheticPowerLaw) {
    // Discrete power law through the rounded continuous approximation.
    const double gamma       = 3.0;
    const std::uint64_t xmin = 10;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Histogram h;
    for (int k = 0; k < 100'000; ++k) {
        const double x = (xmin - 0.5) * std::pow(1.0 - u(rng), -1.0 / (gamma - 1.0)) + 0.5;
        ++h[static_cast<std::uint64_t>(std::floor(x))];
    }
    EXPECT_NEAR(fit_exponent(h, xmin), gamma, 0.05);
}

TEST(FitExponent, DegenerateAndInsufficient) {
    Histogram same{{16, 1000}};
    EXPECT_THROW(fit_exponent(same, 16), std::domain_error);
    Histogram few{{16, 50}, {40, 20}};
    EXPECT_THROW(fit_exponent(few, 16), std::domain_error);
    Histogram below{{2, 5000}, {3, 5000}};
    EXPECT_THROW(fit_exponent(below, 16), std::domain_error);
}

TEST(FitExponent, MidSizeBaGraph) {
    GenParams p;
    p.n = 200'000;
    p.d = 8;
    const auto res = run(Generator(p), DegreeCountConsumer(p.n), 1);
    const double g = fit_exponent(degree_histogram(res.result), 16);
    EXPECT_GE(g, 2.6);
    EXPECT_LE(g, 3.4);
}

TEST(ExpectedDegreeCheck, IndexZeroGuard) {
    DegreeCounter c(1);
    c.counts = {100};
    EXPECT_TRUE(expected_degree_check(c, 10, 2, 0, 1, 4).empty());
}

TEST(ExpectedDegreeCheck, BinsPartitionRange) {
    DegreeCounter c(1000);
    for (std::size_t v = 0; v < 1000; ++v) c.counts[v] = 5;
    const auto bins = expected_degree_check(c, 1000, 5, 10, 1000, 8);
    ASSERT_FALSE(bins.empty());
    EXPECT_EQ(bins.front().lo, 10U);
    EXPECT_EQ(bins.back().hi, 1000U);
    for (std::size_t k = 1; k < bins.size(); ++k) EXPECT_EQ(bins[k].lo, bins[k - 1].hi);
    for (const auto& b : bins) EXPECT_DOUBLE_EQ(b.mean_degree, 5.0);
}

TEST(ExpectedDegreeCheck, NewestNodesHaveDegreeNearD) {
    GenParams p;
    p.n = 100'000;
    p.d = 10;
    const auto res  = run(Generator(p), DegreeCountConsumer(p.n), 1);
    const auto bins = expected_degree_check(res.result, p.n, p.d, p.n / 2, p.n, 3);
    for (const auto& b : bins) {
        EXPECT_NEAR(b.ratio, 1.0, 0.1);
        EXPECT_NEAR(b.mean_degree, 1.2 * p.d, 0.3 * p.d);
    }
}
