#include <gtest/gtest.h>

#include <chrono>
#include <functional>

#include "itfe/apps.hpp"
#include "support.hpp"

using namespace itfe;

namespace {

// complete trees by height: level h+1 is level h composed with S
oracle::Vec trees_by_height(const std::vector<int>& arities, int n) {
    oracle::Vec s(n + 1, 0), level = oracle::ints({0, 1}), total(n + 1, 0);
    for (int k : arities)
        if (k <= n) s[k] += 1;
    for (int h = 0; h <= n; ++h) {
        level.resize(n + 1, 0);
        for (int i = 0; i <= n; ++i) total[i] += level[i];
        level = oracle::compose(level, s, n);
    }
    return total;
}

// closed walks by depth-first enumeration
std::uint64_t closed_walks_dfs(const ApproximantGraph& g, int n) {
    std::function<std::uint64_t(std::size_t, int)> go = [&](std::size_t v, int left) -> std::uint64_t {
        if (left == 0) return v == g.origin ? 1 : 0;
        std::uint64_t c = 0;
        for (std::size_t w : g.adjacency[v]) c += go(w, left - 1);
        return c;
    };
    return go(g.origin, n);
}

} // namespace

TEST(Trees, GoldenTwoThree) {
    const Series T = complete_tree_series(TreeFamily({2, 3}), 6);
    EXPECT_EQ(T, (Series(std::vector<Rational>{0, 1, 1, 1, 1, 2, 2}, 6)));
}

TEST(Trees, OracleAgreement) {
    for (const std::vector<int>& set : {std::vector<int>{2}, {2, 3}, {3}, {2, 3, 4}, {3, 4, 5}}) {
        const TreeFamily fam(set);
        const Series T = complete_tree_series(fam, 12);
        const auto by_height = trees_by_height(set, 12);
        for (int n = 1; n <= 12; ++n) {
            const BigInt e = enumerate_complete_trees(fam, n);
            EXPECT_EQ(T[n], Rational(e)) << n;
            EXPECT_EQ(mpq_class(e), by_height[n]) << n;
        }
    }
}

TEST(Trees, PowersOfTwoOnly) {
    // binary complete trees exist only with 2^h leaves, one each
    const Series T = complete_tree_series(TreeFamily({2}), 40);
    for (int n = 1; n <= 40; ++n) EXPECT_EQ(T[n], Rational((n & (n - 1)) == 0 ? 1 : 0)) << n;
}

TEST(Trees, IntegralAndNonnegativeAtOrderFifty) {
    const auto start = std::chrono::steady_clock::now();
    const Series T = complete_tree_series(TreeFamily({2, 3}), 50);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 1.0);
    for (int n = 0; n <= 50; ++n) {
        EXPECT_TRUE(T[n].is_integer());
        EXPECT_GE(T[n].sign(), 0);
    }
    EXPECT_EQ(oracle::from(T), trees_by_height({2, 3}, 50));
}

TEST(Trees, Validation) {
    EXPECT_THROW(TreeFamily({1, 2}), std::invalid_argument);
    EXPECT_THROW(TreeFamily({}), std::invalid_argument);
    EXPECT_EQ(TreeFamily({3, 2, 3}).arity_set(), (std::vector<int>{2, 3}));
    EXPECT_THROW(enumerate_complete_trees(TreeFamily({2}), 0), std::invalid_argument);
}

TEST(Sierpinski, GoldenG4) {
    const GreenSeries g = sierpinski_green(7);
    const std::vector<long> expect{1, 0, 4, 4, 32, 76, 348, 1112};
    for (int n = 0; n <= 7; ++n) EXPECT_EQ(g.G4[n], Rational(expect[n])) << n;
    EXPECT_EQ(sierpinski_walk_count(4, 4), 32);
}

TEST(Sierpinski, WalkOracleAndLevelStability) {
    const GreenSeries g = sierpinski_green(15);
    const auto w3 = sierpinski_walk_counts(15, 3), w4 = sierpinski_walk_counts(15, 4), w5 = sierpinski_walk_counts(15, 5);
    EXPECT_EQ(w3, w4);
    EXPECT_EQ(w4, w5);
    for (int n = 0; n <= 15; ++n) EXPECT_EQ(g.G4[n], Rational(w4[static_cast<std::size_t>(n)])) << n;
    EXPECT_THROW(sierpinski_walk_counts(16, 3), BoundaryReachable);
}

TEST(Sierpinski, WalkCountsMatchDepthFirstEnumeration) {
    const ApproximantGraph g = sierpinski_approximant(3);
    const auto w = sierpinski_walk_counts(10, 3);
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(w[static_cast<std::size_t>(n)], closed_walks_dfs(g, n)) << n;
}

TEST(Sierpinski, ApproximantShape) {
    for (int level = 0; level <= 5; ++level) {
        const ApproximantGraph g = sierpinski_approximant(level);
        // one gasket has (3^(k+1) + 3) / 2 vertices; two share the origin
        long p = 1;
        for (int i = 0; i <= level; ++i) p *= 3;
        EXPECT_EQ(static_cast<long>(g.adjacency.size()), p + 2) << level;
        EXPECT_EQ(g.adjacency[g.origin].size(), 4u);
        int corners = 0;
        for (const auto& row : g.adjacency) {
            EXPECT_TRUE(row.size() == 4 || row.size() == 2);
            corners += row.size() == 2;
        }
        EXPECT_EQ(corners, 4);
    }
}

TEST(Sierpinski, GreenIsIntegralAfterScaling) {
    const GreenSeries g = sierpinski_green(40);
    for (int n = 0; n <= 40; ++n) {
        EXPECT_TRUE(g.G4[n].is_integer()) << n;
        EXPECT_GE(g.G4[n].sign(), 0) << n;
    }
}

TEST(Sierpinski, ParallelMatchesSerial) {
    EXPECT_EQ(sierpinski_walk_counts(30, 4, {1}), sierpinski_walk_counts(30, 4, {4}));
}

TEST(Patterns, ChainsawFourMatchesBruteForce) {
    const PatternSeries p = pattern_series(4, 8);
    const std::vector<std::uint64_t> golden{1, 1, 2, 6, 23};
    for (int n = 0; n <= 8; ++n) {
        const Rational scaled = p.P_hat[n] * Rational(factorial(static_cast<unsigned long>(n)));
        ASSERT_TRUE(scaled.is_integer());
        EXPECT_EQ(scaled, Rational(BigInt(std::to_string(count_avoiders(chainsaw_pattern(4), n))))) << n;
        if (n < 5) EXPECT_EQ(scaled, Rational(static_cast<long>(golden[static_cast<std::size_t>(n)])));
    }
}

TEST(Patterns, ChainsawFiveMatchesBruteForce) {
    const PatternSeries p = pattern_series(5, 8);
    for (int n = 0; n <= 8; ++n)
        EXPECT_EQ(p.P_hat[n] * Rational(factorial(static_cast<unsigned long>(n))),
                  Rational(BigInt(std::to_string(count_avoiders(chainsaw_pattern(5), n)))))
            << n;
}

TEST(Patterns, Shapes) {
    EXPECT_EQ(chainsaw_pattern(4), (std::vector<int>{1, 4, 2, 3}));
    EXPECT_EQ(chainsaw_pattern(5), (std::vector<int>{1, 5, 2, 3, 4}));
    EXPECT_EQ(pattern_map(4), RationalFunction(Polynomial::t(), Polynomial{Rational(1), Rational(0), Rational(1)}));
    EXPECT_THROW(pattern_series(3, 5), std::invalid_argument);
}

TEST(CountAvoiders, EdgeCases) {
    EXPECT_EQ(count_avoiders({1, 2}, 3), 1u);
    EXPECT_EQ(count_avoiders({2, 1}, 5), 1u);
    EXPECT_EQ(count_avoiders({1, 2, 3}, 0), 1u);
    EXPECT_EQ(count_avoiders({1, 2, 3}, 2), 2u);
    EXPECT_THROW(count_avoiders({1, 3}, 3), std::invalid_argument);
    EXPECT_THROW(count_avoiders({1, 2}, 11), BudgetExceeded);
}

TEST(CountAvoiders, ConsecutiveMonotone) {
    // permutations without three consecutive rising entries
    const std::vector<std::uint64_t> known{1, 1, 2, 5, 17, 70, 349, 2017};
    for (int n = 0; n <= 7; ++n) EXPECT_EQ(count_avoiders({1, 2, 3}, n), known[static_cast<std::size_t>(n)]) << n;
}

TEST(CountAvoiders, ReverseSymmetryAndParallel) {
    // reversing every permutation maps avoiders of p to avoiders of reverse(p)
    const std::vector<int> p{1, 4, 2, 3}, rev{3, 2, 4, 1};
    for (int n = 0; n <= 8; ++n) {
        EXPECT_EQ(count_avoiders(p, n), count_avoiders(rev, n));
        EXPECT_EQ(count_avoiders(p, n, {1}), count_avoiders(p, n, {3}));
    }
}
