#include <ppd/two_sat.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ppd;

namespace {

bool satisfies(const std::vector<bool>& a, const std::vector<Clause>& clauses) {
    auto value = [&](Literal l) { return a[l.var] == l.positive; };
    for (const auto& c : clauses)
        if (!value(c.a) && !value(c.b)) return false;
    return true;
}

bool brute_satisfiable(std::size_t vars, const std::vector<Clause>& clauses) {
    for (std::uint32_t mask = 0; mask < (1u << vars); ++mask) {
        std::vector<bool> a(vars);
        for (std::size_t v = 0; v < vars; ++v) a[v] = mask >> v & 1u;
        if (satisfies(a, clauses)) return true;
    }
    return false;
}

} // namespace

TEST(Solve2Sat, NoClausesGivesAllFalse) {
    auto a = solve_2sat(4, std::vector<Clause>{});
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, std::vector<bool>(4, false));
}

TEST(Solve2Sat, ZeroVariables) {
    auto a = solve_2sat(0, std::vector<Clause>{});
    ASSERT_TRUE(a);
    EXPECT_TRUE(a->empty());
}

TEST(Solve2Sat, UnitViaRepeatedLiteral) {
    std::vector<Clause> c{{pos(0), pos(0)}, {neg(0), pos(1)}};
    auto a = solve_2sat(2, c);
    ASSERT_TRUE(a);
    EXPECT_TRUE((*a)[0]);
    EXPECT_TRUE((*a)[1]);
}

TEST(Solve2Sat, Contradiction) {
    std::vector<Clause> c{{pos(0), pos(1)}, {pos(0), neg(1)}, {neg(0), pos(1)}, {neg(0), neg(1)}};
    EXPECT_FALSE(solve_2sat(2, c));
}

TEST(Solve2Sat, ImplicationChain) {
    // x0 forced true, then x0 -> x1 -> ... -> x9, and x9 -> not x0.
    std::vector<Clause> c{{pos(0), pos(0)}};
    for (std::size_t v = 0; v + 1 < 10; ++v) c.push_back({neg(v), pos(v + 1)});
    auto a = solve_2sat(10, c);
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, std::vector<bool>(10, true));
    c.push_back({neg(9), neg(0)});
    EXPECT_FALSE(solve_2sat(10, c));
}

TEST(Solve2Sat, LongChainDoesNotRecurse) {
    const std::size_t n = 200000;
    std::vector<Clause> c{{pos(0), pos(0)}};
    for (std::size_t v = 0; v + 1 < n; ++v) c.push_back({neg(v), pos(v + 1)});
    auto a = solve_2sat(n, c);
    ASSERT_TRUE(a);
    EXPECT_TRUE(a->back());
}

TEST(Solve2Sat, AgreesWithBruteForce) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t vars = 1 + static_cast<std::size_t>(trial % 8);
        std::uniform_int_distribution<std::size_t> var(0, vars - 1), count(0, 3 * vars);
        std::bernoulli_distribution sign;
        std::vector<Clause> clauses(count(rng));
        for (auto& cl : clauses) cl = {{var(rng), sign(rng)}, {var(rng), sign(rng)}};
        auto a = solve_2sat(vars, clauses);
        ASSERT_EQ(a.has_value(), brute_satisfiable(vars, clauses));
        if (a) {
            EXPECT_TRUE(satisfies(*a, clauses));
        }
    }
}
