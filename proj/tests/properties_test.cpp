#include <ppd/ppd.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace ppd;

namespace {

CharacterMatrix random_small(std::mt19937_64& rng, std::size_t max_taxa, std::size_t chars) {
    std::uniform_int_distribution<int> cell(1, 3);
    std::uniform_int_distribution<std::size_t> taxa(1, max_taxa);
    std::vector<std::vector<int>> rows(taxa(rng), std::vector<int>(chars));
    for (auto& r : rows)
        for (auto& v : r) v = cell(rng);
    return CharacterMatrix(rows);
}

bool pairwise_compatible(const CharacterMatrix& m) {
    for (std::size_t a = 0; a < m.chars(); ++a)
        for (std::size_t b = a + 1; b < m.chars(); ++b)
            if (PairPig::build(m, a, b).has_cycle()) return false;
    return true;
}

} // namespace

TEST(Properties, VerdictMatchesOracle) {
    std::mt19937_64 rng(101);
    std::size_t counts[3] = {0, 0, 0};
    for (int trial = 0; trial < 1500; ++trial) {
        const auto k = static_cast<std::size_t>(trial);
        auto m = k % 3 == 0 ? generate({5 + k % 4, 3 + k % 3, k, GenMode::Obstructed})
                            : random_small(rng, 8, 2 + k % 4);
        auto r = minimal_obstruction_set(m);
        auto v = oracle_decide(m);
        ++counts[static_cast<int>(r.verdict)];
        ASSERT_EQ(r.verdict == Verdict::Compatible, v.has_pp) << trial;
        if (r.pair) {
            EXPECT_NE(std::find(v.incompatible_pairs.begin(), v.incompatible_pairs.end(), *r.pair),
                      v.incompatible_pairs.end());
            EXPECT_EQ(*r.pair, v.incompatible_pairs.front());
        }
        if (r.triple) {
            EXPECT_TRUE(v.incompatible_pairs.empty());
            EXPECT_NE(std::find(v.incompatible_triples.begin(), v.incompatible_triples.end(), *r.triple),
                      v.incompatible_triples.end());
        }
        EXPECT_EQ(build_tree(m).has_value(), v.has_pp);
    }
    for (auto c : counts) EXPECT_GT(c, 30u);
}

TEST(Properties, PatternMatchDecidesPairwiseCompatibleTriples) {
    std::mt19937_64 rng(103);
    std::size_t obstructed = 0, clean = 0;
    for (int trial = 0; trial < 6000; ++trial) {
        auto m = random_small(rng, 8, 3);
        if (!pairwise_compatible(m)) continue;
        const bool matched = match_forbidden_pattern(build_pig(full_slice(m))).has_value();
        ASSERT_EQ(matched, !oracle_decide(m).has_pp) << trial;
        ASSERT_EQ(matched, minimal_obstruction_set(m).verdict == Verdict::IncompatibleTriple);
        (matched ? obstructed : clean) += 1;
    }
    EXPECT_GT(obstructed, 20u);
    EXPECT_GT(clean, 20u);
}

TEST(Properties, InvariantUnderStateRenaming) {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 300; ++trial) {
        auto m = random_small(rng, 10, 5);
        auto rows = m.original_rows();
        std::vector<std::array<int, 3>> rename(m.chars());
        for (auto& r : rename) {
            r = {4, 17, 8};
            std::shuffle(r.begin(), r.end(), rng);
        }
        for (auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c) row[c] = rename[c][static_cast<std::size_t>(row[c] - 1)];
        CharacterMatrix renamed(rows);
        auto a = minimal_obstruction_set(m), b = minimal_obstruction_set(renamed);
        EXPECT_EQ(a.verdict, b.verdict);
        EXPECT_EQ(a.pair, b.pair);
    }
}

TEST(Properties, VerdictInvariantUnderColumnOrder) {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 300; ++trial) {
        auto m = random_small(rng, 10, 5);
        std::vector<std::size_t> perm(m.chars());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto shuffled = restrict(m, perm).materialize();
        EXPECT_EQ(minimal_obstruction_set(m).verdict, minimal_obstruction_set(shuffled).verdict);
    }
}

TEST(Properties, TreesCertifyOnCompatibleInputs) {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 500; ++trial) {
        auto m = random_small(rng, 12, 1 + static_cast<std::size_t>(trial % 5));
        auto r = minimal_obstruction_set(m);
        auto t = build_tree(m);
        ASSERT_EQ(t.has_value(), r.verdict == Verdict::Compatible);
        if (t) {
            EXPECT_TRUE(certify_convexity(*t, m));
        }
    }
}
