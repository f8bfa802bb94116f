#include <ppd/binary_expansion.hpp>
#include <ppd/genbench.hpp>
#include <ppd/obstruction.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ppd;

namespace {

CharacterMatrix fig1() { return parse_matrix("321\n213\n222\n332\n113\n223\n", InputFormat::Compact); }

std::vector<std::string> labels(const CharacterMatrix& m, const Path4& p) {
    std::vector<std::string> out;
    for (auto v : p.vertices) out.push_back(vertex_label(m, v));
    return out;
}

CharacterMatrix random_matrix(std::mt19937_64& rng, std::size_t taxa, std::size_t chars) {
    std::uniform_int_distribution<int> cell(1, 3);
    std::vector<std::vector<int>> rows(taxa, std::vector<int>(chars));
    for (auto& r : rows)
        for (auto& v : r) v = cell(rng);
    return CharacterMatrix(rows);
}

} // namespace

TEST(MinimalObstructionSet, Fig1Compatible) {
    auto r = minimal_obstruction_set(fig1());
    EXPECT_EQ(r.verdict, Verdict::Compatible);
    EXPECT_FALSE(r.pair);
    EXPECT_FALSE(r.triple);
    EXPECT_TRUE(r.dependent.empty());
}

TEST(MinimalObstructionSet, FourGameteSquare) {
    CharacterMatrix m({{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    auto r = minimal_obstruction_set(m);
    EXPECT_EQ(r.verdict, Verdict::IncompatiblePair);
    EXPECT_EQ(r.pair, (std::array<std::size_t, 2>{0, 1}));
    EXPECT_TRUE(r.dependent.empty());
}

TEST(MinimalObstructionSet, FirstCyclicPairWins) {
    // Columns (b, c) and (a, d) both fail; (a, d) comes first.
    CharacterMatrix m({{1, 2, 2, 1}, {2, 1, 1, 1}, {1, 2, 1, 1}, {2, 1, 1, 2}, {1, 1, 2, 2}, {1, 1, 1, 1}});
    auto r = minimal_obstruction_set(m);
    ASSERT_EQ(r.verdict, Verdict::IncompatiblePair);
    EXPECT_EQ(r.pair, (std::array<std::size_t, 2>{0, 3}));
}

TEST(MinimalObstructionSet, PatternATriple) {
    auto m = parse_matrix("a,b,c\n1,1,3\n2,1,1\n3,2,1\n3,2,2\n1,3,2\n", InputFormat::Csv);
    auto r = minimal_obstruction_set(m);
    ASSERT_EQ(r.verdict, Verdict::IncompatibleTriple);
    EXPECT_EQ(r.triple, (std::array<std::size_t, 3>{0, 1, 2}));
    ASSERT_EQ(r.dependent.size(), 2u);
    EXPECT_EQ(r.dependent[0].character, 2u);
    EXPECT_EQ(r.dependent[0].state, 1);
    EXPECT_EQ(r.dependent[0].witness, 1u);
    EXPECT_EQ(labels(m, r.dependent[0].path), (std::vector<std::string>{"c2", "b2", "c1", "b1", "c3"}));
    EXPECT_EQ(r.dependent[1].character, 2u);
    EXPECT_EQ(r.dependent[1].state, 2);
    EXPECT_EQ(r.dependent[1].witness, 0u);
    EXPECT_EQ(labels(m, r.dependent[1].path), (std::vector<std::string>{"c1", "a3", "c2", "a1", "c3"}));
}

TEST(MinimalObstructionSet, PlantedTriplesFound) {
    for (auto pattern : {ForbiddenPattern::FigA, ForbiddenPattern::FigB, ForbiddenPattern::FigC}) {
        std::vector<std::vector<int>> rows;
        for (const auto& r : realizing_rows(pattern)) rows.push_back({r[0], r[1], r[2]});
        auto r = minimal_obstruction_set(CharacterMatrix(rows));
        EXPECT_EQ(r.verdict, Verdict::IncompatibleTriple) << to_string(pattern);
        EXPECT_EQ(r.triple, (std::array<std::size_t, 3>{0, 1, 2}));
    }
}

TEST(MinimalObstructionSet, ReportedPairsAndMarksAreGenuine) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        auto m = random_matrix(rng, 2 + trial % 7, 2 + trial % 6);
        auto r = minimal_obstruction_set(m);
        if (r.verdict == Verdict::IncompatiblePair) {
            EXPECT_TRUE(PairPig::build(m, (*r.pair)[0], (*r.pair)[1]).has_cycle());
        }
        if (r.verdict == Verdict::IncompatibleTriple) {
            const auto t = *r.triple;
            EXPECT_TRUE(t[0] < t[1] && t[1] < t[2]);
            ASSERT_EQ(r.dependent.size(), 2u);
            EXPECT_EQ(r.dependent[0].character, r.dependent[1].character);
            EXPECT_NE(r.dependent[0].state, r.dependent[1].state);
            for (const auto& d : r.dependent) {
                EXPECT_EQ(d.path.middle(), (PigVertex{d.character, d.state}));
                auto w = dependent_states_by_definition(m, d.character, d.state);
                EXPECT_NE(std::find(w.begin(), w.end(), d.witness), w.end());
            }
        }
    }
}

TEST(MinimalObstructionSet, DeterministicAndThreadIndependent) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const auto mode = static_cast<GenMode>(trial % 3);
        auto m = generate({5 + static_cast<std::size_t>(trial % 20), 3 + static_cast<std::size_t>(trial % 30),
                           rng(), mode});
        auto seq = minimal_obstruction_set(m);
        EXPECT_EQ(minimal_obstruction_set(m), seq);
        for (unsigned threads : {2u, 3u, 8u}) EXPECT_EQ(minimal_obstruction_set(m, {threads}), seq);
    }
}

TEST(DependentStates, PathsMatchDefinitionOnAcyclicPairs) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 400; ++trial) {
        auto m = random_matrix(rng, 3 + trial % 6, 2 + trial % 3);
        bool acyclic = true;
        for (std::size_t a = 0; a < m.chars(); ++a)
            for (std::size_t b = a + 1; b < m.chars(); ++b) acyclic = acyclic && !PairPig::build(m, a, b).has_cycle();
        if (!acyclic) continue;
        auto masks = dependent_state_masks(m);
        for (std::size_t c = 0; c < m.chars(); ++c) {
            for (auto s : m.states(c)) {
                auto by_paths = dependent_witnesses_by_paths(m, c, s);
                ASSERT_EQ(by_paths, dependent_states_by_definition(m, c, s));
                EXPECT_EQ(static_cast<bool>(masks[c] >> (s - 1) & 1u), !by_paths.empty());
            }
        }
    }
}

TEST(DependentStates, Fig1) {
    auto m = fig1();
    EXPECT_EQ(dependent_witnesses_by_paths(m, 0, 2), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(dependent_witnesses_by_paths(m, 1, 2), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(dependent_witnesses_by_paths(m, 2, 2), (std::vector<std::size_t>{0}));
    EXPECT_TRUE(dependent_witnesses_by_paths(m, 2, 1).empty());
}
