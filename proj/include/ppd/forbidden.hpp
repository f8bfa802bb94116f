#pragma once

// The three forbidden edge sets for a pairwise compatible triple of
// three-state characters, and a brute-force embedding search.

#include <ppd/pig.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace ppd {

enum class ForbiddenPattern { FigA, FigB, FigC };

inline std::string_view to_string(ForbiddenPattern p) {
    switch (p) {
    case ForbiddenPattern::FigA: return "FigA";
    case ForbiddenPattern::FigB: return "FigB";
    case ForbiddenPattern::FigC: return "FigC";
    }
    return "?";
}

/// Edge set of a three-character pig. Vertex (role r, state s) has index
/// 3r + s - 1; `rows[v]` is the 9-bit neighbour mask of vertex v.
struct TripleGraph {
    std::array<std::uint16_t, 9> rows{};

    void add(std::size_t r1, State s1, std::size_t r2, State s2) {
        auto u = 3 * r1 + s1 - 1, v = 3 * r2 + s2 - 1;
        rows[u] |= static_cast<std::uint16_t>(1u << v);
        rows[v] |= static_cast<std::uint16_t>(1u << u);
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (auto r : rows) twice += std::popcount(r);
        return twice / 2;
    }

    friend bool operator==(const TripleGraph&, const TripleGraph&) = default;
};

namespace detail {

/// Parses edges written as `a1b1` (roles a, b, c).
constexpr TripleGraph pattern_graph(std::initializer_list<std::string_view> edges) {
    TripleGraph g;
    for (auto e : edges) {
        auto u = 3 * static_cast<std::size_t>(e[0] - 'a') + static_cast<std::size_t>(e[1] - '1');
        auto v = 3 * static_cast<std::size_t>(e[2] - 'a') + static_cast<std::size_t>(e[3] - '1');
        g.rows[u] = static_cast<std::uint16_t>(g.rows[u] | (1u << v));
        g.rows[v] = static_cast<std::uint16_t>(g.rows[v] | (1u << u));
    }
    return g;
}

} // namespace detail

inline const std::array<TripleGraph, 3>& forbidden_patterns() {
    static const std::array<TripleGraph, 3> patterns{
        detail::pattern_graph({"a1b1", "b1c1", "c1b2", "b2c2", "c2a1", "a1b3", "c2b3", "a1c3", "b1c3", "b1a2",
                               "c1a2", "c1a3", "b2a3", "c2a3"}),
        detail::pattern_graph({"a1b1", "b1c1", "c1b2", "b2c2", "c2a1", "a1b3", "c2b3", "a1c3", "b1c3", "b1a2",
                               "c1a2", "b2a2", "c2a2"}),
        detail::pattern_graph({"c1b1", "b1c2", "c2a1", "a1c1", "a2b3", "b3c3", "a2c3", "c1a2", "b1a2", "c1b2",
                               "a1b2", "a1b3", "c2b3", "c2a3", "b1a3"}),
    };
    return patterns;
}

/// Small matrices whose pig over columns (a, b, c) is exactly each pattern's
/// edge set: every taxon contributes one triangle of the pattern.
inline const std::vector<std::array<int, 3>>& realizing_rows(ForbiddenPattern p) {
    static const std::array<std::vector<std::array<int, 3>>, 3> rows{{
        {{1, 1, 3}, {2, 1, 1}, {3, 2, 1}, {3, 2, 2}, {1, 3, 2}},
        {{1, 1, 3}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}, {1, 3, 2}},
        {{1, 2, 1}, {2, 1, 1}, {1, 3, 2}, {2, 3, 3}, {3, 1, 2}},
    }};
    return rows[static_cast<std::size_t>(p)];
}

/// Edges of the pig of three columns as 27 bits: (a_i, b_j) at 3i + j,
/// (a_i, c_k) at 9 + 3i + k, (b_j, c_k) at 18 + 3j + k (zero-based states).
/// One pass over the taxa.
inline std::uint32_t triple_edge_bits(std::span<const State> a, std::span<const State> b,
                                      std::span<const State> c) {
    std::uint32_t bits = 0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const unsigned i = a[t] - 1u, j = b[t] - 1u, k = c[t] - 1u;
        bits |= (1u << (i * 3 + j)) | (1u << (9 + i * 3 + k)) | (1u << (18 + j * 3 + k));
    }
    return bits;
}

inline TripleGraph triple_graph_from_bits(std::uint32_t bits) {
    TripleGraph g;
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 3; ++j) {
            if (bits >> (i * 3 + j) & 1u) g.add(0, State(i + 1), 1, State(j + 1));
            if (bits >> (9 + i * 3 + j) & 1u) g.add(0, State(i + 1), 2, State(j + 1));
            if (bits >> (18 + i * 3 + j) & 1u) g.add(1, State(i + 1), 2, State(j + 1));
        }
    return g;
}

inline TripleGraph triple_graph(std::span<const State> a, std::span<const State> b, std::span<const State> c) {
    return triple_graph_from_bits(triple_edge_bits(a, b, c));
}

inline TripleGraph triple_graph(const Pig& g) {
    if (g.characters().size() != 3) {
        throw Error(ErrorKind::WrongArity,
                    "expected a pig of 3 characters, got " + std::to_string(g.characters().size()));
    }
    const auto& m = g.source();
    const auto& cs = g.characters();
    return triple_graph(m.column(cs[0]), m.column(cs[1]), m.column(cs[2]));
}

/// Pattern role r is played by graph role roles[r]; pattern state s of role r
/// maps to graph state renaming[r][s-1].
struct PatternEmbedding {
    ForbiddenPattern pattern;
    std::array<std::size_t, 3> roles;
    std::array<std::array<State, 3>, 3> renaming;
};

namespace detail {

inline bool embeds(const TripleGraph& pattern, const TripleGraph& g, const std::array<std::size_t, 3>& roles,
                   const std::array<std::array<State, 3>, 3>& ren, std::size_t upto_role) {
    auto image = [&](std::size_t v) { return 3 * roles[v / 3] + ren[v / 3][v % 3] - 1; };
    // Checks edges whose endpoints both lie in roles [0, upto_role] and touch upto_role.
    for (std::size_t s = 0; s < 3; ++s) {
        std::size_t u = 3 * upto_role + s;
        std::uint16_t row = pattern.rows[u];
        for (std::size_t v = 0; v < 3 * upto_role; ++v) {
            if (row >> v & 1u) {
                if (!(g.rows[image(u)] >> image(v) & 1u)) return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// First forbidden pattern (FigA, FigB, FigC order) whose edges all appear in
/// `g` after some assignment of pattern characters to graph characters and
/// some per-character state renaming. Both are scanned lexicographically.
inline std::optional<PatternEmbedding> find_forbidden_embedding(const TripleGraph& g) {
    const auto& patterns = forbidden_patterns();
    std::array<State, 3> ident{1, 2, 3};
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        if (g.edge_count() < patterns[p].edge_count()) continue;
        std::array<std::size_t, 3> roles{0, 1, 2};
        do {
            std::array<std::array<State, 3>, 3> ren{ident, ident, ident};
            do {
                ren[1] = ident;
                do {
                    if (!detail::embeds(patterns[p], g, roles, ren, 1)) continue;
                    ren[2] = ident;
                    do {
                        if (detail::embeds(patterns[p], g, roles, ren, 2)) {
                            return PatternEmbedding{static_cast<ForbiddenPattern>(p), roles, ren};
                        }
                    } while (std::next_permutation(ren[2].begin(), ren[2].end()));
                } while (std::next_permutation(ren[1].begin(), ren[1].end()));
            } while (std::next_permutation(ren[0].begin(), ren[0].end()));
        } while (std::next_permutation(roles.begin(), roles.end()));
    }
    return std::nullopt;
}

/// Diagnostic matcher for a three-character pig.
inline std::optional<ForbiddenPattern> match_forbidden_pattern(const Pig& g) {
    auto e = find_forbidden_embedding(triple_graph(g));
    if (!e) return std::nullopt;
    return e->pattern;
}

} // namespace ppd
