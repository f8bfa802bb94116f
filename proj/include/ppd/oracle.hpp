#pragma once

// Brute-force ground truth. Decides perfect phylogeny existence straight from
// the definition by trying every unrooted binary topology on the distinct
// taxa, and checks that each state's minimal spanning subtrees are
// node-disjoint. Shares no code with the pig, expansion or 2-SAT machinery.

#include <ppd/error.hpp>
#include <ppd/matrix.hpp>
#include <ppd/phylo_tree.hpp>

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace ppd {

inline constexpr std::size_t kOracleMaxTaxa = 8;

struct OracleVerdict {
    bool has_pp = false;
    std::optional<PhyloTree> witness_tree;
    std::vector<std::array<std::size_t, 2>> incompatible_pairs;
    std::vector<std::array<std::size_t, 3>> incompatible_triples;
};

namespace oracle_detail {

/// Edge list of an unrooted binary tree; leaves are nodes 0..leaves-1.
struct Topology {
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Stepwise addition: leaf k is inserted into each of the 2k - 3 edges of
/// every topology on leaves 0..k-1. Calls `visit` for every topology on
/// `leaves` leaves; stops early when `visit` returns true.
inline bool enumerate_topologies(std::size_t leaves, const std::function<bool(const Topology&)>& visit) {
    if (leaves == 1) return visit(Topology{1, {}});
    if (leaves == 2) return visit(Topology{2, {{0, 1}}});
    // Internal nodes are numbered from `leaves` upwards.
    Topology star{leaves + 1, {{0, leaves}, {1, leaves}, {2, leaves}}};
    std::function<bool(Topology&, std::size_t)> grow = [&](Topology& t, std::size_t next) -> bool {
        if (next == leaves) return visit(t);
        const std::size_t count = t.edges.size();
        for (std::size_t e = 0; e < count; ++e) {
            auto [u, v] = t.edges[e];
            const std::size_t mid = t.nodes;
            t.nodes += 1;
            t.edges[e] = {u, mid};
            t.edges.push_back({mid, v});
            t.edges.push_back({mid, next});
            if (grow(t, next + 1)) return true;
            t.edges.pop_back();
            t.edges.pop_back();
            t.edges[e] = {u, v};
            t.nodes -= 1;
        }
        return false;
    };
    return grow(star, 3);
}

inline std::size_t count_topologies(std::size_t leaves) {
    std::size_t count = 0;
    enumerate_topologies(leaves, [&](const Topology&) {
        ++count;
        return false;
    });
    return count;
}

/// For every character and every pair of its states, the minimal subtrees
/// spanning the taxa of each state share no node.
inline bool states_disjoint(const Topology& t, const CharacterMatrix& m) {
    std::vector<std::vector<std::size_t>> adj(t.nodes);
    for (auto [u, v] : t.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    const std::size_t leaves = m.taxa();
    std::vector<int> owner(t.nodes);
    std::vector<std::size_t> parent(t.nodes), order, below(t.nodes);
    for (std::size_t c = 0; c < m.chars(); ++c) {
        std::fill(owner.begin(), owner.end(), 0);
        for (State s = 1; s <= m.state_count(c); ++s) {
            // Root at a taxon with state s; a node is spanned iff its subtree holds one.
            std::size_t root = 0;
            while (m.at(root, c) != s) ++root;
            order.clear();
            order.push_back(root);
            parent[root] = root;
            for (std::size_t i = 0; i < order.size(); ++i) {
                for (auto w : adj[order[i]]) {
                    if (w != parent[order[i]]) {
                        parent[w] = order[i];
                        order.push_back(w);
                    }
                }
            }
            for (auto v : order) below[v] = (v < leaves && m.at(v, c) == s) ? 1 : 0;
            for (std::size_t i = order.size(); i-- > 1;) below[parent[order[i]]] += below[order[i]];
            for (auto v : order) {
                if (below[v] == 0) continue;
                if (owner[v] != 0) return false;
                owner[v] = s;
            }
        }
    }
    return true;
}

inline PhyloTree to_phylo_tree(const Topology& t, const CharacterMatrix& m) {
    PhyloTree tree;
    for (std::size_t v = 0; v < t.nodes; ++v) {
        tree.add_node(v < m.taxa() ? std::optional<std::string>(m.taxon_label(v)) : std::nullopt);
    }
    for (auto [u, v] : t.edges) tree.add_edge(u, v);
    if (t.nodes > m.taxa()) tree.set_root(m.taxa());
    return tree;
}

/// Witness topology on the distinct rows of `m`, if any.
inline std::optional<PhyloTree> search(const CharacterMatrix& m) {
    const auto d = dedupe_rows(m);
    if (d.matrix.taxa() > kOracleMaxTaxa) {
        throw Error(ErrorKind::TooLarge, std::to_string(d.matrix.taxa()) + " distinct taxa exceed the oracle bound of " +
                                             std::to_string(kOracleMaxTaxa));
    }
    std::optional<PhyloTree> found;
    enumerate_topologies(d.matrix.taxa(), [&](const Topology& t) {
        if (!states_disjoint(t, d.matrix)) return false;
        found = to_phylo_tree(t, d.matrix);
        return true;
    });
    return found;
}

} // namespace oracle_detail

/// All incompatible pairs, and all triples whose pairs are compatible but
/// which are incompatible together. Lexicographic order.
inline std::pair<std::vector<std::array<std::size_t, 2>>, std::vector<std::array<std::size_t, 3>>>
exhaustive_obstructions(const CharacterMatrix& m) {
    auto decide = [&](std::vector<std::size_t> cols) {
        return oracle_detail::search(restrict(m, std::move(cols)).materialize()).has_value();
    };
    const std::size_t k = m.chars();
    std::vector<std::vector<bool>> pair_ok(k, std::vector<bool>(k, true));
    std::vector<std::array<std::size_t, 2>> pairs;
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            if (!decide({a, b})) {
                pair_ok[a][b] = false;
                pairs.push_back({a, b});
            }
        }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c) {
                if (pair_ok[a][b] && pair_ok[a][c] && pair_ok[b][c] && !decide({a, b, c})) triples.push_back({a, b, c});
            }
    return {std::move(pairs), std::move(triples)};
}

/// Exhaustive decision; TooLarge beyond kOracleMaxTaxa distinct taxa. The
/// obstruction lists are filled only when no perfect phylogeny exists (every
/// subset of a compatible set is compatible).
inline OracleVerdict oracle_decide(const CharacterMatrix& m) {
    OracleVerdict v;
    v.witness_tree = oracle_detail::search(m);
    v.has_pp = v.witness_tree.has_value();
    if (!v.has_pp) std::tie(v.incompatible_pairs, v.incompatible_triples) = exhaustive_obstructions(m);
    return v;
}

} // namespace ppd
