#pragma once

// Perfect phylogeny construction for compatible three-state matrices.
//
// A perfect phylogeny exists iff some set of indicator characters is pairwise
// four-gamete compatible and keeps at least two of the three indicators of
// every character. Both conditions are 2-literal clauses, so the selection is
// a 2-SAT instance; the selected indicators are compatible splits and the
// tree follows from their inclusion order.

#include <ppd/binary_expansion.hpp>
#include <ppd/error.hpp>
#include <ppd/matrix.hpp>
#include <ppd/phylo_tree.hpp>
#include <ppd/two_sat.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace ppd {

struct SelectionProblem {
    std::vector<BinaryCharacter> variables; // expand(m) order
    std::vector<Clause> clauses;
};

/// Coverage clauses per character (3 states: every pair of indicators,
/// 2 states: either indicator, 1 state: none), then one exclusion clause per
/// incompatible indicator pair.
inline SelectionProblem build_selection(const CharacterMatrix& m, const IncompatibilityRelation& rel) {
    SelectionProblem p;
    p.variables = expand(m);
    if (rel.size() != p.variables.size()) {
        throw Error(ErrorKind::MalformedInput, "incompatibility relation does not match the expansion");
    }
    std::size_t first = 0;
    for (std::size_t c = 0; c < m.chars(); ++c) {
        const std::size_t k = m.state_count(c);
        if (k == 3) {
            p.clauses.push_back({pos(first), pos(first + 1)});
            p.clauses.push_back({pos(first), pos(first + 2)});
            p.clauses.push_back({pos(first + 1), pos(first + 2)});
        } else if (k == 2) {
            p.clauses.push_back({pos(first), pos(first + 1)});
        }
        first += k;
    }
    for (std::size_t x = 0; x < p.variables.size(); ++x) {
        for (std::size_t y = x + 1; y < p.variables.size(); ++y) {
            if (rel(x, y)) p.clauses.push_back({neg(x), neg(y)});
        }
    }
    return p;
}

inline std::optional<std::vector<bool>> solve_selection(const SelectionProblem& p) {
    return solve_2sat(p.variables.size(), p.clauses);
}

/// Splits oriented away from deduplicated taxon 0, as sorted member lists.
/// Splits that only separate a single taxon are dropped.
inline std::vector<std::vector<std::size_t>> oriented_clusters(const DedupedMatrix& d,
                                                               const std::vector<BinaryCharacter>& selected) {
    const std::size_t n = d.matrix.taxa();
    std::vector<std::vector<std::size_t>> clusters;
    for (const auto& b : selected) {
        if (b.bits.size() != d.representative.size()) {
            throw Error(ErrorKind::MalformedInput, "binary character has the wrong taxon count");
        }
        std::vector<bool> in(n, false);
        for (std::size_t t = 0; t < b.bits.size(); ++t) {
            if (b.bits[t] == 1) in[d.representative[t]] = true;
        }
        if (in[0]) in.flip();
        std::vector<std::size_t> members;
        for (std::size_t t = 0; t < n; ++t)
            if (in[t]) members.push_back(t);
        if (members.size() >= 2 && members.size() + 2 <= n) clusters.push_back(std::move(members));
    }
    std::sort(clusters.begin(), clusters.end());
    clusters.erase(std::unique(clusters.begin(), clusters.end()), clusters.end());
    return clusters;
}

/// Any two members nested or disjoint.
inline bool is_laminar(const std::vector<std::vector<std::size_t>>& family) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const auto& x = family[i];
            const auto& y = family[j];
            std::vector<std::size_t> common;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
            if (!common.empty() && common.size() != x.size() && common.size() != y.size()) return false;
        }
    }
    return true;
}

/// Builds the tree of the selected splits: clusters nest by inclusion under a
/// root holding taxon 0, every taxon hangs from its smallest cluster, and
/// identical taxa share a multifurcation at their common position.
inline PhyloTree assemble_tree(const CharacterMatrix& m, const std::vector<BinaryCharacter>& selected) {
    const auto d = dedupe_rows(m);
    const std::size_t n = d.matrix.taxa();
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t t = 0; t < m.taxa(); ++t) groups[d.representative[t]].push_back(t);

    auto clusters = oriented_clusters(d, selected);
    if (!is_laminar(clusters)) throw Error(ErrorKind::NotLaminar, "selected splits are not pairwise compatible");
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const auto& x, const auto& y) { return x.size() > y.size(); });

    PhyloTree tree;
    auto attach_taxon = [&](std::optional<std::size_t> parent, std::size_t rep) {
        std::size_t node;
        if (groups[rep].size() == 1) {
            node = tree.add_node(m.taxon_label(groups[rep].front()));
        } else {
            node = tree.add_node();
            for (auto t : groups[rep]) tree.add_edge(node, tree.add_node(m.taxon_label(t)));
        }
        if (parent) tree.add_edge(*parent, node);
        return node;
    };

    if (n == 1) {
        tree.set_root(attach_taxon(std::nullopt, 0));
        return tree;
    }
    if (n == 2) {
        auto first = attach_taxon(std::nullopt, 0);
        attach_taxon(first, 1);
        tree.set_root(first);
        return tree;
    }

    const std::size_t root = tree.add_node();
    tree.set_root(root);
    std::vector<std::size_t> cluster_node(clusters.size());
    auto includes = [](const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner) {
        return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
    };
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        std::size_t parent = root;
        for (std::size_t j = i; j-- > 0;) {
            if (includes(clusters[j], clusters[i])) {
                parent = cluster_node[j];
                break;
            }
        }
        cluster_node[i] = tree.add_node();
        tree.add_edge(parent, cluster_node[i]);
    }
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t parent = root;
        for (std::size_t j = clusters.size(); j-- > 0;) {
            if (std::binary_search(clusters[j].begin(), clusters[j].end(), t)) {
                parent = cluster_node[j];
                break;
            }
        }
        attach_taxon(parent, t);
    }
    return tree;
}

/// Decides compatibility through the selection problem and, when
/// satisfiable, assembles the tree.
inline std::optional<PhyloTree> build_tree(const CharacterMatrix& m) {
    auto chars = expand(m);
    IncompatibilityRelation rel(chars);
    auto problem = build_selection(m, rel);
    auto assignment = solve_selection(problem);
    if (!assignment) return std::nullopt;
    std::vector<BinaryCharacter> selected;
    for (std::size_t v = 0; v < problem.variables.size(); ++v) {
        if ((*assignment)[v]) selected.push_back(problem.variables[v]);
    }
    return assemble_tree(m, selected);
}

} // namespace ppd
