#pragma once

#include <ppd/error.hpp>
#include <ppd/matrix.hpp>

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ppd {

/// Unrooted tree whose labelled nodes are the taxa. `root()` only fixes the
/// node Newick output starts from.
class PhyloTree {
  public:
    std::size_t add_node(std::optional<std::string> label = std::nullopt) {
        labels_.push_back(std::move(label));
        adj_.emplace_back();
        return labels_.size() - 1;
    }

    void add_edge(std::size_t u, std::size_t v) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        edges_.emplace_back(u, v);
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::optional<std::string>& label(std::size_t v) const { return labels_[v]; }
    const std::vector<std::size_t>& neighbours(std::size_t v) const { return adj_[v]; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

    std::size_t root() const noexcept { return root_; }
    void set_root(std::size_t v) { root_ = v; }

    std::vector<std::size_t> labelled_nodes() const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < size(); ++v)
            if (labels_[v]) out.push_back(v);
        return out;
    }

    /// Connected and acyclic.
    bool is_tree() const {
        if (size() == 0 || edges_.size() + 1 != size()) return false;
        std::vector<bool> seen(size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : adj_[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == size();
    }

    /// Parent pointers and a preorder from `from`.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> preorder(std::size_t from) const {
        constexpr auto none = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> parent(size(), none), order;
        std::vector<std::size_t> stack{from};
        parent[from] = from;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (auto it = adj_[v].rbegin(); it != adj_[v].rend(); ++it) {
                if (parent[*it] == none) {
                    parent[*it] = v;
                    stack.push_back(*it);
                }
            }
        }
        return {std::move(parent), std::move(order)};
    }

  private:
    std::vector<std::optional<std::string>> labels_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::size_t root_ = 0;
};

namespace detail {

inline std::string newick_label(const std::string& label) {
    if (label.find_first_of(" \t\n()[]':;,") == std::string::npos && !label.empty()) return label;
    std::string out = "'";
    for (char ch : label) {
        if (ch == '\'') out += '\'';
        out += ch;
    }
    return out + "'";
}

} // namespace detail

/// Newick text from the tree's root, terminated by `;`. A labelled root with
/// neighbours is written as the first member of the outermost group.
inline std::string to_newick(const PhyloTree& t) {
    if (t.size() == 0) return ";";
    auto [parent, order] = t.preorder(t.root());
    std::vector<std::string> text(t.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        std::vector<std::string> parts;
        for (auto w : t.neighbours(v)) {
            if (parent[w] == v && w != v) parts.push_back(std::move(text[w]));
        }
        const std::string own = t.label(v) ? detail::newick_label(*t.label(v)) : std::string();
        if (parts.empty()) {
            text[v] = own;
            continue;
        }
        if (v == t.root() && t.label(v)) parts.insert(parts.begin(), own);
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += parts[i];
        }
        s += ')';
        if (v != t.root()) s += own;
        text[v] = std::move(s);
    }
    return text[t.root()] + ";";
}

/// Maps each labelled node to its taxon row; LabelMismatch unless labels and
/// taxa correspond one to one.
inline std::vector<std::optional<std::size_t>> leaf_taxa(const PhyloTree& t, const CharacterMatrix& m) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < m.taxa(); ++i) index.emplace(m.taxon_label(i), i);
    std::vector<std::optional<std::size_t>> out(t.size());
    std::vector<bool> used(m.taxa(), false);
    std::size_t count = 0;
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (!t.label(v)) continue;
        auto it = index.find(*t.label(v));
        if (it == index.end()) throw Error(ErrorKind::LabelMismatch, "unknown taxon '" + *t.label(v) + "'");
        if (used[it->second]) throw Error(ErrorKind::LabelMismatch, "taxon '" + *t.label(v) + "' labels two nodes");
        used[it->second] = true;
        out[v] = it->second;
        ++count;
    }
    if (count != m.taxa()) throw Error(ErrorKind::LabelMismatch, "tree does not label every taxon");
    return out;
}

/// Minimum number of state changes of character `ch` over the tree (unit
/// cost, unlabelled nodes free).
inline std::size_t parsimony_length(const PhyloTree& t, const std::vector<std::optional<std::size_t>>& taxa,
                                    const CharacterMatrix& m, std::size_t ch) {
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;
    const std::size_t k = m.state_count(ch);
    auto [parent, order] = t.preorder(t.root());
    std::vector<std::array<std::size_t, 3>> cost(t.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        auto& c = cost[v];
        for (std::size_t s = 0; s < 3; ++s) c[s] = s < k ? 0 : inf;
        if (taxa[v]) {
            const std::size_t own = m.at(*taxa[v], ch) - 1u;
            for (std::size_t s = 0; s < k; ++s)
                if (s != own) c[s] = inf;
        }
        for (auto w : t.neighbours(v)) {
            if (parent[w] != v || w == v) continue;
            for (std::size_t s = 0; s < k; ++s) {
                std::size_t best = inf;
                for (std::size_t r = 0; r < k; ++r) best = std::min(best, cost[w][r] + (r == s ? 0 : 1));
                c[s] = std::min(inf, c[s] + best);
            }
        }
    }
    return *std::min_element(cost[t.root()].begin(), cost[t.root()].begin() + static_cast<long>(k));
}

/// True iff every character changes state exactly (states - 1) times, which
/// is the case iff each state's spanning subtrees are pairwise node-disjoint.
inline bool certify_convexity(const PhyloTree& t, const CharacterMatrix& m) {
    if (!t.is_tree()) throw Error(ErrorKind::MalformedInput, "not a tree");
    auto taxa = leaf_taxa(t, m);
    for (std::size_t c = 0; c < m.chars(); ++c) {
        if (parsimony_length(t, taxa, m, c) != m.state_count(c) - 1) return false;
    }
    return true;
}

} // namespace ppd
