#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace ppd {

struct Literal {
    std::size_t var = 0;
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(std::size_t v) { return {v, true}; }
inline Literal neg(std::size_t v) { return {v, false}; }

struct Clause {
    Literal a, b;

    friend bool operator==(const Clause&, const Clause&) = default;
};

namespace detail {

// Node 2v is the negative literal of v and 2v+1 the positive one, so the
// depth-first search meets "not v" first.
inline std::size_t node(Literal l) { return 2 * l.var + (l.positive ? 1 : 0); }

/// Iterative Tarjan. Components are numbered in completion order, which is a
/// reverse topological order of the condensation.
inline std::vector<std::size_t> tarjan_components(const std::vector<std::vector<std::size_t>>& graph) {
    constexpr auto unvisited = std::numeric_limits<std::size_t>::max();
    const std::size_t n = graph.size();
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call; // (node, next edge)
    std::size_t counter = 0, components = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge < graph[v].size()) {
                const std::size_t w = graph[v][edge++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) {
                auto parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = components;
                } while (w != done);
                ++components;
            }
        }
    }
    return comp;
}

} // namespace detail

/// Implication graph + strongly connected components. Returns a satisfying
/// assignment, or nothing when some variable shares a component with its
/// negation. Deterministic for a fixed clause list; with no clauses every
/// variable is false.
inline std::optional<std::vector<bool>> solve_2sat(std::size_t variables, std::span<const Clause> clauses) {
    std::vector<std::vector<std::size_t>> graph(2 * variables);
    auto negate = [](Literal l) { return Literal{l.var, !l.positive}; };
    for (const auto& c : clauses) {
        graph[detail::node(negate(c.a))].push_back(detail::node(c.b));
        graph[detail::node(negate(c.b))].push_back(detail::node(c.a));
    }
    auto comp = detail::tarjan_components(graph);
    std::vector<bool> value(variables);
    for (std::size_t v = 0; v < variables; ++v) {
        const auto t = comp[2 * v + 1], f = comp[2 * v];
        if (t == f) return std::nullopt;
        // The literal whose component completes first lies downstream.
        value[v] = t < f;
    }
    return value;
}

} // namespace ppd
