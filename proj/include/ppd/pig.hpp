#pragma once

// Partition intersection graphs: one vertex per (character, state), one edge
// per pair of states of different characters that co-occur in some taxon.

#include <ppd/error.hpp>
#include <ppd/matrix.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ppd {

struct PigVertex {
    std::size_t character = 0;
    State state = 0;

    friend auto operator<=>(const PigVertex&, const PigVertex&) = default;
};

/// Label such as `a3`: the character label followed by the input state label.
inline std::string vertex_label(const CharacterMatrix& m, PigVertex v) {
    return m.char_label(v.character) + std::to_string(m.original_state(v.character, v.state));
}

/// A path of four edges; vertices[2] is the middle.
struct Path4 {
    std::array<PigVertex, 5> vertices;

    PigVertex middle() const { return vertices[2]; }
    friend auto operator<=>(const Path4&, const Path4&) = default;
};

/// The pig of two characters: at most 3 + 3 vertices and 9 edges, stored as
/// a 3x3 bit matrix. All queries run in constant time.
class PairPig {
  public:
    PairPig() = default;

    /// Builds in one pass over the two columns.
    PairPig(std::size_t first, std::span<const State> a, std::size_t first_states, std::size_t second,
            std::span<const State> b, std::size_t second_states)
        : chars_{first, second}, counts_{first_states, second_states} {
        std::uint16_t bits = 0;
        for (std::size_t t = 0; t < a.size(); ++t) {
            bits |= static_cast<std::uint16_t>(1u << ((a[t] - 1) * 3 + (b[t] - 1)));
        }
        for (std::size_t i = 0; i < 3; ++i) {
            rows_[i] = static_cast<std::uint8_t>((bits >> (3 * i)) & 7u);
            for (std::size_t j = 0; j < 3; ++j) {
                if (rows_[i] >> j & 1u) cols_[j] |= static_cast<std::uint8_t>(1u << i);
            }
        }
    }

    static PairPig build(const CharacterMatrix& m, std::size_t a, std::size_t b) {
        return PairPig(a, m.column(a), m.state_count(a), b, m.column(b), m.state_count(b));
    }

    std::size_t character(std::size_t side) const { return chars_[side]; }
    std::size_t state_count(std::size_t side) const { return counts_[side]; }

    bool has_edge(State first_state, State second_state) const {
        return rows_[first_state - 1] >> (second_state - 1) & 1u;
    }

    std::size_t edge_count() const {
        return std::popcount(rows_[0]) + std::popcount(rows_[1]) + std::popcount(rows_[2]);
    }

    /// Neighbour bit mask (bit s-1 for state s) of a state on `side`.
    std::uint8_t neighbours(std::size_t side, State s) const {
        return side == 0 ? rows_[s - 1] : cols_[s - 1];
    }

    /// A forest has exactly V - C edges.
    bool has_cycle() const {
        std::array<std::size_t, 6> parent;
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::size_t vertices = counts_[0] + counts_[1];
        std::size_t components = vertices;
        for (std::size_t i = 0; i < counts_[0]; ++i) {
            for (std::size_t j = 0; j < counts_[1]; ++j) {
                if (!(rows_[i] >> j & 1u)) continue;
                auto x = find(i), y = find(3 + j);
                if (x != y) {
                    parent[x] = y;
                    --components;
                }
            }
        }
        return edge_count() > vertices - components;
    }

    /// Bit s-1 is set when state s on `side` is the middle of some path of length four.
    std::uint8_t middle_mask(std::size_t side) const {
        std::uint8_t mask = 0;
        for (State s = 1; s <= counts_[side]; ++s) {
            if (is_middle(side, s)) mask |= static_cast<std::uint8_t>(1u << (s - 1));
        }
        return mask;
    }

    bool is_middle(std::size_t side, State s) const {
        const std::uint8_t self = static_cast<std::uint8_t>(1u << (s - 1));
        const std::uint8_t nb = neighbours(side, s);
        for (State u1 = 1; u1 <= 3; ++u1) {
            if (!(nb >> (u1 - 1) & 1u)) continue;
            for (State u2 = u1 + 1; u2 <= 3; ++u2) {
                if (!(nb >> (u2 - 1) & 1u)) continue;
                std::uint8_t e1 = neighbours(1 - side, u1) & ~self;
                std::uint8_t e2 = neighbours(1 - side, u2) & ~self;
                // Two distinct far ends exist unless both sides offer the same single vertex.
                if (e1 && e2 && !(e1 == e2 && std::popcount(e1) == 1)) return true;
            }
        }
        return false;
    }

    /// Every length-four path with middle (character(side), s). Each path is
    /// listed once, oriented so its first endpoint precedes its last, and the
    /// list is sorted by (first endpoint, last endpoint, full sequence).
    std::vector<Path4> middle_paths(std::size_t side, State s) const {
        std::vector<Path4> out;
        const std::size_t other = 1 - side;
        const std::uint8_t nb = neighbours(side, s);
        auto vert = [&](std::size_t sd, State st) { return PigVertex{chars_[sd], st}; };
        for (State u1 = 1; u1 <= 3; ++u1) {
            if (!(nb >> (u1 - 1) & 1u)) continue;
            for (State u2 = 1; u2 <= 3; ++u2) {
                if (u2 == u1 || !(nb >> (u2 - 1) & 1u)) continue;
                for (State w1 = 1; w1 <= 3; ++w1) {
                    if (w1 == s || !(neighbours(other, u1) >> (w1 - 1) & 1u)) continue;
                    for (State w2 = w1 + 1; w2 <= 3; ++w2) {
                        if (w2 == s || !(neighbours(other, u2) >> (w2 - 1) & 1u)) continue;
                        out.push_back(Path4{{vert(side, w1), vert(other, u1), vert(side, s), vert(other, u2),
                                             vert(side, w2)}});
                    }
                }
            }
        }
        std::sort(out.begin(), out.end(), [](const Path4& x, const Path4& y) {
            return std::tie(x.vertices[0], x.vertices[4], x.vertices) <
                   std::tie(y.vertices[0], y.vertices[4], y.vertices);
        });
        return out;
    }

  private:
    std::array<std::size_t, 2> chars_{};
    std::array<std::size_t, 2> counts_{};
    std::array<std::uint8_t, 3> rows_{}; // rows_[i] bit j: edge (first_{i+1}, second_{j+1})
    std::array<std::uint8_t, 3> cols_{};
};

/// General pig of a column slice, for any number of characters.
class Pig {
  public:
    Pig() = default;

    explicit Pig(const ColumnSlice& slice) : source_(&slice.source()), characters_(slice.columns()) {
        std::sort(characters_.begin(), characters_.end());
        for (auto c : characters_) {
            for (auto s : source_->states(c)) vertices_.push_back({c, s});
        }
        for (std::size_t x = 0; x < characters_.size(); ++x) {
            for (std::size_t y = x + 1; y < characters_.size(); ++y) {
                auto pair = PairPig::build(*source_, characters_[x], characters_[y]);
                for (State i = 1; i <= pair.state_count(0); ++i) {
                    for (State j = 1; j <= pair.state_count(1); ++j) {
                        if (pair.has_edge(i, j)) {
                            edges_.emplace_back(PigVertex{characters_[x], i}, PigVertex{characters_[y], j});
                        }
                    }
                }
            }
        }
        std::sort(edges_.begin(), edges_.end());
    }

    const CharacterMatrix& source() const { return *source_; }
    const std::vector<std::size_t>& characters() const noexcept { return characters_; }
    const std::vector<PigVertex>& vertices() const noexcept { return vertices_; }
    /// Sorted; each edge (u, v) has u < v.
    const std::vector<std::pair<PigVertex, PigVertex>>& edges() const noexcept { return edges_; }

    bool has_vertex(PigVertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    bool adjacent(PigVertex u, PigVertex v) const {
        if (v < u) std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
    }

    /// Two-character view; WrongArity otherwise.
    PairPig as_pair() const {
        if (characters_.size() != 2) {
            throw Error(ErrorKind::WrongArity,
                        "expected a pig of 2 characters, got " + std::to_string(characters_.size()));
        }
        return PairPig::build(*source_, characters_[0], characters_[1]);
    }

  private:
    const CharacterMatrix* source_ = nullptr;
    std::vector<std::size_t> characters_;
    std::vector<PigVertex> vertices_;
    std::vector<std::pair<PigVertex, PigVertex>> edges_;
};

inline Pig build_pig(const ColumnSlice& slice) {
    if (slice.width() == 0) throw Error(ErrorKind::WrongArity, "empty slice");
    return Pig(slice);
}

inline bool is_acyclic(const Pig& g) { return !g.as_pair().has_cycle(); }

inline std::vector<Path4> find_middle_paths(const Pig& g, PigVertex v) {
    auto pair = g.as_pair();
    if (!g.has_vertex(v)) return {};
    std::size_t side = v.character == pair.character(0) ? 0 : 1;
    return pair.middle_paths(side, v.state);
}

/// Debug dump: one edge per line, `a3-b2`, in sorted order.
inline void write_edges(std::ostream& out, const Pig& g) {
    for (const auto& [u, v] : g.edges()) {
        out << vertex_label(g.source(), u) << '-' << vertex_label(g.source(), v) << '\n';
    }
}

} // namespace ppd
