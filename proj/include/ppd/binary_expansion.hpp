#pragma once

// Two-state expansion: one indicator character c(i) per observed (character,
// state), carrying 1 on taxa with state i and 2 elsewhere.

#include <ppd/error.hpp>
#include <ppd/matrix.hpp>

#include <cstdint>
#include <vector>

namespace ppd {

struct BinaryCharacter {
    std::size_t source_char = 0;
    State source_state = 0;
    std::vector<std::uint8_t> bits; // values in {1, 2}

    friend bool operator==(const BinaryCharacter&, const BinaryCharacter&) = default;
};

/// Ordered by (column, state).
inline std::vector<BinaryCharacter> expand(const CharacterMatrix& m) {
    std::vector<BinaryCharacter> out;
    for (std::size_t c = 0; c < m.chars(); ++c) {
        auto col = m.column(c);
        for (auto s : m.states(c)) {
            BinaryCharacter b{c, s, std::vector<std::uint8_t>(m.taxa())};
            for (std::size_t t = 0; t < m.taxa(); ++t) b.bits[t] = col[t] == s ? 1 : 2;
            out.push_back(std::move(b));
        }
    }
    return out;
}

/// Four gametes test: incompatible iff (1,1), (1,2), (2,1) and (2,2) all occur.
inline bool four_gametes_incompatible(const BinaryCharacter& x, const BinaryCharacter& y) {
    if (x.source_char == y.source_char) {
        throw Error(ErrorKind::SameSourceCharacter, "binary characters share a source character");
    }
    if (x.bits.size() != y.bits.size()) {
        throw Error(ErrorKind::MalformedInput, "binary characters differ in taxon count");
    }
    unsigned seen = 0;
    for (std::size_t t = 0; t < x.bits.size(); ++t) {
        seen |= 1u << ((x.bits[t] - 1) * 2 + (y.bits[t] - 1));
    }
    return seen == 0xF;
}

/// Pairwise four-gamete incompatibility over an expansion, indexed by
/// position in that expansion. Pairs with a shared source are never related.
class IncompatibilityRelation {
  public:
    IncompatibilityRelation() = default;

    explicit IncompatibilityRelation(const std::vector<BinaryCharacter>& chars)
        : size_(chars.size()), rel_(size_ * size_, false) {
        for (std::size_t x = 0; x < size_; ++x) {
            for (std::size_t y = x + 1; y < size_; ++y) {
                if (chars[x].source_char == chars[y].source_char) continue;
                bool inc = four_gametes_incompatible(chars[x], chars[y]);
                rel_[x * size_ + y] = rel_[y * size_ + x] = inc;
            }
        }
    }

    std::size_t size() const noexcept { return size_; }
    bool operator()(std::size_t x, std::size_t y) const { return rel_[x * size_ + y]; }

  private:
    std::size_t size_ = 0;
    std::vector<bool> rel_;
};

/// Characters d != c with two distinct states j, k such that c(i) fails the
/// four gametes test against both d(j) and d(k). Ascending column order.
inline std::vector<std::size_t> dependent_states_by_definition(const CharacterMatrix& m, std::size_t c, State i) {
    auto chars = expand(m);
    const BinaryCharacter* ci = nullptr;
    for (const auto& b : chars) {
        if (b.source_char == c && b.source_state == i) ci = &b;
    }
    if (ci == nullptr) {
        throw Error(ErrorKind::IndexOutOfRange, "state is not an observed state of the character");
    }
    std::vector<std::size_t> witnesses;
    for (std::size_t d = 0; d < m.chars(); ++d) {
        if (d == c) continue;
        std::size_t hits = 0;
        for (const auto& b : chars) {
            if (b.source_char == d && four_gametes_incompatible(*ci, b)) ++hits;
        }
        if (hits >= 2) witnesses.push_back(d);
    }
    return witnesses;
}

} // namespace ppd
