#pragma once

// Minimal obstruction sets from pairwise information only.
//
// A state i of character c is dependent when some other character d (the
// witness) has two states whose indicators both fail the four gametes test
// against c(i); for pairwise compatible input this happens exactly when
// pig(M[c,d]) has a length-four path with middle c_i. A pairwise compatible
// matrix has a perfect phylogeny iff no character has two dependent states,
// and a character with two dependent states together with their witnesses is
// an obstruction set of size three.

#include <ppd/matrix.hpp>
#include <ppd/pig.hpp>

#include <array>
#include <atomic>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

namespace ppd {

enum class Verdict { Compatible, IncompatiblePair, IncompatibleTriple };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Compatible: return "compatible";
    case Verdict::IncompatiblePair: return "incompatible_pair";
    case Verdict::IncompatibleTriple: return "incompatible_triple";
    }
    return "?";
}

struct DependentMark {
    std::size_t character = 0;
    State state = 0;
    std::size_t witness = 0;
    Path4 path; // first canonical path with middle (character, state) in pig(M[character, witness])

    friend bool operator==(const DependentMark&, const DependentMark&) = default;
};

struct ObstructionReport {
    Verdict verdict = Verdict::Compatible;
    std::optional<std::array<std::size_t, 2>> pair;   // ascending columns
    std::optional<std::array<std::size_t, 3>> triple; // ascending columns
    std::vector<DependentMark> dependent;             // two marks on one character, by state

    friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

struct ObstructionOptions {
    /// Worker threads for the pair scan; 0 or 1 scans sequentially.
    unsigned threads = 1;
};

namespace detail {

struct PairSummary {
    bool cycle = false;
    std::uint8_t middles[2] = {0, 0};
};

inline PairSummary summarize(const PairPig& g) {
    PairSummary s;
    s.cycle = g.has_cycle();
    if (!s.cycle) {
        s.middles[0] = g.middle_mask(0);
        s.middles[1] = g.middle_mask(1);
    }
    return s;
}

/// Replays the pair scan in lexicographic order. `summary(a, b)` supplies the
/// per-pair facts, so sequential and precomputed-parallel scans share every
/// decision and produce identical reports.
template <class Summary>
ObstructionReport scan_pairs(const CharacterMatrix& m, Summary&& summary) {
    const std::size_t chars = m.chars();
    std::vector<std::array<std::optional<DependentMark>, 3>> marks(chars);
    ObstructionReport found; // triple evidence, once S is set
    bool have_triple = false;

    auto try_collect = [&](std::size_t x) -> bool {
        std::array<const DependentMark*, 2> two{};
        std::size_t k = 0;
        for (const auto& mk : marks[x]) {
            if (mk && k < 2) two[k++] = &*mk;
        }
        if (k < 2) return false;
        found.verdict = Verdict::IncompatibleTriple;
        std::array<std::size_t, 3> t{x, two[0]->witness, two[1]->witness};
        std::sort(t.begin(), t.end());
        found.triple = t;
        found.dependent = {*two[0], *two[1]};
        return true;
    };

    for (std::size_t a = 0; a < chars; ++a) {
        for (std::size_t b = a + 1; b < chars; ++b) {
            const PairSummary s = summary(a, b);
            if (s.cycle) {
                ObstructionReport r;
                r.verdict = Verdict::IncompatiblePair;
                r.pair = std::array<std::size_t, 2>{a, b};
                return r;
            }
            if (have_triple || (s.middles[0] | s.middles[1]) == 0) continue;

            std::optional<PairPig> g;
            const std::array<std::size_t, 2> ends{a, b};
            for (std::size_t side = 0; side < 2; ++side) {
                const std::size_t x = ends[side];
                for (State st = 1; st <= 3; ++st) {
                    if (!(s.middles[side] >> (st - 1) & 1u) || marks[x][st - 1]) continue;
                    if (!g) g = PairPig::build(m, a, b);
                    marks[x][st - 1] = DependentMark{x, st, ends[1 - side], g->middle_paths(side, st).front()};
                }
            }
            have_triple = try_collect(a) || try_collect(b);
        }
    }
    if (have_triple) return found;
    return {};
}

} // namespace detail

/// Scans all column pairs once: the first pair (lexicographic) whose pig has
/// a cycle is reported; otherwise the first character to collect two
/// dependent-state marks yields a triple; otherwise the matrix is compatible.
/// O(m^2 n) time. The report does not depend on `opts.threads`.
inline ObstructionReport minimal_obstruction_set(const CharacterMatrix& m, ObstructionOptions opts = {}) {
    const std::size_t chars = m.chars();
    if (opts.threads <= 1 || chars < 3) {
        return detail::scan_pairs(m, [&](std::size_t a, std::size_t b) {
            return detail::summarize(PairPig::build(m, a, b));
        });
    }

    auto index = [chars](std::size_t a, std::size_t b) { return a * chars - a * (a + 1) / 2 + (b - a - 1); };
    std::vector<detail::PairSummary> table(chars * (chars - 1) / 2);
    std::atomic<std::size_t> first_cycle_row{chars};
    {
        std::vector<std::jthread> workers;
        const unsigned n = std::min<unsigned>(opts.threads, static_cast<unsigned>(chars));
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t a = w; a < chars; a += n) {
                    // Rows after a known cycle are never consulted by the replay.
                    if (a > first_cycle_row.load(std::memory_order_relaxed)) break;
                    for (std::size_t b = a + 1; b < chars; ++b) {
                        auto s = detail::summarize(PairPig::build(m, a, b));
                        table[index(a, b)] = s;
                        if (s.cycle) {
                            auto cur = first_cycle_row.load(std::memory_order_relaxed);
                            while (a < cur && !first_cycle_row.compare_exchange_weak(cur, a)) {
                            }
                            break;
                        }
                    }
                }
            });
        }
    }
    return detail::scan_pairs(m, [&](std::size_t a, std::size_t b) { return table[index(a, b)]; });
}

/// Path route to dependent states: every witness d with a length-four path
/// whose middle is (c, i) in pig(M[c, d]). Ascending column order.
inline std::vector<std::size_t> dependent_witnesses_by_paths(const CharacterMatrix& m, std::size_t c, State i) {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < m.chars(); ++d) {
        if (d == c) continue;
        auto g = d < c ? PairPig::build(m, d, c) : PairPig::build(m, c, d);
        if (g.is_middle(d < c ? 1 : 0, i)) out.push_back(d);
    }
    return out;
}

/// Dependent states of every character (path route), as bit masks.
inline std::vector<std::uint8_t> dependent_state_masks(const CharacterMatrix& m) {
    std::vector<std::uint8_t> masks(m.chars(), 0);
    for (std::size_t a = 0; a < m.chars(); ++a) {
        for (std::size_t b = a + 1; b < m.chars(); ++b) {
            auto g = PairPig::build(m, a, b);
            masks[a] |= g.middle_mask(0);
            masks[b] |= g.middle_mask(1);
        }
    }
    return masks;
}

} // namespace ppd
