#pragma once

// Seeded matrix generators and the timing harness comparing the pair scan
// against a naive scan of every triple.

#include <ppd/forbidden.hpp>
#include <ppd/matrix.hpp>
#include <ppd/obstruction.hpp>
#include <ppd/pig.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ppd {

enum class GenMode { Uniform, CompatibleBiased, Obstructed };

inline std::string_view to_string(GenMode mode) {
    switch (mode) {
    case GenMode::Uniform: return "uniform";
    case GenMode::CompatibleBiased: return "compatible-biased";
    case GenMode::Obstructed: return "obstructed";
    }
    return "?";
}

inline std::optional<GenMode> parse_gen_mode(std::string_view s) {
    if (s == "uniform") return GenMode::Uniform;
    if (s == "compatible-biased") return GenMode::CompatibleBiased;
    if (s == "obstructed") return GenMode::Obstructed;
    return std::nullopt;
}

struct GenSpec {
    std::size_t taxa = 1;
    std::size_t chars = 1;
    std::uint64_t seed = 0;
    GenMode mode = GenMode::Uniform;
};

namespace gen_detail {

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Characters evolved without homoplasy on a random binary tree: each
/// character starts in state 1 at the root and gains each further state
/// by a single mutation on a random edge, so every state is convex.
inline std::vector<std::vector<int>> tree_rows(std::mt19937_64& rng, std::size_t taxa, std::size_t chars) {
    std::vector<std::size_t> parent{0};
    std::vector<std::size_t> leaves{0};
    while (leaves.size() < taxa) {
        const std::size_t pick = uniform_index(rng, leaves.size());
        const std::size_t node = leaves[pick];
        parent.push_back(node);
        parent.push_back(node);
        leaves[pick] = parent.size() - 2;
        leaves.push_back(parent.size() - 1);
    }
    std::shuffle(leaves.begin(), leaves.end(), rng);

    std::vector<std::vector<int>> rows(taxa, std::vector<int>(chars));
    std::vector<int> state(parent.size());
    std::discrete_distribution<int> mutations({1, 3, 6});
    for (std::size_t c = 0; c < chars; ++c) {
        const int k = parent.size() > 1 ? std::min<int>(mutations(rng), static_cast<int>(parent.size() - 1)) : 0;
        std::vector<int> gained(parent.size(), 0);
        for (int i = 0; i < k; ++i) {
            std::size_t node;
            do node = 1 + uniform_index(rng, parent.size() - 1);
            while (gained[node] != 0);
            gained[node] = 2 + i;
        }
        // Children are always created after their parent.
        state[0] = 1;
        for (std::size_t v = 1; v < parent.size(); ++v) state[v] = gained[v] ? gained[v] : state[parent[v]];
        for (std::size_t t = 0; t < taxa; ++t) rows[t][c] = state[leaves[t]];
    }
    return rows;
}

} // namespace gen_detail

/// Pure function of the spec.
///   uniform            every cell independently from {1,2,3}
///   compatible-biased  tree-evolved characters; always has a perfect phylogeny
///   obstructed         tree-evolved characters with one forbidden-pattern
///                      triple planted on three random columns; needs at least
///                      5 taxa and 3 characters, otherwise falls back to uniform
inline CharacterMatrix generate(const GenSpec& spec) {
    if (spec.taxa == 0 || spec.chars == 0) throw Error(ErrorKind::MalformedInput, "counts must be positive");
    std::mt19937_64 rng(spec.seed);
    std::vector<std::vector<int>> rows;
    const bool plant = spec.mode == GenMode::Obstructed && spec.taxa >= 5 && spec.chars >= 3;

    if (spec.mode == GenMode::Uniform || (spec.mode == GenMode::Obstructed && !plant)) {
        rows.assign(spec.taxa, std::vector<int>(spec.chars));
        std::uniform_int_distribution<int> cell(1, 3);
        for (auto& r : rows)
            for (auto& v : r) v = cell(rng);
        return CharacterMatrix(rows);
    }

    rows = gen_detail::tree_rows(rng, spec.taxa, spec.chars);
    if (plant) {
        const auto pattern = static_cast<ForbiddenPattern>(gen_detail::uniform_index(rng, 3));
        const auto& planted = realizing_rows(pattern);
        std::vector<std::size_t> cols(spec.chars);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(cols.begin(), cols.end(), rng);
        std::vector<std::size_t> taxa(spec.taxa);
        std::iota(taxa.begin(), taxa.end(), 0);
        std::shuffle(taxa.begin(), taxa.end(), rng);
        for (std::size_t i = 0; i < spec.taxa; ++i) {
            const auto& r = planted[i < planted.size() ? i : gen_detail::uniform_index(rng, planted.size())];
            for (std::size_t role = 0; role < 3; ++role) rows[taxa[i]][cols[role]] = r[role];
        }
    }
    return CharacterMatrix(rows);
}

/// Baseline: every pair is tested for a cycle, then every triple by building
/// its pig from the taxa and searching for a forbidden pattern. O(m^3 n).
/// Triple verdicts are memoised by edge set.
inline ObstructionReport naive_triple_scan(const CharacterMatrix& m) {
    const std::size_t k = m.chars();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (PairPig::build(m, a, b).has_cycle()) {
                ObstructionReport r;
                r.verdict = Verdict::IncompatiblePair;
                r.pair = std::array<std::size_t, 2>{a, b};
                return r;
            }
        }
    }
    const std::size_t fewest = 13; // smallest forbidden edge set
    std::unordered_map<std::uint32_t, bool> seen;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            for (std::size_t c = b + 1; c < k; ++c) {
                const auto bits = triple_edge_bits(m.column(a), m.column(b), m.column(c));
                if (static_cast<std::size_t>(std::popcount(bits)) < fewest) continue;
                auto it = seen.find(bits);
                if (it == seen.end()) {
                    it = seen.emplace(bits, find_forbidden_embedding(triple_graph_from_bits(bits)).has_value()).first;
                }
                if (it->second) {
                    ObstructionReport r;
                    r.verdict = Verdict::IncompatibleTriple;
                    r.triple = std::array<std::size_t, 3>{a, b, c};
                    return r;
                }
            }
        }
    }
    return {};
}

enum class BenchMethod { Algorithm1, NaiveTriples };

inline std::string_view to_string(BenchMethod m) {
    return m == BenchMethod::Algorithm1 ? "algorithm1" : "naive-triples";
}

struct BenchRecord {
    BenchMethod method = BenchMethod::Algorithm1;
    std::size_t taxa = 0;
    std::size_t chars = 0;
    std::uint64_t seed = 0;
    double median_seconds = 0;
    std::vector<double> samples;
    Verdict verdict = Verdict::Compatible;
    bool consistent = true; // same verdict on every repetition and across methods
};

struct BenchOptions {
    std::size_t repetitions = 5;
    std::vector<BenchMethod> methods{BenchMethod::Algorithm1, BenchMethod::NaiveTriples};
    unsigned threads = 1; // pair-scan workers for algorithm1
    double min_sample_seconds = 0.05; // fast runs are batched until a sample lasts this long
};

inline double median(std::vector<double> xs) {
    if (xs.empty()) return 0;
    std::sort(xs.begin(), xs.end());
    const auto n = xs.size();
    return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = std::log(xs[i]), y = std::log(ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// One record per (spec, method), in that order. Each pair gets a warm-up
/// run that also sizes its batch; the timed repetitions then visit every pair
/// in turn, so slow phases of the machine spread across all sizes. The record
/// holds the median per-run wall time on a monotonic clock.
inline std::vector<BenchRecord> bench(const std::vector<GenSpec>& specs, const BenchOptions& opts = {}) {
    struct Job {
        std::size_t matrix;
        BenchMethod method;
        std::size_t batch;
    };
    std::vector<CharacterMatrix> matrices;
    std::vector<BenchRecord> out;
    std::vector<Job> jobs;
    auto run = [&](const Job& job) {
        const auto& m = matrices[job.matrix];
        return job.method == BenchMethod::Algorithm1 ? minimal_obstruction_set(m, {opts.threads})
                                                     : naive_triple_scan(m);
    };
    for (const auto& spec : specs) {
        matrices.push_back(generate(spec));
        for (auto method : opts.methods) {
            Job job{matrices.size() - 1, method, 1};
            BenchRecord rec;
            rec.method = method;
            rec.taxa = spec.taxa;
            rec.chars = spec.chars;
            rec.seed = spec.seed;
            const auto warm = std::chrono::steady_clock::now();
            rec.verdict = run(job).verdict;
            const double once = std::chrono::duration<double>(std::chrono::steady_clock::now() - warm).count();
            job.batch = static_cast<std::size_t>(std::clamp(opts.min_sample_seconds / std::max(once, 1e-9), 1.0, 1e6));
            jobs.push_back(job);
            out.push_back(std::move(rec));
        }
    }
    for (std::size_t r = 0; r < opts.repetitions; ++r) {
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            const auto start = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < jobs[k].batch; ++i) {
                if (run(jobs[k]).verdict != out[k].verdict) out[k].consistent = false;
            }
            const auto stop = std::chrono::steady_clock::now();
            out[k].samples.push_back(std::chrono::duration<double>(stop - start).count() /
                                     static_cast<double>(jobs[k].batch));
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].median_seconds = median(out[k].samples);
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (jobs[j].matrix == jobs[k].matrix && out[j].verdict != out[k].verdict) out[k].consistent = false;
        }
    }
    return out;
}

} // namespace ppd
