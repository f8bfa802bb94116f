#pragma once

#include <ppd/genbench.hpp>
#include <ppd/matrix.hpp>
#include <ppd/obstruction.hpp>
#include <ppd/oracle.hpp>
#include <ppd/phylo_tree.hpp>

#include <json.hpp>

namespace ppd {

using Json = nlohmann::ordered_json;

inline Json path_json(const CharacterMatrix& m, const Path4& p) {
    Json out = Json::array();
    for (const auto& v : p.vertices) out.push_back(vertex_label(m, v));
    return out;
}

/// {"verdict", "pair", "triple", "dependent": [{"char", "state", "witness", "path"}]}
/// with character labels and input state labels. Absent parts are empty arrays.
inline Json to_json(const CharacterMatrix& m, const ObstructionReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["pair"] = Json::array();
    if (r.pair)
        for (auto c : *r.pair) j["pair"].push_back(m.char_label(c));
    j["triple"] = Json::array();
    if (r.triple)
        for (auto c : *r.triple) j["triple"].push_back(m.char_label(c));
    j["dependent"] = Json::array();
    for (const auto& d : r.dependent) {
        j["dependent"].push_back({{"char", m.char_label(d.character)},
                                  {"state", m.original_state(d.character, d.state)},
                                  {"witness", m.char_label(d.witness)},
                                  {"path", path_json(m, d.path)}});
    }
    return j;
}

/// Same schema as an obstruction report, flagged with "oracle": true and
/// listing every obstruction found by exhaustive search.
inline Json to_json(const CharacterMatrix& m, const OracleVerdict& v) {
    ObstructionReport r;
    if (!v.has_pp && !v.incompatible_pairs.empty()) {
        r.verdict = Verdict::IncompatiblePair;
        r.pair = v.incompatible_pairs.front();
    } else if (!v.has_pp && !v.incompatible_triples.empty()) {
        r.verdict = Verdict::IncompatibleTriple;
        r.triple = v.incompatible_triples.front();
    }
    Json j = to_json(m, r);
    j["oracle"] = true;
    auto labels = [&](const auto& sets) {
        Json out = Json::array();
        for (const auto& s : sets) {
            Json one = Json::array();
            for (auto c : s) one.push_back(m.char_label(c));
            out.push_back(std::move(one));
        }
        return out;
    };
    j["incompatible_pairs"] = labels(v.incompatible_pairs);
    j["incompatible_triples"] = labels(v.incompatible_triples);
    if (v.witness_tree) j["tree"] = to_newick(*v.witness_tree);
    return j;
}

inline Json to_json(const CharacterMatrix& m) {
    Json j;
    j["taxa"] = m.taxa_labels();
    j["characters"] = m.char_labels();
    j["rows"] = m.original_rows();
    return j;
}

inline Json to_json(const BenchRecord& r) {
    return {{"method", to_string(r.method)},
            {"taxa", r.taxa},
            {"chars", r.chars},
            {"seed", r.seed},
            {"median_seconds", r.median_seconds},
            {"samples", r.samples},
            {"verdict", to_string(r.verdict)},
            {"consistent", r.consistent}};
}

} // namespace ppd
