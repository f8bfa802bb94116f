// ppd: perfect phylogeny decisions, obstruction sets and trees for
// three-state character matrices.
//
// Exit codes: 0 compatible (or gen/bench succeeded), 1 obstruction found,
// 2 usage or input error.

#include <ppd/ppd.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum class Output { Json, Text, Newick };

struct Config {
    std::string input = "-";
    std::string format = "csv";
    std::string output;
    unsigned threads = 1;

    // gen
    std::size_t taxa = 10;
    std::size_t chars = 5;
    std::uint64_t seed = 1;
    std::string mode = "uniform";

    // bench
    std::vector<std::size_t> sizes{50, 100, 200, 400};
    std::size_t reps = 5;
    std::string out_path;
    std::string methods = "algorithm1,naive-triples";
};

constexpr int kExitCompatible = 0;
constexpr int kExitObstructed = 1;
constexpr int kExitError = 2;

Output output_of(const Config& cfg, Output fallback) {
    if (cfg.output == "json") return Output::Json;
    if (cfg.output == "text") return Output::Text;
    if (cfg.output == "newick") return Output::Newick;
    return fallback;
}

ppd::CharacterMatrix read_input(const Config& cfg) {
    const auto fmt = cfg.format == "compact" ? ppd::InputFormat::Compact : ppd::InputFormat::Csv;
    if (cfg.input == "-") return ppd::parse_matrix(std::cin, fmt);
    std::ifstream in(cfg.input);
    if (!in) throw ppd::Error(ppd::ErrorKind::MalformedInput, "cannot open '" + cfg.input + "'");
    return ppd::parse_matrix(in, fmt);
}

int exit_code(ppd::Verdict v) { return v == ppd::Verdict::Compatible ? kExitCompatible : kExitObstructed; }

void print_report_text(std::ostream& out, const ppd::CharacterMatrix& m, const ppd::ObstructionReport& r) {
    out << to_string(r.verdict) << '\n';
    if (r.pair) out << "pair: " << m.char_label((*r.pair)[0]) << ' ' << m.char_label((*r.pair)[1]) << '\n';
    if (r.triple) {
        out << "triple:";
        for (auto c : *r.triple) out << ' ' << m.char_label(c);
        out << '\n';
    }
    for (const auto& d : r.dependent) {
        out << "dependent: " << ppd::vertex_label(m, {d.character, d.state}) << " witness "
            << m.char_label(d.witness) << " path";
        for (const auto& v : d.path.vertices) out << ' ' << ppd::vertex_label(m, v);
        out << '\n';
    }
}

int run_check(const Config& cfg) {
    const auto m = read_input(cfg);
    const auto r = ppd::minimal_obstruction_set(m, {cfg.threads});
    if (output_of(cfg, Output::Text) == Output::Json) {
        std::cout << ppd::Json{{"verdict", to_string(r.verdict)}}.dump() << '\n';
    } else {
        std::cout << to_string(r.verdict) << '\n';
    }
    return exit_code(r.verdict);
}

int run_obstruct(const Config& cfg) {
    const auto m = read_input(cfg);
    const auto r = ppd::minimal_obstruction_set(m, {cfg.threads});
    if (output_of(cfg, Output::Json) == Output::Text) {
        print_report_text(std::cout, m, r);
    } else {
        std::cout << ppd::to_json(m, r).dump() << '\n';
    }
    return exit_code(r.verdict);
}

int run_tree(const Config& cfg) {
    const auto m = read_input(cfg);
    const auto r = ppd::minimal_obstruction_set(m, {cfg.threads});
    const auto out = output_of(cfg, Output::Newick);
    if (r.verdict != ppd::Verdict::Compatible) {
        if (out == Output::Text) {
            print_report_text(std::cout, m, r);
        } else {
            std::cout << ppd::to_json(m, r).dump() << '\n';
        }
        return kExitObstructed;
    }
    const auto tree = ppd::build_tree(m);
    if (!tree || !ppd::certify_convexity(*tree, m)) {
        throw std::logic_error("tree construction failed on a compatible matrix");
    }
    const auto newick = ppd::to_newick(*tree);
    if (out == Output::Json) {
        std::cout << ppd::Json{{"verdict", to_string(r.verdict)}, {"newick", newick}}.dump() << '\n';
    } else {
        std::cout << newick << '\n';
    }
    return kExitCompatible;
}

int run_oracle(const Config& cfg) {
    const auto m = read_input(cfg);
    const auto v = ppd::oracle_decide(m);
    if (output_of(cfg, Output::Json) == Output::Text) {
        std::cout << (v.has_pp ? "compatible" : "incompatible") << '\n';
    } else {
        std::cout << ppd::to_json(m, v).dump() << '\n';
    }
    return v.has_pp ? kExitCompatible : kExitObstructed;
}

ppd::GenMode mode_of(const std::string& s) {
    auto mode = ppd::parse_gen_mode(s);
    if (!mode) throw ppd::Error(ppd::ErrorKind::MalformedInput, "unknown mode '" + s + "'");
    return *mode;
}

int run_gen(const Config& cfg) {
    const auto m = ppd::generate({cfg.taxa, cfg.chars, cfg.seed, mode_of(cfg.mode)});
    if (output_of(cfg, Output::Text) == Output::Json) {
        std::cout << ppd::to_json(m).dump() << '\n';
    } else if (cfg.format == "compact") {
        ppd::write_compact(std::cout, m);
    } else {
        ppd::write_csv(std::cout, m);
    }
    return kExitCompatible;
}

int run_bench(const Config& cfg) {
    ppd::BenchOptions opts;
    opts.repetitions = cfg.reps;
    opts.threads = cfg.threads;
    opts.methods.clear();
    std::stringstream list(cfg.methods);
    for (std::string name; std::getline(list, name, ',');) {
        if (name == "algorithm1") opts.methods.push_back(ppd::BenchMethod::Algorithm1);
        else if (name == "naive-triples") opts.methods.push_back(ppd::BenchMethod::NaiveTriples);
        else throw ppd::Error(ppd::ErrorKind::MalformedInput, "unknown method '" + name + "'");
    }
    std::vector<ppd::GenSpec> specs;
    for (auto m : cfg.sizes) specs.push_back({cfg.taxa, m, cfg.seed, mode_of(cfg.mode)});
    const auto records = ppd::bench(specs, opts);

    ppd::Json j;
    j["records"] = ppd::Json::array();
    for (const auto& r : records) j["records"].push_back(ppd::to_json(r));
    j["slopes"] = ppd::Json::object();
    for (auto method : opts.methods) {
        std::vector<double> xs, ys;
        for (const auto& r : records) {
            if (r.method != method) continue;
            xs.push_back(static_cast<double>(r.chars));
            ys.push_back(r.median_seconds);
        }
        if (xs.size() >= 2) j["slopes"][std::string(to_string(method))] = ppd::loglog_slope(xs, ys);
    }
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw ppd::Error(ppd::ErrorKind::MalformedInput, "cannot write '" + cfg.out_path + "'");
        f << j.dump(2) << '\n';
    }
    if (output_of(cfg, Output::Text) == Output::Json) {
        std::cout << j.dump() << '\n';
    } else {
        for (const auto& r : records) {
            std::cout << to_string(r.method) << " taxa=" << r.taxa << " chars=" << r.chars
                      << " median=" << r.median_seconds << "s verdict=" << to_string(r.verdict)
                      << (r.consistent ? "" : " INCONSISTENT") << '\n';
        }
        for (const auto& [name, slope] : j["slopes"].items()) {
            std::cout << "slope " << name << " " << slope.get<double>() << '\n';
        }
    }
    return kExitCompatible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perfect phylogeny for three-state characters"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "json | text | newick")
            ->check(CLI::IsMember({"json", "text", "newick"}));
        sub->add_option("--format", cfg.format, "csv | compact")->check(CLI::IsMember({"csv", "compact"}));
        sub->add_option("--threads", cfg.threads, "worker threads for the pair scan");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "matrix file, or - for standard input");
        add_common(sub);
    };

    auto* check = app.add_subcommand("check", "print the compatibility verdict");
    auto* obstruct = app.add_subcommand("obstruct", "print a minimal obstruction set report");
    auto* tree = app.add_subcommand("tree", "print a perfect phylogeny in Newick format");
    auto* oracle = app.add_subcommand("oracle", "decide by exhaustive tree enumeration (at most 8 distinct taxa)");
    for (auto* sub : {check, obstruct, tree, oracle}) add_input(sub);

    auto* gen = app.add_subcommand("gen", "generate a random matrix");
    gen->add_option("--taxa", cfg.taxa)->check(CLI::PositiveNumber);
    gen->add_option("--chars", cfg.chars)->check(CLI::PositiveNumber);
    gen->add_option("--seed", cfg.seed);
    gen->add_option("--mode", cfg.mode, "uniform | compatible-biased | obstructed");
    add_common(gen);

    auto* bench = app.add_subcommand("bench", "time the pair scan against the naive triple scan");
    cfg.taxa = 100;
    bench->add_option("--sizes", cfg.sizes, "character counts")->delimiter(',');
    bench->add_option("--taxa", cfg.taxa)->check(CLI::PositiveNumber);
    bench->add_option("--reps", cfg.reps)->check(CLI::PositiveNumber);
    bench->add_option("--seed", cfg.seed);
    bench->add_option("--mode", cfg.mode);
    bench->add_option("--methods", cfg.methods, "comma-separated: algorithm1,naive-triples");
    bench->add_option("--out", cfg.out_path, "write JSON records here");
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    if (gen->parsed() && !gen->count("--taxa")) cfg.taxa = 10;
    if (bench->parsed() && !bench->count("--mode")) cfg.mode = "compatible-biased";

    try {
        if (check->parsed()) return run_check(cfg);
        if (obstruct->parsed()) return run_obstruct(cfg);
        if (tree->parsed()) return run_tree(cfg);
        if (oracle->parsed()) return run_oracle(cfg);
        if (gen->parsed()) return run_gen(cfg);
        if (bench->parsed()) return run_bench(cfg);
    } catch (const std::exception& e) {
        std::cerr << "ppd: " << e.what() << '\n';
        if (cfg.output == "json") std::cout << ppd::Json{{"error", e.what()}}.dump() << '\n';
        return kExitError;
    }
    return kExitError;
}
