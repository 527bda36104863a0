// Command-line front-end: build/minimize/compare subset seed automata, run
// matches against alignment texts, build degenerate-text motif automata and
// reproduce the average-size statistics.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subsetseed/ac.hpp"
#include "subsetseed/alphabet.hpp"
#include "subsetseed/dfa.hpp"
#include "subsetseed/seed_automaton.hpp"
#include "subsetseed/stats.hpp"
#include "subsetseed/subset_matching.hpp"

namespace {

using namespace subsetseed;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_text_line(const std::string& path) {
    std::string content = read_file(path);
    while (!content.empty() && (content.back() == '\n' || content.back() == '\r')) content.pop_back();
    return content;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

std::vector<std::string> letter_names(const AlignmentAlphabet& aa) {
    std::vector<std::string> names;
    for (char c : aa.letters) names.emplace_back(1, c);
    return names;
}

struct BuildArgs {
    std::string spec_path;
    std::vector<std::string> seeds;
    std::string method = "incremental";
    std::string format = "text";
    std::string out_path;
};

int cmd_build(const BuildArgs& args) {
    auto [aa, sa] = parse_alphabet_spec(read_file(args.spec_path));
    std::vector<Seed> seeds;
    for (const std::string& w : args.seeds) seeds.push_back(parse_seed(w, aa, sa));

    SeedAutomaton automaton;
    if (seeds.size() == 1)
        automaton = args.method == "naive" ? build_naive(seeds[0], aa) : build_incremental(seeds[0], aa);
    else
        automaton = build_multi(seeds, aa);

    std::string rendered = args.format == "dot" ? export_dot(automaton.dfa, letter_names(aa))
                                                : serialize_dfa(automaton.dfa);
    write_output(args.out_path, rendered);
    std::cout << "states=" << automaton.dfa.n_states << " final=" << automaton.final_state << "\n";
    return kExitOk;
}

struct CompareArgs {
    std::string spec_path;
    std::vector<std::string> seeds;
};

int cmd_compare(const CompareArgs& args) {
    auto [aa, sa] = parse_alphabet_spec(read_file(args.spec_path));
    std::vector<Seed> seeds;
    for (const std::string& w : args.seeds) seeds.push_back(parse_seed(w, aa, sa));

    SeedAutomaton spi = seeds.size() == 1 ? build_incremental(seeds[0], aa) : build_multi(seeds, aa);
    AcAutomaton ac = build_ac_multi(seeds, aa);
    int n_spi = reachable_count(spi.dfa);
    int n_ac = reachable_count(ac.dfa);
    int n_min = reachable_count(minimize(spi.dfa));
    std::cout << "ac=" << n_ac << " spi=" << n_spi << " min=" << n_min << "\n";
    if (!(n_min <= n_spi && n_spi <= n_ac)) {
        std::cerr << "state-count ordering violated\n";
        return kExitInvariant;
    }
    return kExitOk;
}

struct MatchArgs {
    std::string spec_path;
    std::string seed;
    std::string text_path;
};

int cmd_match(const MatchArgs& args) {
    auto [aa, sa] = parse_alphabet_spec(read_file(args.spec_path));
    Seed seed = parse_seed(args.seed, aa, sa);
    AlignmentText text = parse_text(read_text_line(args.text_path), aa);

    std::vector<int> hits = naive_match_positions(seed, text);
    for (std::size_t i = 0; i < hits.size(); ++i) std::cout << (i ? " " : "") << hits[i];
    std::cout << "\n";

    SeedAutomaton automaton = build_incremental(seed, aa);
    std::optional<int> end = first_hit(automaton.dfa, text.letters);
    std::cout << "first_hit_end=" << (end ? std::to_string(*end) : "none") << "\n";

    bool agree = end.has_value() == !hits.empty() &&
                 (!end || *end - seed.span + 1 == hits.front());
    if (!agree) {
        std::cerr << "automaton and oracle disagree\n";
        return kExitInvariant;
    }
    return kExitOk;
}

struct MotifArgs {
    std::string spec_path;
    std::string pattern;
    std::string semantics = "exact";
    std::string text_path;
    std::string method = "incremental";
};

int cmd_motif(const MotifArgs& args) {
    DegenerateAlphabet alpha =
        args.spec_path.empty() ? iupac_dna() : parse_degenerate_spec(read_file(args.spec_path));
    MatchSemantics sem = parse_semantics(args.semantics);
    DegeneratePattern pattern = parse_degenerate_pattern(args.pattern, alpha);
    GeneralizedSeed gen = generalize_seed(pattern, alpha, sem);

    SeedAutomaton automaton = args.method == "naive" ? build_naive(gen.compiled)
                                                     : build_incremental(gen.compiled);
    int n = reachable_count(automaton.dfa);
    int n_min = reachable_count(minimize(automaton.dfa));
    std::cout << "states=" << n << " min=" << n_min << "\n";

    if (!args.text_path.empty()) {
        DegenerateText text = parse_degenerate_text(read_text_line(args.text_path), alpha, sem);
        std::vector<int> hits = naive_degenerate_match(pattern.base_masks, text.base_masks, sem);
        for (std::size_t i = 0; i < hits.size(); ++i) std::cout << (i ? " " : "") << hits[i];
        std::cout << "\n";
        std::optional<int> end = first_hit(automaton.dfa, text.letters);
        bool agree = end.has_value() == !hits.empty() &&
                     (!end || *end - static_cast<int>(pattern.base_masks.size()) + 1 == hits.front());
        if (!agree) {
            std::cerr << "automaton and oracle disagree\n";
            return kExitInvariant;
        }
    }
    return kExitOk;
}

struct StatsArgs {
    std::string alphabet = "binary";
    std::string spec_path;
    int weight = 9;
    int span_min = 0;
    int span_max = 0;
    int samples = 10000;
    int seeds_per_sample = 1;
    std::uint64_t rng_seed = 1;
    int threads = 1;
    std::string out_path;
    bool header = true;
};

int cmd_stats(const StatsArgs& args) {
    StatsConfig cfg;
    if (args.alphabet == "binary") cfg = binary_stats_config();
    else if (args.alphabet == "ternary") cfg = ternary_stats_config();
    else if (args.alphabet == "spec") {
        if (args.spec_path.empty()) throw Error("stats: --alphabet spec needs --spec");
        auto [aa, sa] = parse_alphabet_spec(read_file(args.spec_path));
        cfg.alignment = aa;
        cfg.seed_alphabet = sa;
        cfg.alphabet_name = "custom";
    } else {
        throw Error("stats: unknown alphabet '" + args.alphabet + "'");
    }
    cfg.weight = args.weight;
    cfg.span_min = args.span_min;
    cfg.span_max = args.span_max;
    cfg.samples = args.samples;
    cfg.seeds_per_sample = args.seeds_per_sample;
    cfg.rng_seed = args.rng_seed;
    cfg.threads = args.threads;

    std::ostringstream csv;
    if (args.header) csv << kStatsCsvHeader << '\n';
    run_stats(cfg, &csv);
    write_output(args.out_path, csv.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subset seed automaton toolkit"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "build a seed automaton and write it out");
    build->add_option("--spec", build_args.spec_path, "alphabet spec file")->required();
    build->add_option("--seed", build_args.seeds, "seed word(s); several build the multi-seed automaton")
        ->required()
        ->expected(-1);
    build->add_option("--method", build_args.method, "naive | incremental")
        ->check(CLI::IsMember({"naive", "incremental"}));
    build->add_option("--format", build_args.format, "dot | text")
        ->check(CLI::IsMember({"dot", "text"}));
    build->add_option("--out", build_args.out_path, "output path (default stdout)");

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand("compare", "compare AC, seed automaton and minimal sizes");
    compare->add_option("--spec", compare_args.spec_path, "alphabet spec file")->required();
    compare->add_option("--seed", compare_args.seeds, "seed word(s)")->required()->expected(-1);

    MatchArgs match_args;
    CLI::App* match = app.add_subcommand("match", "report seed occurrences in a text");
    match->add_option("--spec", match_args.spec_path, "alphabet spec file")->required();
    match->add_option("--seed", match_args.seed, "seed word")->required();
    match->add_option("--text", match_args.text_path, "text file (one line of letters)")->required();

    MotifArgs motif_args;
    CLI::App* motif = app.add_subcommand("motif", "degenerate-text motif automaton");
    motif->add_option("--spec", motif_args.spec_path, "degenerate alphabet spec (default IUPAC DNA)");
    motif->add_option("--pattern", motif_args.pattern, "pattern, e.g. 'AN[GT]G'")->required();
    motif->add_option("--semantics", motif_args.semantics, "exact | inclusion | intersection")
        ->check(CLI::IsMember({"exact", "inclusion", "intersection"}));
    motif->add_option("--text", motif_args.text_path, "optional text file to scan");
    motif->add_option("--method", motif_args.method, "naive | incremental")
        ->check(CLI::IsMember({"naive", "incremental"}));

    StatsArgs stats_args;
    CLI::App* stats = app.add_subcommand("stats", "average automaton sizes over random seeds");
    stats->add_option("--alphabet", stats_args.alphabet, "binary | ternary | spec");
    stats->add_option("--spec", stats_args.spec_path, "alphabet spec file for --alphabet spec");
    stats->add_option("--weight", stats_args.weight, "hash weight of generated seeds");
    stats->add_option("--span-min", stats_args.span_min, "minimum span (default weight+1)");
    stats->add_option("--span-max", stats_args.span_max, "maximum span (default weight+8)");
    stats->add_option("--samples", stats_args.samples, "number of samples");
    stats->add_option("--seeds-per-sample", stats_args.seeds_per_sample, "1 for single, 2 for pairs");
    stats->add_option("--rng-seed", stats_args.rng_seed, "random generator seed");
    stats->add_option("--threads", stats_args.threads, "worker threads");
    stats->add_option("--out", stats_args.out_path, "CSV output path (default stdout)");
    stats->add_flag("!--no-header", stats_args.header, "omit the CSV header row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build(build_args);
        if (compare->parsed()) return cmd_compare(compare_args);
        if (match->parsed()) return cmd_match(match_args);
        if (motif->parsed()) return cmd_motif(motif_args);
        if (stats->parsed()) return cmd_stats(stats_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
