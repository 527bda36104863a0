#include "subsetseed/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "subsetseed/ac.hpp"
#include "subsetseed/dfa.hpp"
#include "subsetseed/seed_automaton.hpp"

namespace subsetseed {

const char* kStatsCsvHeader = "alphabet,w,seeds_per_sample,samples,avg_ac,ratio_ac,avg_spi,ratio_spi,avg_min";

StatsConfig binary_stats_config() {
    StatsConfig cfg;
    auto [aa, sa] = parse_alphabet_spec("align: 1 0\nmatch: 1\nseed: #=1; _=10\nhash: #\n");
    cfg.alignment = aa;
    cfg.seed_alphabet = sa;
    cfg.alphabet_name = "binary";
    return cfg;
}

StatsConfig ternary_stats_config() {
    StatsConfig cfg;
    auto [aa, sa] = parse_alphabet_spec("align: 1 h 0\nmatch: 1\nseed: #=1; @=1h; _=1h0\nhash: #\n");
    cfg.alignment = aa;
    cfg.seed_alphabet = sa;
    cfg.alphabet_name = "ternary";
    return cfg;
}

std::uint64_t SeedRng::below(std::uint64_t n) {
    // rejection sampling keeps the draw unbiased and portable
    std::uint64_t limit = n * (~0ull / n);
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return x % n;
}

Seed random_seed(const StatsConfig& cfg, SeedRng& rng) {
    // The published tables do not state their span distribution. These
    // defaults are calibrated so the size ratios of the tables are
    // reproduced; override them to explore other regimes.
    int def_lo = cfg.alignment.size() <= 2 ? 5 : 7;
    int span_min = cfg.span_min > 0 ? cfg.span_min : cfg.weight + def_lo;
    int span_max = cfg.span_max > 0 ? cfg.span_max : cfg.weight + def_lo + 1;
    if (cfg.weight > span_min) span_min = cfg.weight;
    if (span_max < span_min) throw Error("random_seed: empty span range");
    if (cfg.weight < 0) throw Error("random_seed: negative weight");

    int span = span_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(span_max - span_min + 1)));
    if (cfg.weight > span) throw Error("random_seed: weight exceeds span");

    std::vector<char> letters(static_cast<std::size_t>(span), 0);
    std::vector<int> free_slots;
    int remaining = cfg.weight;
    if (cfg.weight >= 2 && span >= 2) {
        letters[0] = cfg.seed_alphabet.hash_symbol;
        letters[static_cast<std::size_t>(span - 1)] = cfg.seed_alphabet.hash_symbol;
        remaining -= 2;
        for (int i = 1; i < span - 1; ++i) free_slots.push_back(i);
    } else if (cfg.weight == 1) {
        letters[0] = cfg.seed_alphabet.hash_symbol;
        remaining -= 1;
        for (int i = 1; i < span; ++i) free_slots.push_back(i);
    } else {
        for (int i = 0; i < span; ++i) free_slots.push_back(i);
    }
    // partial Fisher-Yates: the first `remaining` slots become hashes
    for (int i = 0; i < remaining; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(rng.below(free_slots.size() - static_cast<std::size_t>(i)));
        std::swap(free_slots[static_cast<std::size_t>(i)], free_slots[j]);
        letters[static_cast<std::size_t>(free_slots[static_cast<std::size_t>(i)])] =
            cfg.seed_alphabet.hash_symbol;
    }

    std::vector<char> non_hash;
    for (std::size_t i = 0; i < cfg.seed_alphabet.symbols.size(); ++i)
        if (cfg.seed_alphabet.symbols[i] != cfg.seed_alphabet.hash_symbol)
            non_hash.push_back(cfg.seed_alphabet.symbols[i]);
    if (non_hash.empty() && cfg.weight < span)
        throw Error("random_seed: seed alphabet has no non-hash letter");
    std::string word;
    for (char c : letters)
        word += c ? c : non_hash[static_cast<std::size_t>(rng.below(non_hash.size()))];
    return parse_seed(word, cfg.alignment, cfg.seed_alphabet);
}

namespace {

struct SampleCounts {
    int ac = 0, spi = 0, min = 0;
};

SampleCounts measure(const std::vector<Seed>& seeds, const StatsConfig& cfg) {
    SampleCounts out;
    SeedAutomaton spi = seeds.size() == 1 ? build_incremental(seeds[0], cfg.alignment)
                                          : build_multi(seeds, cfg.alignment);
    AcAutomaton ac = build_ac_multi(seeds, cfg.alignment);
    out.spi = reachable_count(spi.dfa);
    out.ac = reachable_count(ac.dfa);
    out.min = reachable_count(minimize(spi.dfa));

    if (!(out.min <= out.spi && out.spi <= out.ac))
        throw Error("run_stats: state-count ordering violated (min " + std::to_string(out.min) +
                    ", spi " + std::to_string(out.spi) + ", ac " + std::to_string(out.ac) + ")");
    double bound = 1;
    for (const Seed& s : seeds) bound *= static_cast<double>(s.weight + 1) * std::pow(2.0, s.r());
    if (seeds.size() > 1) bound += 1;
    if (static_cast<double>(out.spi) > bound)
        throw Error("run_stats: size bound violated for a sample");
    return out;
}

} // namespace

StatsRow run_stats(const StatsConfig& cfg, std::ostream* csv) {
    if (cfg.samples < 1) throw Error("run_stats: needs at least one sample");
    if (cfg.seeds_per_sample < 1) throw Error("run_stats: needs at least one seed per sample");

    // All seeds are drawn up front so threading cannot change the sequence.
    SeedRng rng(cfg.rng_seed);
    std::vector<std::vector<Seed>> samples(static_cast<std::size_t>(cfg.samples));
    for (auto& sample : samples)
        for (int i = 0; i < cfg.seeds_per_sample; ++i) sample.push_back(random_seed(cfg, rng));

    std::vector<SampleCounts> counts(samples.size());
    int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < samples.size(); ++i) counts[i] = measure(samples[i], cfg);
    } else {
        std::atomic<std::size_t> next_index{0};
        std::atomic<bool> failed{false};
        std::string error_text;
        std::mutex error_lock;
        auto worker = [&] {
            for (;;) {
                std::size_t i = next_index.fetch_add(1);
                if (i >= samples.size() || failed.load()) return;
                try {
                    counts[i] = measure(samples[i], cfg);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> g(error_lock);
                    error_text = e.what();
                    failed.store(true);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failed.load()) throw Error(error_text);
    }

    // Fixed-order reduction keeps results independent of scheduling.
    double sum_ac = 0, sum_spi = 0, sum_min = 0;
    for (const SampleCounts& c : counts) {
        sum_ac += c.ac;
        sum_spi += c.spi;
        sum_min += c.min;
    }
    StatsRow row;
    row.alphabet = cfg.alphabet_name;
    row.weight = cfg.weight;
    row.seeds_per_sample = cfg.seeds_per_sample;
    row.samples = cfg.samples;
    row.avg_ac = sum_ac / cfg.samples;
    row.avg_spi = sum_spi / cfg.samples;
    row.avg_min = sum_min / cfg.samples;
    row.ratio_ac = row.avg_ac / row.avg_min;
    row.ratio_spi = row.avg_spi / row.avg_min;
    if (csv) *csv << csv_row(row) << '\n';
    return row;
}

std::string csv_row(const StatsRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.4f,%.4f,%.4f,%.4f,%.4f", row.alphabet.c_str(),
                  row.weight, row.seeds_per_sample, row.samples, row.avg_ac, row.ratio_ac,
                  row.avg_spi, row.ratio_spi, row.avg_min);
    return buf;
}

} // namespace subsetseed
