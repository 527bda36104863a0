#ifndef SUBSETSEED_STATS_HPP
#define SUBSETSEED_STATS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "subsetseed/alphabet.hpp"

namespace subsetseed {

/// Harness configuration for the average-size experiments. The paper does
/// not pin the random seed distribution; these are the exposed knobs.
struct StatsConfig {
    AlignmentAlphabet alignment;
    SeedAlphabet seed_alphabet;
    std::string alphabet_name; // CSV tag, e.g. "binary" / "ternary"
    int weight = 9;
    int span_min = 0; // 0 = calibrated default (weight+5 binary, weight+7 larger alphabets)
    int span_max = 0; // 0 = span_min default + 1
    int samples = 10000;
    int seeds_per_sample = 1;
    std::uint64_t rng_seed = 1;
    int threads = 1;
};

StatsConfig binary_stats_config();
StatsConfig ternary_stats_config();

struct StatsRow {
    std::string alphabet;
    int weight = 0;
    int seeds_per_sample = 1;
    int samples = 0;
    double avg_ac = 0, ratio_ac = 0, avg_spi = 0, ratio_spi = 0, avg_min = 0;
};

/// mt19937_64 with explicit bounded draws so byte-identical reruns do not
/// depend on the standard library's distribution implementations.
class SeedRng {
  public:
    explicit SeedRng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t below(std::uint64_t n); // uniform in [0, n)
  private:
    std::mt19937_64 gen_;
};

/// Draws one random seed: span uniform in [span_min, span_max], exactly
/// `weight` hash positions. First and last positions are forced to hash when
/// weight >= 2 (the usual spaced-seed convention); weight 1 pins only the
/// first position, weight 0 none. Remaining non-hash positions get a
/// uniformly random non-hash seed letter.
Seed random_seed(const StatsConfig& cfg, SeedRng& rng);

/// CSV columns for run_stats output.
extern const char* kStatsCsvHeader;

/// Builds, for each sample, the seed automaton (incremental), the
/// Aho-Corasick baseline and the minimized automaton; accumulates averages
/// and enforces the exact per-sample guarantees (min <= spi <= ac plus the
/// size bound). Emits one CSV row when csv is non-null.
StatsRow run_stats(const StatsConfig& cfg, std::ostream* csv = nullptr);

std::string csv_row(const StatsRow& row);

} // namespace subsetseed

#endif
