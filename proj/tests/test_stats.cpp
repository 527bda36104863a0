#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "subsetseed/ac.hpp"
#include "subsetseed/dfa.hpp"
#include "subsetseed/seed_automaton.hpp"
#include "subsetseed/stats.hpp"
#include "test_util.hpp"

using namespace subsetseed;

TEST_CASE("the only weight-3 span-3 seed is all hashes") {
    StatsConfig cfg = binary_stats_config();
    cfg.weight = 3;
    cfg.span_min = 3;
    cfg.span_max = 3;
    SeedRng rng(5);
    for (int i = 0; i < 10; ++i) CHECK(random_seed(cfg, rng).symbols == "###");
}

TEST_CASE("generated seeds obey the documented distribution constraints") {
    StatsConfig cfg = ternary_stats_config();
    cfg.weight = 4;
    SeedRng rng(9);
    for (int i = 0; i < 500; ++i) {
        Seed s = random_seed(cfg, rng);
        CHECK(s.weight == 4);
        CHECK(s.span >= 11); // calibrated ternary default range [w+7, w+8]
        CHECK(s.span <= 12);
        CHECK(s.symbols.front() == '#');
        CHECK(s.symbols.back() == '#');
    }

    cfg.weight = 1; // only the first position can be pinned
    for (int i = 0; i < 100; ++i) {
        Seed s = random_seed(cfg, rng);
        CHECK(s.weight == 1);
        CHECK(s.symbols.front() == '#');
    }

    cfg.weight = 0;
    for (int i = 0; i < 100; ++i) CHECK(random_seed(cfg, rng).weight == 0);

    cfg.weight = 5;
    cfg.span_min = 3;
    cfg.span_max = 2; // empty range
    CHECK_THROWS_AS(random_seed(cfg, rng), Error);
}

TEST_CASE("identical rng seeds give identical seed streams") {
    StatsConfig cfg = ternary_stats_config();
    cfg.weight = 6;
    SeedRng a(123), b(123);
    for (int i = 0; i < 200; ++i) CHECK(random_seed(cfg, a).symbols == random_seed(cfg, b).symbols);
}

TEST_CASE("a single-sample run reports that sample's exact counts") {
    StatsConfig cfg = binary_stats_config();
    cfg.weight = 5;
    cfg.samples = 1;
    cfg.rng_seed = 77;

    SeedRng rng(77);
    Seed expected_seed = random_seed(cfg, rng);
    SeedAutomaton spi = build_incremental(expected_seed, cfg.alignment);
    AcAutomaton ac = build_ac(expected_seed, cfg.alignment);

    StatsRow row = run_stats(cfg);
    CHECK(row.avg_spi == doctest::Approx(reachable_count(spi.dfa)));
    CHECK(row.avg_ac == doctest::Approx(reachable_count(ac.dfa)));
    CHECK(row.avg_min == doctest::Approx(reachable_count(minimize(spi.dfa))));
}

TEST_CASE("csv output is byte-identical across reruns and thread counts") {
    StatsConfig cfg = binary_stats_config();
    cfg.weight = 6;
    cfg.samples = 60;
    cfg.rng_seed = 4242;

    std::ostringstream a, b;
    run_stats(cfg, &a);
    run_stats(cfg, &b);
    CHECK(a.str() == b.str());
    CHECK_FALSE(a.str().empty());

    cfg.threads = 4;
    std::ostringstream c;
    run_stats(cfg, &c);
    CHECK(a.str() == c.str());
}

TEST_CASE("per-sample guarantees hold over a batch") {
    StatsConfig cfg = ternary_stats_config();
    cfg.weight = 7;
    cfg.samples = 150;
    cfg.rng_seed = 2;
    StatsRow row = run_stats(cfg); // run_stats throws if any ordering breaks
    CHECK(row.avg_min <= row.avg_spi);
    CHECK(row.avg_spi <= row.avg_ac);
    CHECK(row.ratio_spi >= 1.0);
    CHECK(row.ratio_ac >= row.ratio_spi);

    cfg.seeds_per_sample = 2;
    cfg.samples = 80;
    StatsRow pairs = run_stats(cfg);
    CHECK(pairs.avg_min <= pairs.avg_spi);
    CHECK(pairs.avg_spi <= pairs.avg_ac);
}

TEST_CASE("config validation") {
    StatsConfig cfg = binary_stats_config();
    cfg.samples = 0;
    CHECK_THROWS_AS(run_stats(cfg), Error);
    cfg.samples = 1;
    cfg.seeds_per_sample = 0;
    CHECK_THROWS_AS(run_stats(cfg), Error);
}
