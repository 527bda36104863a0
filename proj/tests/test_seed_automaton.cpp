#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "subsetseed/seed_automaton.hpp"
#include "test_util.hpp"

using namespace subsetseed;

namespace {

CompiledSeed compiled(const char* word, const testutil::Alphabets& al) {
    return compile_seed(parse_seed(word, al.aa, al.sa), al.aa);
}

std::set<std::string> label_set(const SeedAutomaton& a) {
    return {a.dfa.labels.begin(), a.dfa.labels.end()};
}

int run_word(const SeedAutomaton& a, const CompiledSeed& cs, const std::string& text,
             const AlignmentAlphabet& aa) {
    (void)cs;
    int s = a.dfa.initial;
    for (char c : text) s = a.dfa.step(s, aa.index_of(c));
    return s;
}

} // namespace

TEST_CASE("single transitions follow the definition") {
    auto al = testutil::ternary();
    CompiledSeed cs = compiled("#_@#", al);

    auto q1 = step(cs, SeedState{0, 0}, al.aa.index_of('1'));
    REQUIRE(q1.has_value());
    CHECK(*q1 == SeedState{0, 1});

    // <{2,3},0> on '1' completes the span-4 seed
    std::uint64_t both = 0b11;
    CHECK_FALSE(step(cs, SeedState{both, 0}, al.aa.index_of('1')).has_value());

    // <{2},1> on 'h': position 2 restarts, position 4 is hash so no extension
    CompiledSeed fwd = compiled("#@_#", al);
    auto q2 = step(fwd, SeedState{0b01, 1}, al.aa.index_of('h'));
    REQUIRE(q2.has_value());
    CHECK(state_label(fwd, *q2) == "<{2},0>");

    CHECK_THROWS_AS(step(fwd, SeedState{0, 0}, 7), std::exception);
}

TEST_CASE("the eleven-letter trace lands in <{2,7},2>") {
    auto al = testutil::ternary();
    Seed seed = parse_seed("#@#_##_###", al.aa, al.sa);
    CHECK(seed.r_positions == std::vector<int>{2, 4, 7});
    CompiledSeed cs = compile_seed(seed, al.aa);
    SeedAutomaton a = build_incremental(cs);

    int s = run_word(a, cs, "111h1011h", al.aa);
    CHECK(a.dfa.labels[static_cast<std::size_t>(s)] == "<{2,7},0>");
    s = run_word(a, cs, "111h1011h11", al.aa);
    CHECK(a.dfa.labels[static_cast<std::size_t>(s)] == "<{2,7},2>");

    AlignmentText text = parse_text("111h1011h11", al.aa);
    CHECK(verify_trace(cs, a, text.letters));
}

TEST_CASE("all eight non-final states of the span-4 example are built") {
    std::set<std::string> expected{"<{},0>",  "<{},1>",  "<{},2>",   "<{},3>", "<{2},0>",
                                   "<{2},1>", "<{3},0>", "<{2,3},0>", "<>"};
    auto al = testutil::ternary();
    for (const char* word : {"#@_#", "#_@#"}) {
        SeedAutomaton naive = build_naive(compiled(word, al));
        CHECK(naive.dfa.n_states == 9);
        CHECK(label_set(naive) == expected);
        CHECK(reachable_count(naive.dfa) == 9);
    }
}

TEST_CASE("a run-counting seed needs span states plus the final one") {
    auto al = testutil::binary();
    SeedAutomaton a = build_naive(compiled("###", al));
    CHECK(a.dfa.n_states == 4);
    CHECK(label_set(a) == std::set<std::string>{"<{},0>", "<{},1>", "<{},2>", "<>"});
}

TEST_CASE("state count agrees with the window-NFA determinization") {
    auto bin = testutil::binary();
    Seed seed = parse_seed("#_#", bin.aa, bin.sa);
    SeedAutomaton a = build_naive(seed, bin.aa);
    CHECK(reachable_count(a.dfa) == testutil::nfa_determinized_count(seed, 2));

    // for hash-led seeds the prefix-set/run-length pairs are in bijection
    // with the reachable subset-construction states
    auto ter = testutil::ternary();
    testutil::Rng rng(11);
    for (int iter = 0; iter < 150; ++iter) {
        int span = 2 + rng.below(9);
        int weight = 1 + rng.below(span);
        std::string word = testutil::random_seed_word(ter.sa, rng, span, weight, false);
        word[0] = '#';
        Seed s = parse_seed(word, ter.aa, ter.sa);
        SeedAutomaton b = build_naive(s, ter.aa);
        CHECK(reachable_count(b.dfa) == testutil::nfa_determinized_count(s, 3));
    }
}

TEST_CASE("span-1 seeds collapse to two states") {
    auto al = testutil::binary();
    SeedAutomaton a = build_incremental(compiled("#", al));
    CHECK(a.dfa.n_states == 2);
    SeedAutomaton b = build_incremental(compiled("_", al));
    CHECK(b.dfa.n_states == 2); // every letter is accepted immediately
}

TEST_CASE("incremental construction equals the naive one exactly") {
    auto bin = testutil::binary();
    for (int span = 1; span <= 6; ++span)
        for (const std::string& word : testutil::all_seed_words(bin.sa, span)) {
            CompiledSeed cs = compiled(word.c_str(), bin);
            CHECK(build_incremental(cs) == build_naive(cs));
        }

    auto ter = testutil::ternary();
    testutil::Rng rng(5);
    for (int iter = 0; iter < 1000; ++iter) {
        int weight = 5 + rng.below(9); // w in [5..13]
        int span = weight + 1 + rng.below(6);
        std::string word = testutil::random_seed_word(ter.sa, rng, span, weight, rng.below(2) == 0);
        CompiledSeed cs = compiled(word.c_str(), ter);
        SeedAutomaton inc = build_incremental(cs);
        CHECK(inc == build_naive(cs));
        CHECK(static_cast<double>(reachable_count(inc.dfa)) <=
              (weight + 1) * std::pow(2.0, cs.r()));
    }
}

TEST_CASE("precomputed tables match their definitions") {
    auto al = testutil::ternary();
    CompiledSeed cs = compiled("#@_#", al);
    SeedTables t = precompute_tables(cs);
    int h = al.aa.index_of('h');
    int zero = al.aa.index_of('0');

    // run_prefixes(t,a): tracked positions z <= t+1 whose set contains a.
    // tracked = {2,3}, so bits 0 and 1 stand for positions 2 and 3.
    CHECK(t.run_prefixes(0, h) == 0b00);
    CHECK(t.run_prefixes(1, h) == 0b01);
    CHECK(t.run_prefixes(2, h) == 0b11);
    CHECK(t.run_prefixes(3, h) == 0b11); // position 4 is a hash
    CHECK(t.run_prefixes(2, zero) == 0b10);

    // extension of prefix 2 (k=1) across a run of 0 by 'h' lands on
    // position 3, tracked index 2; across a run of 1 it would need
    // position 4, a hash
    CHECK(t.extend_index(1, 0, h) == 2);
    CHECK(t.extend_index(1, 1, h) == 0);
    // from the empty set (k=0) the new prefix is position t+1
    CHECK(t.extend_index(0, 1, h) == 1);
    CHECK(t.extend_index(0, 0, h) == 0); // position 1 is a hash

    // cross-check against step() on a worked state: <{2},0> on 'h'
    auto q = step(cs, SeedState{0b01, 0}, h);
    REQUIRE(q.has_value());
    std::uint64_t expected_bits = 0;
    int j = t.extend_index(1, 0, h);
    if (j) expected_bits |= 1ull << (j - 1);
    CHECK(q->prefix_bits == expected_bits);
}

TEST_CASE("trace verification against brute-forced states") {
    auto al = testutil::ternary();
    CompiledSeed cs = compiled("#@#_##_###", al);
    SeedAutomaton a = build_incremental(cs);
    CHECK(verify_trace(cs, a, {})); // empty text stays in <{},0>

    testutil::Rng rng(31);
    for (int iter = 0; iter < 500; ++iter) {
        int span = 1 + rng.below(8);
        int weight = rng.below(span + 1);
        std::string word = testutil::random_seed_word(al.sa, rng, span, weight, false);
        CompiledSeed c2 = compiled(word.c_str(), al);
        SeedAutomaton b = build_incremental(c2);
        auto text = testutil::random_text(rng, 3, rng.below(25));
        CHECK(verify_trace(c2, b, text));
    }
}

TEST_CASE("multi-seed automaton degenerates to the single automaton for one seed") {
    auto al = testutil::ternary();
    Seed seed = parse_seed("#@_#", al.aa, al.sa);
    SeedAutomaton single = build_naive(seed, al.aa);
    SeedAutomaton multi = build_multi(std::vector<Seed>{seed}, al.aa);
    CHECK(multi.dfa == single.dfa);
    CHECK(multi.states == single.states);
}

TEST_CASE("multi-seed automaton accepts the union language") {
    auto al = testutil::binary();
    Seed s1 = parse_seed("#_#", al.aa, al.sa);
    Seed s2 = parse_seed("##", al.aa, al.sa);
    SeedAutomaton multi = build_multi(std::vector<Seed>{s1, s2}, al.aa);
    for (const auto& text : testutil::all_texts(2, 6)) {
        AlignmentText t;
        t.letters = text;
        bool expected = !naive_match_positions(s1, t).empty() || !naive_match_positions(s2, t).empty();
        CHECK(first_hit(multi.dfa, text).has_value() == expected);
    }
}

TEST_CASE("multi-seed argument validation") {
    auto bin = testutil::binary();
    auto ter = testutil::ternary();
    CHECK_THROWS_AS(build_multi(std::vector<CompiledSeed>{}), Error);
    std::vector<CompiledSeed> mixed{compiled("#_", bin), compiled("#@", ter)};
    CHECK_THROWS_AS(build_multi(mixed), Error);
}

TEST_CASE("first hit positions") {
    auto ter = testutil::ternary();
    Seed seed = parse_seed("#@_#", ter.aa, ter.sa);
    SeedAutomaton a = build_incremental(seed, ter.aa);
    AlignmentText text = parse_text("10h1h1101", ter.aa);
    auto end = first_hit(a.dfa, text.letters);
    REQUIRE(end.has_value());
    CHECK(*end == 7);
    CHECK(*end - seed.span + 1 == 4);

    auto bin = testutil::binary();
    Seed hash = parse_seed("#", bin.aa, bin.sa);
    SeedAutomaton b = build_incremental(hash, bin.aa);
    AlignmentText t2 = parse_text("0001", bin.aa);
    CHECK(first_hit(b.dfa, t2.letters) == std::optional<int>{4});

    testutil::Rng rng(77);
    for (int iter = 0; iter < 300; ++iter) {
        int span = 1 + rng.below(6);
        std::string word = testutil::random_seed_word(ter.sa, rng, span, rng.below(span + 1), false);
        Seed s = parse_seed(word, ter.aa, ter.sa);
        SeedAutomaton c = build_incremental(s, ter.aa);
        AlignmentText t;
        t.letters = testutil::random_text(rng, 3, rng.below(20));
        auto hits = naive_match_positions(s, t);
        auto got = first_hit(c.dfa, t.letters);
        CHECK(got.has_value() == !hits.empty());
        if (got) CHECK(*got - s.span + 1 == hits.front());
    }
}

TEST_CASE("size bounds hold across a random corpus") {
    auto ter = testutil::ternary();
    testutil::Rng rng(13);
    for (int iter = 0; iter < 400; ++iter) {
        int span = 1 + rng.below(12);
        int weight = rng.below(span + 1);
        std::string word = testutil::random_seed_word(ter.sa, rng, span, weight, false);
        Seed s = parse_seed(word, ter.aa, ter.sa);
        SeedAutomaton a = build_naive(s, ter.aa);
        double bound = (s.weight + 1) * std::pow(2.0, s.r());
        CHECK(static_cast<double>(reachable_count(a.dfa)) <= bound);
        if (word[0] == '#' && s.weight >= 1) {
            // hash-led seeds: summing the sharpened per-class bound
            // 2^(i-1)(s-i-1) gives w*2^r - s, so the non-final states number
            // at most w*2^r and the merged final state adds one
            CHECK(static_cast<double>(reachable_count(a.dfa) - 1) <=
                  s.weight * std::pow(2.0, s.r()));
        }
    }
}

TEST_CASE("per-transition work stays bounded as spans grow") {
    auto ter = testutil::ternary();
    testutil::Rng rng(17);
    for (int span = 5; span <= 30; ++span) {
        for (int rep = 0; rep < 3; ++rep) {
            int r = 1 + rng.below(std::min(8, span - 1));
            std::string word = testutil::random_seed_word(ter.sa, rng, span, span - r, true);
            BuildCost cost;
            build_incremental(compiled(word.c_str(), ter), &cost);
            REQUIRE(cost.transitions > 0);
            CHECK(cost.ops / cost.transitions <= 64);
        }
    }
}

TEST_CASE("builders reject malformed compiled seeds") {
    auto al = testutil::ternary();
    CompiledSeed cs = compiled("#@_#", al);
    CompiledSeed broken = cs;
    broken.pos_masks[0] = 0; // matches nothing
    CHECK_THROWS_AS(build_naive(broken), Error);
    broken = cs;
    broken.run_mask = 0b110; // run letters not matched by the hash positions
    CHECK_THROWS_AS(build_incremental(broken), Error);
    broken = cs;
    broken.track_index[2] = 0; // position 2 matches beyond the run letter but is untracked
    broken.tracked = {3};
    CHECK_THROWS_AS(build_naive(broken), Error);
}
