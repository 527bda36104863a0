#ifndef SUBSETSEED_TEST_UTIL_HPP
#define SUBSETSEED_TEST_UTIL_HPP

// Shared helpers and independent oracles for the test suites. Everything in
// here recomputes results from definitions and stays off the library's code
// paths it is used to check.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "subsetseed/alphabet.hpp"
#include "subsetseed/dfa.hpp"

namespace testutil {

inline const char* kTernarySpec = "align: 1 h 0\nmatch: 1\nseed: #=1; @=1h; _=1h0\nhash: #\n";
inline const char* kBinarySpec = "align: 1 0\nmatch: 1\nseed: #=1; _=10\nhash: #\n";

struct Alphabets {
    subsetseed::AlignmentAlphabet aa;
    subsetseed::SeedAlphabet sa;
};

inline Alphabets ternary() {
    auto [aa, sa] = subsetseed::parse_alphabet_spec(kTernarySpec);
    return {aa, sa};
}

inline Alphabets binary() {
    auto [aa, sa] = subsetseed::parse_alphabet_spec(kBinarySpec);
    return {aa, sa};
}

/// Subset construction over the sliding-window occurrence NFA of a seed:
/// NFA state i = "the first i seed positions match the last i letters",
/// state 0 loops on everything, acceptance once state `span` is reached.
/// Accepting subsets are merged into one absorbing state, mirroring the
/// first-occurrence language. Returns the reachable state count including
/// that merged state.
inline int nfa_determinized_count(const subsetseed::Seed& seed, int n_letters) {
    const int s = seed.span;
    std::map<std::uint64_t, int> ids;
    std::vector<std::uint64_t> todo{1ull}; // {0}
    ids[1ull] = 0;
    bool final_reached = false;
    for (std::size_t head = 0; head < todo.size(); ++head) {
        std::uint64_t cur = todo[head];
        for (int a = 0; a < n_letters; ++a) {
            std::uint64_t nxt = 1ull;
            for (int i = 0; i < s; ++i)
                if ((cur >> i) & 1ull)
                    if ((seed.pos_masks[static_cast<std::size_t>(i)] >> a) & 1u) nxt |= 1ull << (i + 1);
            if ((nxt >> s) & 1ull) {
                final_reached = true;
                continue;
            }
            if (!ids.count(nxt)) {
                ids[nxt] = static_cast<int>(ids.size());
                todo.push_back(nxt);
            }
        }
    }
    return static_cast<int>(ids.size()) + (final_reached ? 1 : 0);
}

/// Aho-Corasick size by definition: prefix-matched words of length < span
/// are counted position-by-position (independent choices), plus the sink.
inline long long ac_count_by_enumeration(const subsetseed::Seed& seed) {
    long long total = 1; // empty word
    long long level = 1;
    for (int p = 1; p <= seed.span - 1; ++p) {
        level *= __builtin_popcount(seed.pos_masks[static_cast<std::size_t>(p - 1)]);
        total += level;
    }
    return total + 1; // sink
}

/// Moore-style partition refinement, quadratic and written from the
/// definition; used as the minimization oracle.
inline int moore_minimized_count(const subsetseed::Dfa& d) {
    // reachable restriction
    std::vector<int> order{d.initial};
    std::vector<int> seen(static_cast<std::size_t>(d.n_states), 0);
    seen[static_cast<std::size_t>(d.initial)] = 1;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (int c = 0; c < d.n_letters; ++c) {
            int t = d.step(order[h], c);
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                order.push_back(t);
            }
        }

    std::vector<int> cls(static_cast<std::size_t>(d.n_states), -1);
    for (int s : order) cls[static_cast<std::size_t>(s)] = d.is_final(s) ? 1 : 0;
    for (;;) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> next_cls(static_cast<std::size_t>(d.n_states), -1);
        for (int s : order) {
            std::vector<int> sig{cls[static_cast<std::size_t>(s)]};
            for (int c = 0; c < d.n_letters; ++c) sig.push_back(cls[static_cast<std::size_t>(d.step(s, c))]);
            auto [it, inserted] = sig_ids.try_emplace(sig, static_cast<int>(sig_ids.size()));
            (void)inserted;
            next_cls[static_cast<std::size_t>(s)] = it->second;
        }
        bool stable = true;
        for (int s : order) stable = stable && next_cls[static_cast<std::size_t>(s)] == cls[static_cast<std::size_t>(s)];
        int classes = static_cast<int>(sig_ids.size());
        cls = std::move(next_cls);
        if (stable) return classes;
    }
}

/// Brute-force acceptance: does the automaton accept the text?
inline bool dfa_accepts(const subsetseed::Dfa& d, const std::vector<std::uint8_t>& text) {
    int s = d.initial;
    if (d.is_final(s)) return true;
    for (std::uint8_t a : text) {
        s = d.step(s, a);
        if (d.is_final(s)) return true; // absorbing-final language: first hit decides
    }
    return d.is_final(s);
}

/// All texts over [0, n_letters) with length in [0, max_len], shortest first.
inline std::vector<std::vector<std::uint8_t>> all_texts(int n_letters, int max_len) {
    std::vector<std::vector<std::uint8_t>> out{{}};
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (int a = 0; a < n_letters; ++a) {
                auto t = out[i];
                t.push_back(static_cast<std::uint8_t>(a));
                out.push_back(std::move(t));
            }
        level_begin = level_end;
    }
    return out;
}

/// All seed words of the given span over the seed alphabet symbols.
inline std::vector<std::string> all_seed_words(const subsetseed::SeedAlphabet& sa, int span) {
    std::vector<std::string> out{""};
    for (int p = 0; p < span; ++p) {
        std::vector<std::string> next;
        for (const std::string& w : out)
            for (char c : sa.symbols) next.push_back(w + c);
        out = std::move(next);
    }
    return out;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
};

inline std::string random_seed_word(const subsetseed::SeedAlphabet& sa, Rng& rng, int span,
                                    int weight, bool force_hash_ends) {
    std::vector<char> non_hash;
    for (char c : sa.symbols)
        if (c != sa.hash_symbol) non_hash.push_back(c);
    std::string word(static_cast<std::size_t>(span), '?');
    std::vector<int> slots;
    int need = weight;
    if (force_hash_ends && weight >= 2 && span >= 2) {
        word[0] = sa.hash_symbol;
        word[static_cast<std::size_t>(span - 1)] = sa.hash_symbol;
        need -= 2;
        for (int i = 1; i < span - 1; ++i) slots.push_back(i);
    } else {
        for (int i = 0; i < span; ++i) slots.push_back(i);
    }
    for (int i = 0; i < need; ++i) {
        int j = i + rng.below(static_cast<int>(slots.size()) - i);
        std::swap(slots[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(j)]);
        word[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] = sa.hash_symbol;
    }
    for (char& c : word)
        if (c == '?') c = non_hash[static_cast<std::size_t>(rng.below(static_cast<int>(non_hash.size())))];
    return word;
}

inline std::vector<std::uint8_t> random_text(Rng& rng, int n_letters, int len) {
    std::vector<std::uint8_t> t(static_cast<std::size_t>(len));
    for (auto& c : t) c = static_cast<std::uint8_t>(rng.below(n_letters));
    return t;
}

inline subsetseed::Dfa random_dfa(Rng& rng, int n_states, int n_letters) {
    subsetseed::Dfa d;
    d.n_states = n_states;
    d.n_letters = n_letters;
    d.initial = 0;
    d.final_flags.resize(static_cast<std::size_t>(n_states));
    d.next.resize(static_cast<std::size_t>(n_states) * static_cast<std::size_t>(n_letters));
    for (int s = 0; s < n_states; ++s) {
        d.final_flags[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(rng.below(3) == 0);
        for (int c = 0; c < n_letters; ++c)
            d.next[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_letters) +
                   static_cast<std::size_t>(c)] = rng.below(n_states);
    }
    return d;
}

/// Light structural check of the DOT output this project emits.
inline bool plausible_dot(const std::string& dot) {
    if (dot.rfind("digraph", 0) != 0) return false;
    long depth = 0;
    for (char c : dot) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (depth < 0) return false;
    }
    if (depth != 0) return false;
    return dot.find("->") != std::string::npos;
}

inline int count_occurrences(const std::string& haystack, const std::string& needle) {
    int n = 0;
    std::size_t at = 0;
    while ((at = haystack.find(needle, at)) != std::string::npos) {
        ++n;
        at += needle.size();
    }
    return n;
}

} // namespace testutil

#endif
