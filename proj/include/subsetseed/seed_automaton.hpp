#ifndef SUBSETSEED_SEED_AUTOMATON_HPP
#define SUBSETSEED_SEED_AUTOMATON_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsetseed/alphabet.hpp"
#include "subsetseed/dfa.hpp"

namespace subsetseed {

/// Matching problem the automaton builders operate on. A classic seed
/// compiles to run_mask = {match letter} and tracked = its non-hash
/// positions; generalized patterns (degenerate texts, no universal match
/// letter) compile to run_mask = set of text letters accepted by every
/// position, tracked = positions accepting anything beyond that set.
///
/// Builder precondition: run_mask is a subset of every position's match
/// set, and every position whose match set exceeds run_mask is tracked.
struct CompiledSeed {
    int n_letters = 0;
    std::uint32_t run_mask = 0;
    std::vector<std::uint32_t> pos_masks; // per position 1..span
    std::vector<int> tracked;             // ascending 1-based positions watched in prefix sets
    std::vector<int> track_index;         // position -> 1-based index into tracked, 0 if none
    int span = 0;

    int r() const { return static_cast<int>(tracked.size()); }
    bool is_run_letter(int a) const { return (run_mask >> a) & 1u; }
    bool pos_matches(int pos, int a) const {
        return (pos_masks[static_cast<std::size_t>(pos - 1)] >> a) & 1u;
    }
};

CompiledSeed compile_seed(const Seed& seed, const AlignmentAlphabet& aa);

/// Non-final automaton state: which tracked seed prefixes currently match a
/// suffix of the text read so far (bit i-1 = tracked index i), plus the
/// length of the trailing run of run-letters.
struct SeedState {
    std::uint64_t prefix_bits = 0;
    int run_len = 0;

    bool operator==(const SeedState&) const = default;
};

/// Index of the largest tracked prefix in the set (1..r), 0 for the empty set.
int top_index(std::uint64_t prefix_bits);

/// Largest tracked position in the set, 0 for the empty set.
int top_position(const CompiledSeed& cs, std::uint64_t prefix_bits);

std::string state_label(const CompiledSeed& cs, const SeedState& q);

/// Transition function on labeled states. Returns nullopt when the move
/// completes a full seed occurrence (the merged absorbing final state).
std::optional<SeedState> step(const CompiledSeed& cs, const SeedState& q, int letter);

/// Precomputed transition helpers for the incremental builder.
///  run_prefix_sets[t*n_letters+a]: tracked-index set of prefixes matching a
///      run of length t followed by letter a (letters in run_mask unused).
///  extend[(k*span+t)*n_letters+a]: the tracked index of position
///      tracked[k-1]+t+1 if that position exists, is tracked and matches a,
///      else 0. k = 0 stands for the empty prefix set (base position 0).
struct SeedTables {
    int n_letters = 0;
    int span = 0;
    std::vector<std::uint64_t> run_prefix_sets; // span * n_letters
    std::vector<std::int16_t> extend;           // (r+1) * span * n_letters

    std::uint64_t run_prefixes(int t, int a) const {
        return run_prefix_sets[static_cast<std::size_t>(t) * static_cast<std::size_t>(n_letters) +
                               static_cast<std::size_t>(a)];
    }
    int extend_index(int k, int t, int a) const {
        return extend[(static_cast<std::size_t>(k) * static_cast<std::size_t>(span) +
                       static_cast<std::size_t>(t)) *
                          static_cast<std::size_t>(n_letters) +
                      static_cast<std::size_t>(a)];
    }
};

SeedTables precompute_tables(const CompiledSeed& cs);

/// Seed automaton with its per-state labels. State 0 is the merged absorbing
/// final state, state 1 the initial state; the rest follow in breadth-first
/// creation order (letters in index order), identical for both builders.
struct SeedAutomaton {
    Dfa dfa;
    std::vector<SeedState> states; // entry 0 (final) is unused
    int final_state = 0;

    bool operator==(const SeedAutomaton&) const = default;
};

/// Straightforward BFS construction: applies step() and deduplicates states
/// through a hash table.
SeedAutomaton build_naive(const CompiledSeed& cs);

/// Incremental construction with fail links and constant-time transitions;
/// no state hashing. op_count, when given, receives the number of counted
/// elementary steps and the number of transitions computed.
struct BuildCost {
    std::uint64_t ops = 0;
    std::uint64_t transitions = 0;
};
SeedAutomaton build_incremental(const CompiledSeed& cs, BuildCost* cost = nullptr);

SeedAutomaton build_naive(const Seed& seed, const AlignmentAlphabet& aa);
SeedAutomaton build_incremental(const Seed& seed, const AlignmentAlphabet& aa, BuildCost* cost = nullptr);

/// Runs the automaton over every prefix of the text and cross-checks each
/// state label against a brute-force recomputation from the prefix. Stops at
/// the final state (after checking that a genuine match has been read).
bool verify_trace(const CompiledSeed& cs, const SeedAutomaton& sa,
                  const std::vector<std::uint8_t>& text);

/// Automaton for "some seed in the list matches": tuple of prefix sets with a
/// shared run counter, built by BFS with hashing. Labels use the same
/// notation with one set per seed.
SeedAutomaton build_multi(const std::vector<CompiledSeed>& seeds);
SeedAutomaton build_multi(const std::vector<Seed>& seeds, const AlignmentAlphabet& aa);

/// Smallest 1-based end position p such that the automaton accepts after
/// reading text[0..p), or nullopt.
std::optional<int> first_hit(const Dfa& d, const std::vector<std::uint8_t>& text);

} // namespace subsetseed

#endif
