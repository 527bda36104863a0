#ifndef SUBSETSEED_AC_HPP
#define SUBSETSEED_AC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsetseed/alphabet.hpp"
#include "subsetseed/dfa.hpp"
#include "subsetseed/seed_automaton.hpp"

namespace subsetseed {

/// Aho-Corasick automaton over the instance set of one or more seeds:
/// trie of all words matched by seed prefixes, longest-suffix transitions,
/// all full occurrences merged into one absorbing sink. State 0 is the sink,
/// state 1 the root; words holds each state's trie word.
struct AcAutomaton {
    Dfa dfa;
    std::vector<std::vector<std::uint8_t>> words;

    bool operator==(const AcAutomaton&) const = default;
};

AcAutomaton build_ac(const Seed& seed, const AlignmentAlphabet& aa);
AcAutomaton build_ac_multi(const std::vector<Seed>& seeds, const AlignmentAlphabet& aa);

/// State projection from the Aho-Corasick automaton onto the seed automaton:
/// maps each trie word to the (prefix set, run length) state it induces and
/// verifies the map is a surjective morphism that preserves initial and
/// final states. diagnostic is empty iff ok.
struct ProjectionReport {
    bool ok = false;
    std::string diagnostic;
    std::vector<int> map; // AC state id -> seed automaton state id
};

ProjectionReport check_ac_projection(const AcAutomaton& ac, const SeedAutomaton& sa,
                                     const CompiledSeed& cs);

} // namespace subsetseed

#endif
