#ifndef SUBSETSEED_SUBSET_MATCHING_HPP
#define SUBSETSEED_SUBSET_MATCHING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsetseed/alphabet.hpp"
#include "subsetseed/seed_automaton.hpp"

namespace subsetseed {

/// How a pattern subset b matches a text subset a.
enum class MatchSemantics {
    Exact,        // text letters are base letters; b matches a iff a is in b
    Inclusion,    // a is a subset of b
    Intersection, // a and b share a letter
};

MatchSemantics parse_semantics(const std::string& name);
std::string semantics_name(MatchSemantics sem);

/// Base alphabet plus named subsets usable in texts and patterns.
struct DegenerateAlphabet {
    std::vector<char> base;
    std::vector<char> text_names;
    std::vector<std::uint32_t> text_sets; // over base letters
    std::vector<char> pattern_names;
    std::vector<std::uint32_t> pattern_sets;

    int base_index(char c) const;
    int text_index(char c) const;
    int pattern_index(char c) const;
};

/// Built-in IUPAC nucleotide codes for base A C G T (15 nonempty subsets).
DegenerateAlphabet iupac_dna();

/// Parses the degenerate alphabet spec:
///   base: A C G T
///   textsets: base | all-nonempty | iupac | name=letters; ...
///   patsets: iupac | name=letters; ...
DegenerateAlphabet parse_degenerate_spec(const std::string& text);

/// A pattern over named subsets and ad-hoc bracket groups, e.g. "AN[GT]G".
struct DegeneratePattern {
    std::string text_form;
    std::vector<std::uint32_t> base_masks; // per position, over base letters
};

DegeneratePattern parse_degenerate_pattern(const std::string& s, const DegenerateAlphabet& alpha);

/// The generalized matching problem reduced to the core automaton
/// construction: text letters become the alignment alphabet, each pattern
/// position a match set over them. When exactly one text letter is accepted
/// by every position it takes over the match-letter role; otherwise the run
/// counter is disabled and every position is tracked.
struct GeneralizedSeed {
    AlignmentAlphabet text_alphabet; // match_index -1 unless the run set is a singleton
    std::vector<std::uint32_t> pos_masks;
    CompiledSeed compiled;
};

GeneralizedSeed generalize_seed(const DegeneratePattern& pattern, const DegenerateAlphabet& alpha,
                                MatchSemantics sem);

bool subset_letter_matches(std::uint32_t text_set, std::uint32_t pattern_set, MatchSemantics sem);

/// Brute-force sliding-window oracle over raw base-letter subsets.
std::vector<int> naive_degenerate_match(const std::vector<std::uint32_t>& pattern_base_masks,
                                        const std::vector<std::uint32_t>& text_base_masks,
                                        MatchSemantics sem);

/// Text parsing against the effective text alphabet of a generalized seed;
/// also exposes the base masks for oracle use.
struct DegenerateText {
    std::vector<std::uint8_t> letters;       // indices into the effective text alphabet
    std::vector<std::uint32_t> base_masks;   // same sequence as base-letter subsets
};

DegenerateText parse_degenerate_text(const std::string& s, const DegenerateAlphabet& alpha,
                                     MatchSemantics sem);

} // namespace subsetseed

#endif
