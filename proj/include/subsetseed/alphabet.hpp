#ifndef SUBSETSEED_ALPHABET_HPP
#define SUBSETSEED_ALPHABET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsetseed/error.hpp"

namespace subsetseed {

/// Alphabet the scanned texts are written in. One letter plays the role of
/// the universal "match" letter that every seed letter accepts; generalized
/// pattern problems without such a letter set match_index to -1.
struct AlignmentAlphabet {
    std::vector<char> letters;
    int match_index = -1;

    std::size_t size() const { return letters.size(); }
    int index_of(char c) const;
    bool has_match_letter() const { return match_index >= 0; }
    char match_letter() const { return letters[static_cast<std::size_t>(match_index)]; }
};

/// Seed letters, each denoting a subset of the alignment alphabet (stored as
/// a bit set over letter indices). Every subset contains the match letter;
/// the hash symbol denotes exactly {match letter}.
struct SeedAlphabet {
    std::vector<char> symbols;
    std::vector<std::uint32_t> masks;
    char hash_symbol = '#';

    int index_of(char c) const;
    std::uint32_t mask_of(char c) const; // throws on unknown symbol
};

/// A seed word together with its per-position match sets.
struct Seed {
    std::string symbols;                  // the seed as typed, one symbol per position
    std::vector<std::uint32_t> pos_masks; // match set of position i+1 (over alignment letters)
    int span = 0;
    int weight = 0;                 // number of hash_symbol positions
    std::vector<int> r_positions;   // ascending 1-based non-hash positions

    int r() const { return span - weight; }
};

struct AlignmentText {
    std::vector<std::uint8_t> letters; // indices into the alignment alphabet

    std::size_t size() const { return letters.size(); }
};

/// Parses the line-oriented alphabet spec:
///   align: 1 h 0
///   match: 1
///   seed: #=1; @=1h; _=1h0
///   hash: #
std::pair<AlignmentAlphabet, SeedAlphabet> parse_alphabet_spec(const std::string& text);

/// Inverse of parse_alphabet_spec, up to whitespace.
std::string serialize_alphabet_spec(const AlignmentAlphabet& aa, const SeedAlphabet& sa);

Seed parse_seed(const std::string& word, const AlignmentAlphabet& aa, const SeedAlphabet& sa);

AlignmentText parse_text(const std::string& s, const AlignmentAlphabet& aa);

bool seed_letter_matches(const SeedAlphabet& sa, const AlignmentAlphabet& aa, char seed_symbol,
                         char alignment_letter);

/// Brute-force matching oracle: all 1-based start positions where the seed
/// matches the text. O(span * |text|).
std::vector<int> naive_match_positions(const Seed& seed, const AlignmentText& text);

} // namespace subsetseed

#endif
