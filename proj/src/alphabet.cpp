#include "subsetseed/alphabet.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace subsetseed {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits "key: value" lines, ignoring blank lines.
std::vector<std::pair<std::string, std::string>> key_value_lines(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw Error("alphabet spec: expected 'key: value', got '" + line + "'");
        out.emplace_back(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
    }
    return out;
}

} // namespace

int AlignmentAlphabet::index_of(char c) const {
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i] == c) return static_cast<int>(i);
    return -1;
}

int SeedAlphabet::index_of(char c) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == c) return static_cast<int>(i);
    return -1;
}

std::uint32_t SeedAlphabet::mask_of(char c) const {
    int i = index_of(c);
    if (i < 0) throw Error(std::string("unknown seed symbol '") + c + "'");
    return masks[static_cast<std::size_t>(i)];
}

std::pair<AlignmentAlphabet, SeedAlphabet> parse_alphabet_spec(const std::string& text) {
    std::string align_v, match_v, seed_v, hash_v;
    bool got_align = false, got_match = false, got_seed = false, got_hash = false;
    for (auto& [key, value] : key_value_lines(text)) {
        if (key == "align") { align_v = value; got_align = true; }
        else if (key == "match") { match_v = value; got_match = true; }
        else if (key == "seed") { seed_v = value; got_seed = true; }
        else if (key == "hash") { hash_v = value; got_hash = true; }
        else throw Error("alphabet spec: unknown key '" + key + "'");
    }
    if (!got_align || !got_match || !got_seed || !got_hash)
        throw Error("alphabet spec: needs align:, match:, seed: and hash: lines");

    AlignmentAlphabet aa;
    for (char c : align_v) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (aa.index_of(c) >= 0) throw Error(std::string("duplicate alignment letter '") + c + "'");
        aa.letters.push_back(c);
    }
    if (aa.letters.empty()) throw Error("alphabet spec: empty alignment alphabet");
    if (aa.letters.size() > 32) throw Error("alphabet spec: more than 32 alignment letters");

    if (match_v.size() != 1) throw Error("alphabet spec: match: expects exactly one letter");
    aa.match_index = aa.index_of(match_v[0]);
    if (aa.match_index < 0) throw Error("alphabet spec: match letter not in alignment alphabet");

    SeedAlphabet sa;
    std::string entry;
    std::istringstream entries(seed_v);
    while (std::getline(entries, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos) throw Error("alphabet spec: seed entry '" + entry + "' lacks '='");
        std::string sym = trim(entry.substr(0, eq));
        std::string set = trim(entry.substr(eq + 1));
        if (sym.size() != 1) throw Error("alphabet spec: seed symbol must be one character: '" + sym + "'");
        if (sa.index_of(sym[0]) >= 0) throw Error("duplicate seed symbol '" + sym + "'");
        std::uint32_t mask = 0;
        for (char c : set) {
            int li = aa.index_of(c);
            if (li < 0) throw Error(std::string("seed subset references unknown alignment letter '") + c + "'");
            mask |= 1u << li;
        }
        if (!(mask & (1u << aa.match_index)))
            throw Error(std::string("seed letter '") + sym[0] + "' does not contain the match letter");
        sa.symbols.push_back(sym[0]);
        sa.masks.push_back(mask);
    }
    if (sa.symbols.empty()) throw Error("alphabet spec: no seed letters");

    if (hash_v.size() != 1) throw Error("alphabet spec: hash: expects exactly one symbol");
    sa.hash_symbol = hash_v[0];
    int hi = sa.index_of(sa.hash_symbol);
    if (hi < 0) throw Error("alphabet spec: hash symbol is not a seed letter");
    if (sa.masks[static_cast<std::size_t>(hi)] != (1u << aa.match_index))
        throw Error("alphabet spec: hash symbol's subset must equal {match letter}");

    return {aa, sa};
}

std::string serialize_alphabet_spec(const AlignmentAlphabet& aa, const SeedAlphabet& sa) {
    std::ostringstream out;
    out << "align:";
    for (char c : aa.letters) out << ' ' << c;
    out << "\nmatch: " << aa.match_letter() << "\nseed: ";
    for (std::size_t i = 0; i < sa.symbols.size(); ++i) {
        if (i) out << "; ";
        out << sa.symbols[i] << '=';
        for (std::size_t li = 0; li < aa.letters.size(); ++li)
            if (sa.masks[i] & (1u << li)) out << aa.letters[li];
    }
    out << "\nhash: " << sa.hash_symbol << '\n';
    return out.str();
}

Seed parse_seed(const std::string& word, const AlignmentAlphabet& aa, const SeedAlphabet& sa) {
    (void)aa;
    if (word.empty()) throw Error("empty seed");
    Seed s;
    s.symbols = word;
    s.span = static_cast<int>(word.size());
    for (int i = 0; i < s.span; ++i) {
        char c = word[static_cast<std::size_t>(i)];
        s.pos_masks.push_back(sa.mask_of(c));
        if (c == sa.hash_symbol) ++s.weight;
        else s.r_positions.push_back(i + 1);
    }
    return s;
}

AlignmentText parse_text(const std::string& s, const AlignmentAlphabet& aa) {
    AlignmentText t;
    t.letters.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        int li = aa.index_of(s[i]);
        if (li < 0)
            throw Error(std::string("unknown text letter '") + s[i] + "' at position " +
                        std::to_string(i + 1));
        t.letters.push_back(static_cast<std::uint8_t>(li));
    }
    return t;
}

bool seed_letter_matches(const SeedAlphabet& sa, const AlignmentAlphabet& aa, char seed_symbol,
                         char alignment_letter) {
    int li = aa.index_of(alignment_letter);
    if (li < 0) throw Error(std::string("unknown alignment letter '") + alignment_letter + "'");
    return (sa.mask_of(seed_symbol) >> li) & 1u;
}

std::vector<int> naive_match_positions(const Seed& seed, const AlignmentText& text) {
    std::vector<int> hits;
    int n = static_cast<int>(text.size());
    for (int p = 1; p + seed.span - 1 <= n; ++p) {
        bool ok = true;
        for (int i = 0; i < seed.span && ok; ++i)
            ok = (seed.pos_masks[static_cast<std::size_t>(i)] >>
                  text.letters[static_cast<std::size_t>(p - 1 + i)]) & 1u;
        if (ok) hits.push_back(p);
    }
    return hits;
}

} // namespace subsetseed
