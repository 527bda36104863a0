#include "subsetseed/subset_matching.hpp"

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

void parse_named_sets(const std::string& value, const DegenerateAlphabet& alpha,
                      std::vector<char>& names, std::vector<std::uint32_t>& sets) {
    std::istringstream entries(value);
    std::string entry;
    while (std::getline(entries, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos) throw Error("degenerate spec: entry '" + entry + "' lacks '='");
        std::string name = trim(entry.substr(0, eq));
        std::string letters = trim(entry.substr(eq + 1));
        if (name.size() != 1) throw Error("degenerate spec: set name must be one character: '" + name + "'");
        for (char seen : names)
            if (seen == name[0]) throw Error(std::string("degenerate spec: duplicate set name '") + name[0] + "'");
        std::uint32_t mask = 0;
        for (char c : letters) {
            int bi = alpha.base_index(c);
            if (bi < 0) throw Error(std::string("degenerate spec: unknown base letter '") + c + "'");
            mask |= 1u << bi;
        }
        if (mask == 0) throw Error("degenerate spec: empty subset for '" + name + "'");
        names.push_back(name[0]);
        sets.push_back(mask);
    }
    if (names.empty()) throw Error("degenerate spec: no sets defined");
}

} // namespace

MatchSemantics parse_semantics(const std::string& name) {
    if (name == "exact") return MatchSemantics::Exact;
    if (name == "inclusion") return MatchSemantics::Inclusion;
    if (name == "intersection") return MatchSemantics::Intersection;
    throw Error("unknown matching semantics '" + name + "'");
}

std::string semantics_name(MatchSemantics sem) {
    switch (sem) {
        case MatchSemantics::Exact: return "exact";
        case MatchSemantics::Inclusion: return "inclusion";
        case MatchSemantics::Intersection: return "intersection";
    }
    return "?";
}

int DegenerateAlphabet::base_index(char c) const {
    for (std::size_t i = 0; i < base.size(); ++i)
        if (base[i] == c) return static_cast<int>(i);
    return -1;
}

int DegenerateAlphabet::text_index(char c) const {
    for (std::size_t i = 0; i < text_names.size(); ++i)
        if (text_names[i] == c) return static_cast<int>(i);
    return -1;
}

int DegenerateAlphabet::pattern_index(char c) const {
    for (std::size_t i = 0; i < pattern_names.size(); ++i)
        if (pattern_names[i] == c) return static_cast<int>(i);
    return -1;
}

namespace {

const std::pair<char, const char*> kIupac[] = {
    {'A', "A"},   {'C', "C"},   {'G', "G"},   {'T', "T"},   {'R', "AG"},
    {'Y', "CT"},  {'S', "CG"},  {'W', "AT"},  {'K', "GT"},  {'M', "AC"},
    {'B', "CGT"}, {'D', "AGT"}, {'H', "ACT"}, {'V', "ACG"}, {'N', "ACGT"},
};

void fill_iupac(const DegenerateAlphabet& alpha, std::vector<char>& names,
                std::vector<std::uint32_t>& sets) {
    if (alpha.base != std::vector<char>{'A', 'C', 'G', 'T'})
        throw Error("degenerate spec: iupac/all-nonempty sets need base 'A C G T'");
    for (auto& [name, letters] : kIupac) {
        std::uint32_t mask = 0;
        for (const char* p = letters; *p; ++p) mask |= 1u << alpha.base_index(*p);
        names.push_back(name);
        sets.push_back(mask);
    }
}

} // namespace

DegenerateAlphabet iupac_dna() {
    DegenerateAlphabet alpha;
    alpha.base = {'A', 'C', 'G', 'T'};
    fill_iupac(alpha, alpha.text_names, alpha.text_sets);
    fill_iupac(alpha, alpha.pattern_names, alpha.pattern_sets);
    return alpha;
}

DegenerateAlphabet parse_degenerate_spec(const std::string& text) {
    std::string base_v, text_v, pat_v;
    bool got_base = false, got_text = false, got_pat = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw Error("degenerate spec: expected 'key: value', got '" + line + "'");
        std::string key = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));
        if (key == "base") { base_v = value; got_base = true; }
        else if (key == "textsets") { text_v = value; got_text = true; }
        else if (key == "patsets") { pat_v = value; got_pat = true; }
        else throw Error("degenerate spec: unknown key '" + key + "'");
    }
    if (!got_base || !got_text || !got_pat)
        throw Error("degenerate spec: needs base:, textsets: and patsets: lines");

    DegenerateAlphabet alpha;
    for (char c : base_v) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (alpha.base_index(c) >= 0) throw Error(std::string("degenerate spec: duplicate base letter '") + c + "'");
        alpha.base.push_back(c);
    }
    if (alpha.base.empty()) throw Error("degenerate spec: empty base alphabet");
    if (alpha.base.size() > 8) throw Error("degenerate spec: more than 8 base letters");

    if (text_v == "base") {
        alpha.text_names = alpha.base;
        for (std::size_t i = 0; i < alpha.base.size(); ++i) alpha.text_sets.push_back(1u << i);
    } else if (text_v == "all-nonempty" || text_v == "iupac") {
        fill_iupac(alpha, alpha.text_names, alpha.text_sets);
    } else {
        parse_named_sets(text_v, alpha, alpha.text_names, alpha.text_sets);
    }
    if (pat_v == "iupac") fill_iupac(alpha, alpha.pattern_names, alpha.pattern_sets);
    else if (pat_v == "base") {
        alpha.pattern_names = alpha.base;
        for (std::size_t i = 0; i < alpha.base.size(); ++i) alpha.pattern_sets.push_back(1u << i);
    } else parse_named_sets(pat_v, alpha, alpha.pattern_names, alpha.pattern_sets);
    return alpha;
}

DegeneratePattern parse_degenerate_pattern(const std::string& s, const DegenerateAlphabet& alpha) {
    DegeneratePattern pat;
    pat.text_form = s;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '[') {
            std::size_t close = s.find(']', i);
            if (close == std::string::npos) throw Error("pattern: unclosed '['");
            std::uint32_t mask = 0;
            for (std::size_t j = i + 1; j < close; ++j) {
                int bi = alpha.base_index(s[j]);
                if (bi < 0) throw Error(std::string("pattern: unknown base letter '") + s[j] + "' in bracket group");
                mask |= 1u << bi;
            }
            if (mask == 0) throw Error("pattern: empty bracket group");
            pat.base_masks.push_back(mask);
            i = close + 1;
        } else {
            int pi = alpha.pattern_index(s[i]);
            if (pi < 0) throw Error(std::string("pattern: unknown pattern letter '") + s[i] + "'");
            pat.base_masks.push_back(alpha.pattern_sets[static_cast<std::size_t>(pi)]);
            ++i;
        }
    }
    if (pat.base_masks.empty()) throw Error("pattern: empty pattern");
    return pat;
}

bool subset_letter_matches(std::uint32_t text_set, std::uint32_t pattern_set, MatchSemantics sem) {
    switch (sem) {
        case MatchSemantics::Exact:
        case MatchSemantics::Intersection: return (text_set & pattern_set) != 0;
        case MatchSemantics::Inclusion: return (text_set & ~pattern_set) == 0;
    }
    return false;
}

GeneralizedSeed generalize_seed(const DegeneratePattern& pattern, const DegenerateAlphabet& alpha,
                                MatchSemantics sem) {
    GeneralizedSeed out;
    std::vector<std::uint32_t> text_sets;
    if (sem == MatchSemantics::Exact) {
        out.text_alphabet.letters = alpha.base;
        for (std::size_t i = 0; i < alpha.base.size(); ++i) text_sets.push_back(1u << i);
    } else {
        out.text_alphabet.letters = alpha.text_names;
        text_sets = alpha.text_sets;
    }
    const int L = static_cast<int>(text_sets.size());
    if (L > 32) throw Error("generalize_seed: more than 32 text letters");

    for (std::size_t pos = 0; pos < pattern.base_masks.size(); ++pos) {
        std::uint32_t m = 0;
        for (int a = 0; a < L; ++a)
            if (subset_letter_matches(text_sets[static_cast<std::size_t>(a)], pattern.base_masks[pos], sem))
                m |= 1u << a;
        if (m == 0)
            throw Error("generalize_seed: pattern position " + std::to_string(pos + 1) +
                        " matches no text letter");
        out.pos_masks.push_back(m);
    }

    std::uint32_t run = ~0u;
    for (std::uint32_t m : out.pos_masks) run &= m;
    // The trailing-run counter is defined around one distinguished match
    // letter. Only a singleton universal set plays that role; with none (or
    // several) the automaton degenerates to the plain determinized
    // suffix-set construction, which is what reproduces the published
    // motif state counts.
    if (std::popcount(run) != 1) run = 0;

    CompiledSeed cs;
    cs.n_letters = L;
    cs.run_mask = run;
    cs.pos_masks = out.pos_masks;
    cs.span = static_cast<int>(out.pos_masks.size());
    cs.track_index.assign(static_cast<std::size_t>(cs.span) + 1, 0);
    for (int pos = 1; pos <= cs.span; ++pos) {
        if (out.pos_masks[static_cast<std::size_t>(pos - 1)] != run) {
            cs.tracked.push_back(pos);
            cs.track_index[static_cast<std::size_t>(pos)] = static_cast<int>(cs.tracked.size());
        }
    }
    if (cs.r() > 64) throw Error("generalize_seed: more than 64 tracked positions");
    out.compiled = cs;
    out.text_alphabet.match_index = std::popcount(run) == 1 ? std::countr_zero(run) : -1;
    return out;
}

std::vector<int> naive_degenerate_match(const std::vector<std::uint32_t>& pattern_base_masks,
                                        const std::vector<std::uint32_t>& text_base_masks,
                                        MatchSemantics sem) {
    std::vector<int> hits;
    int m = static_cast<int>(pattern_base_masks.size());
    int n = static_cast<int>(text_base_masks.size());
    for (int p = 1; p + m - 1 <= n; ++p) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            ok = subset_letter_matches(text_base_masks[static_cast<std::size_t>(p - 1 + i)],
                                       pattern_base_masks[static_cast<std::size_t>(i)], sem);
        if (ok) hits.push_back(p);
    }
    return hits;
}

DegenerateText parse_degenerate_text(const std::string& s, const DegenerateAlphabet& alpha,
                                     MatchSemantics sem) {
    DegenerateText t;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (sem == MatchSemantics::Exact) {
            int bi = alpha.base_index(s[i]);
            if (bi < 0)
                throw Error(std::string("unknown text letter '") + s[i] + "' at position " +
                            std::to_string(i + 1));
            t.letters.push_back(static_cast<std::uint8_t>(bi));
            t.base_masks.push_back(1u << bi);
        } else {
            int ti = alpha.text_index(s[i]);
            if (ti < 0)
                throw Error(std::string("unknown text letter '") + s[i] + "' at position " +
                            std::to_string(i + 1));
            t.letters.push_back(static_cast<std::uint8_t>(ti));
            t.base_masks.push_back(alpha.text_sets[static_cast<std::size_t>(ti)]);
        }
    }
    return t;
}

} // namespace subsetseed
