#ifndef SUBSETSEED_DFA_HPP
#define SUBSETSEED_DFA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsetseed/error.hpp"

namespace subsetseed {

/// Complete deterministic automaton over letter indices 0..n_letters-1,
/// with a dense state-major transition table and optional state labels.
struct Dfa {
    int n_states = 0;
    int n_letters = 0;
    int initial = 0;
    std::vector<std::uint8_t> final_flags; // size n_states
    std::vector<std::int32_t> next;        // size n_states * n_letters
    std::vector<std::string> labels;       // empty, or size n_states

    int step(int state, int letter) const {
        return next[static_cast<std::size_t>(state) * static_cast<std::size_t>(n_letters) +
                    static_cast<std::size_t>(letter)];
    }
    bool is_final(int state) const { return final_flags[static_cast<std::size_t>(state)] != 0; }

    bool operator==(const Dfa& o) const = default;
};

/// Number of states reachable from the initial state.
int reachable_count(const Dfa& d);

/// Restriction to reachable states, renumbered in BFS order from the initial
/// state (letters in index order). Labels follow their states.
Dfa prune_unreachable(const Dfa& d);

/// Canonical minimal complete DFA for the same language (Hopcroft partition
/// refinement on the reachable part, then BFS renumbering). Labels dropped.
Dfa minimize(const Dfa& d);

/// Language equality via union-find product traversal.
bool equivalent(const Dfa& a, const Dfa& b);

/// GraphViz DOT rendering. letter_names, when non-empty, must have
/// n_letters entries and is used for edge labels; otherwise letter indices
/// are printed. Parallel edges are collapsed into one comma-separated label.
std::string export_dot(const Dfa& d, const std::vector<std::string>& letter_names = {});

/// Line-oriented text form:
///   dfa <n_states> <n_letters> <initial>
///   finals: <ids...>
///   <n_states rows of n_letters target ids>
///   label <id> <text>     (optional, one per labeled state)
std::string serialize_dfa(const Dfa& d);
Dfa parse_dfa(const std::string& text);

} // namespace subsetseed

#endif
