#include "subsetseed/ac.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace subsetseed {

namespace {

struct TrieNode {
    int parent = -1;
    int fail = 0;
    int depth = 0;
    std::uint8_t letter = 0;
    std::uint64_t viable = 0; // seeds whose depth-long prefix matches this word
    bool out = false;         // some full seed instance ends here
    std::vector<std::int32_t> step; // complete transitions, empty for out nodes
};

AcAutomaton build(const std::vector<Seed>& seeds, const AlignmentAlphabet& aa) {
    if (seeds.empty()) throw Error("aho-corasick: empty seed list");
    if (seeds.size() > 64) throw Error("aho-corasick: more than 64 seeds");
    const int L = static_cast<int>(aa.size());
    const int k = static_cast<int>(seeds.size());
    for (const Seed& s : seeds)
        if (s.span < 1) throw Error("aho-corasick: empty seed");

    std::vector<TrieNode> nodes(1);
    nodes[0].viable = k == 64 ? ~0ull : (1ull << k) - 1ull;
    nodes[0].step.assign(static_cast<std::size_t>(L), 0);

    // Trie and failure links, breadth-first. Node ids are creation order, so
    // the id sequence doubles as the queue. Out nodes merge into the sink and
    // are never expanded.
    for (int u = 0; u < static_cast<int>(nodes.size()); ++u) {
        if (nodes[u].out) continue;
        const int depth = nodes[u].depth;
        for (int a = 0; a < L; ++a) {
            std::uint64_t viable = 0;
            for (std::uint64_t m = nodes[u].viable; m; m &= m - 1) {
                int i = std::countr_zero(m);
                const Seed& s = seeds[static_cast<std::size_t>(i)];
                if (depth + 1 <= s.span &&
                    ((s.pos_masks[static_cast<std::size_t>(depth)] >> a) & 1u))
                    viable |= 1ull << i;
            }
            if (viable == 0) {
                nodes[u].step[static_cast<std::size_t>(a)] =
                    u == 0 ? 0 : nodes[nodes[u].fail].step[static_cast<std::size_t>(a)];
                continue;
            }
            int v = static_cast<int>(nodes.size());
            nodes.push_back(TrieNode{});
            TrieNode& nv = nodes.back();
            nv.parent = u;
            nv.letter = static_cast<std::uint8_t>(a);
            nv.depth = depth + 1;
            nv.viable = viable;
            nv.fail = u == 0 ? 0 : nodes[nodes[u].fail].step[static_cast<std::size_t>(a)];
            bool instance = false;
            for (std::uint64_t m = viable; m && !instance; m &= m - 1)
                instance = seeds[static_cast<std::size_t>(std::countr_zero(m))].span == nv.depth;
            nv.out = instance || nodes[nv.fail].out;
            if (!nv.out) nv.step.assign(static_cast<std::size_t>(L), 0);
            nodes[u].step[static_cast<std::size_t>(a)] = v;
        }
    }

    // Keep only nodes reachable once out nodes are merged into the sink.
    // Every seed matches some word, so the sink is always reachable.
    // Ids: 0 = sink, 1 = root, then first-visit order.
    std::vector<int> id(nodes.size(), -1);
    std::vector<int> order{0}; // trie node 0 (root) maps to dfa id 1
    id[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        for (int a = 0; a < L; ++a) {
            int v = nodes[static_cast<std::size_t>(u)].step[static_cast<std::size_t>(a)];
            if (nodes[static_cast<std::size_t>(v)].out) continue;
            if (id[static_cast<std::size_t>(v)] == -1) {
                id[static_cast<std::size_t>(v)] = static_cast<int>(order.size()) + 1;
                order.push_back(v);
            }
        }
    }

    AcAutomaton out;
    const int n = static_cast<int>(order.size()) + 1;
    out.dfa.n_states = n;
    out.dfa.n_letters = L;
    out.dfa.initial = 1;
    out.dfa.final_flags.assign(static_cast<std::size_t>(n), 0);
    out.dfa.final_flags[0] = 1;
    out.dfa.next.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(L), 0);
    out.dfa.labels.assign(static_cast<std::size_t>(n), "");
    out.words.assign(static_cast<std::size_t>(n), {});
    out.dfa.labels[0] = "<sink>";
    for (int u : order) {
        int du = id[static_cast<std::size_t>(u)];
        std::vector<std::uint8_t> word;
        for (int w = u; w > 0; w = nodes[static_cast<std::size_t>(w)].parent)
            word.push_back(nodes[static_cast<std::size_t>(w)].letter);
        std::reverse(word.begin(), word.end());
        std::string label;
        for (std::uint8_t c : word) label += aa.letters[c];
        out.dfa.labels[static_cast<std::size_t>(du)] = label;
        out.words[static_cast<std::size_t>(du)] = std::move(word);
        for (int a = 0; a < L; ++a) {
            int v = nodes[static_cast<std::size_t>(u)].step[static_cast<std::size_t>(a)];
            out.dfa.next[static_cast<std::size_t>(du) * static_cast<std::size_t>(L) +
                         static_cast<std::size_t>(a)] =
                nodes[static_cast<std::size_t>(v)].out ? 0 : id[static_cast<std::size_t>(v)];
        }
    }
    return out;
}

} // namespace

AcAutomaton build_ac(const Seed& seed, const AlignmentAlphabet& aa) { return build({seed}, aa); }

AcAutomaton build_ac_multi(const std::vector<Seed>& seeds, const AlignmentAlphabet& aa) {
    return build(seeds, aa);
}

ProjectionReport check_ac_projection(const AcAutomaton& ac, const SeedAutomaton& sa,
                                     const CompiledSeed& cs) {
    ProjectionReport rep;
    rep.map.assign(static_cast<std::size_t>(ac.dfa.n_states), -1);

    std::unordered_map<std::uint64_t, int> spi_ids; // packed (bits, run) -> id
    auto pack = [](std::uint64_t bits, int run) {
        return bits * 131ull + static_cast<std::uint64_t>(run); // r <= 56 in practice
    };
    for (int s = 0; s < sa.dfa.n_states; ++s)
        if (!sa.dfa.is_final(s))
            spi_ids[pack(sa.states[static_cast<std::size_t>(s)].prefix_bits,
                         sa.states[static_cast<std::size_t>(s)].run_len)] = s;

    auto prefix_matched = [&](const std::vector<std::uint8_t>& w, int end, int len) {
        for (int i = 1; i <= len; ++i)
            if (!cs.pos_matches(i, w[static_cast<std::size_t>(end - len + i - 1)])) return false;
        return true;
    };

    for (int u = 0; u < ac.dfa.n_states; ++u) {
        if (ac.dfa.is_final(u)) {
            rep.map[static_cast<std::size_t>(u)] = sa.final_state;
            continue;
        }
        const std::vector<std::uint8_t>& w = ac.words[static_cast<std::size_t>(u)];
        int p = static_cast<int>(w.size());
        int run = 0;
        while (run < p && cs.is_run_letter(w[static_cast<std::size_t>(p - 1 - run)])) ++run;
        std::uint64_t bits = 0;
        if (run < p) {
            for (std::size_t i = 0; i < cs.tracked.size(); ++i) {
                int z = cs.tracked[i];
                if (z <= p - run && prefix_matched(w, p - run, z)) bits |= 1ull << i;
            }
            if (cs.track_index[static_cast<std::size_t>(p - run)] == 0) {
                rep.diagnostic = "word ends in an untracked position after run removal";
                return rep;
            }
        }
        auto it = spi_ids.find(pack(bits, run));
        if (it == spi_ids.end()) {
            rep.diagnostic = "projected state missing from the seed automaton: word '" +
                             ac.dfa.labels[static_cast<std::size_t>(u)] + "'";
            return rep;
        }
        rep.map[static_cast<std::size_t>(u)] = it->second;
    }

    if (rep.map[static_cast<std::size_t>(ac.dfa.initial)] != sa.dfa.initial) {
        rep.diagnostic = "projection does not send root to the initial state";
        return rep;
    }
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(sa.dfa.n_states), 0);
    for (int u = 0; u < ac.dfa.n_states; ++u) hit[static_cast<std::size_t>(rep.map[static_cast<std::size_t>(u)])] = 1;
    for (int s = 0; s < sa.dfa.n_states; ++s)
        if (!hit[static_cast<std::size_t>(s)]) {
            rep.diagnostic = "projection not surjective: seed state " +
                             sa.dfa.labels[static_cast<std::size_t>(s)] + " never hit";
            return rep;
        }
    for (int u = 0; u < ac.dfa.n_states; ++u) {
        if (ac.dfa.is_final(u) != sa.dfa.is_final(rep.map[static_cast<std::size_t>(u)])) {
            rep.diagnostic = "projection breaks finality at '" + ac.dfa.labels[static_cast<std::size_t>(u)] + "'";
            return rep;
        }
        for (int a = 0; a < ac.dfa.n_letters; ++a) {
            int via_ac = rep.map[static_cast<std::size_t>(ac.dfa.step(u, a))];
            int via_sa = sa.dfa.step(rep.map[static_cast<std::size_t>(u)], a);
            if (via_ac != via_sa) {
                rep.diagnostic = "projection is not a morphism at '" +
                                 ac.dfa.labels[static_cast<std::size_t>(u)] + "' on letter " +
                                 std::to_string(a);
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

} // namespace subsetseed
