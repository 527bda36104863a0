#include "subsetseed/seed_automaton.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace subsetseed {

namespace {

void validate(const CompiledSeed& cs) {
    if (cs.span < 1) throw Error("seed automaton: empty seed");
    if (cs.n_letters < 1 || cs.n_letters > 32) throw Error("seed automaton: bad alphabet size");
    if (static_cast<int>(cs.pos_masks.size()) != cs.span) throw Error("seed automaton: bad mask count");
    if (cs.r() > 64) throw Error("seed automaton: more than 64 tracked positions");
    std::uint32_t all = cs.n_letters == 32 ? ~0u : ((1u << cs.n_letters) - 1u);
    for (int pos = 1; pos <= cs.span; ++pos) {
        std::uint32_t m = cs.pos_masks[static_cast<std::size_t>(pos - 1)];
        if (m == 0) throw Error("seed automaton: position " + std::to_string(pos) + " matches no letter");
        if (m & ~all) throw Error("seed automaton: match set out of alphabet range");
        if ((m & cs.run_mask) != cs.run_mask)
            throw Error("seed automaton: run letters must be matched by every position");
        int j = cs.track_index[static_cast<std::size_t>(pos)];
        if (j == 0 && m != cs.run_mask)
            throw Error("seed automaton: untracked position " + std::to_string(pos) +
                        " matches beyond the run letters");
        if (j != 0 && cs.tracked[static_cast<std::size_t>(j - 1)] != pos)
            throw Error("seed automaton: inconsistent tracked-position index");
    }
    for (std::size_t i = 1; i < cs.tracked.size(); ++i)
        if (cs.tracked[i - 1] >= cs.tracked[i]) throw Error("seed automaton: tracked positions not ascending");
}

struct StateKey {
    std::uint64_t bits;
    int run;
    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        std::uint64_t h = k.bits * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(k.run) + (h >> 29);
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
    }
};

std::string format_prefix_set(const CompiledSeed& cs, std::uint64_t bits) {
    std::string out = "{";
    bool sep = false;
    for (std::uint64_t b = bits; b; b &= b - 1) {
        int i = std::countr_zero(b);
        if (sep) out += ',';
        out += std::to_string(cs.tracked[static_cast<std::size_t>(i)]);
        sep = true;
    }
    out += '}';
    return out;
}

} // namespace

int top_index(std::uint64_t prefix_bits) { return 64 - std::countl_zero(prefix_bits); }

int top_position(const CompiledSeed& cs, std::uint64_t prefix_bits) {
    int k = top_index(prefix_bits);
    return k == 0 ? 0 : cs.tracked[static_cast<std::size_t>(k - 1)];
}

std::string state_label(const CompiledSeed& cs, const SeedState& q) {
    return "<" + format_prefix_set(cs, q.prefix_bits) + "," + std::to_string(q.run_len) + ">";
}

CompiledSeed compile_seed(const Seed& seed, const AlignmentAlphabet& aa) {
    if (!aa.has_match_letter()) throw Error("compile_seed: alphabet lacks a match letter");
    CompiledSeed cs;
    cs.n_letters = static_cast<int>(aa.size());
    cs.run_mask = 1u << aa.match_index;
    cs.pos_masks = seed.pos_masks;
    cs.tracked = seed.r_positions;
    cs.span = seed.span;
    cs.track_index.assign(static_cast<std::size_t>(cs.span) + 1, 0);
    for (std::size_t i = 0; i < cs.tracked.size(); ++i)
        cs.track_index[static_cast<std::size_t>(cs.tracked[i])] = static_cast<int>(i) + 1;
    validate(cs);
    return cs;
}

std::optional<SeedState> step(const CompiledSeed& cs, const SeedState& q, int letter) {
    if (letter < 0 || letter >= cs.n_letters)
        throw Error("step: letter " + std::to_string(letter) + " outside the alphabet");
    if (cs.is_run_letter(letter)) {
        int t = q.run_len + 1;
        if (top_position(cs, q.prefix_bits) + t >= cs.span) return std::nullopt;
        return SeedState{q.prefix_bits, t};
    }
    std::uint64_t y = 0;
    // prefixes restarted within the trailing run plus this letter
    for (std::size_t i = 0; i < cs.tracked.size() && cs.tracked[i] <= q.run_len + 1; ++i)
        if (cs.pos_matches(cs.tracked[i], letter)) y |= 1ull << i;
    // prefixes extended across the run
    for (std::uint64_t b = q.prefix_bits; b; b &= b - 1) {
        int i = std::countr_zero(b);
        int pos = cs.tracked[static_cast<std::size_t>(i)] + q.run_len + 1;
        if (pos > cs.span) continue;
        int j = cs.track_index[static_cast<std::size_t>(pos)];
        if (j != 0 && cs.pos_matches(pos, letter)) y |= 1ull << (j - 1);
    }
    if (top_position(cs, y) >= cs.span) return std::nullopt;
    return SeedState{y, 0};
}

SeedTables precompute_tables(const CompiledSeed& cs) {
    SeedTables t;
    t.n_letters = cs.n_letters;
    t.span = cs.span;
    t.run_prefix_sets.assign(static_cast<std::size_t>(cs.span) * static_cast<std::size_t>(cs.n_letters), 0);
    for (int run = 0; run < cs.span; ++run) {
        for (int a = 0; a < cs.n_letters; ++a) {
            std::uint64_t prev =
                run == 0 ? 0
                         : t.run_prefix_sets[static_cast<std::size_t>(run - 1) *
                                                 static_cast<std::size_t>(cs.n_letters) +
                                             static_cast<std::size_t>(a)];
            int j = cs.track_index[static_cast<std::size_t>(run + 1)];
            if (j != 0 && cs.pos_matches(run + 1, a)) prev |= 1ull << (j - 1);
            t.run_prefix_sets[static_cast<std::size_t>(run) * static_cast<std::size_t>(cs.n_letters) +
                              static_cast<std::size_t>(a)] = prev;
        }
    }
    int r = cs.r();
    t.extend.assign(static_cast<std::size_t>(r + 1) * static_cast<std::size_t>(cs.span) *
                        static_cast<std::size_t>(cs.n_letters),
                    0);
    for (int k = 0; k <= r; ++k) {
        int zk = k == 0 ? 0 : cs.tracked[static_cast<std::size_t>(k - 1)];
        for (int run = 0; run < cs.span; ++run) {
            int pos = zk + run + 1;
            if (pos > cs.span) continue;
            int j = cs.track_index[static_cast<std::size_t>(pos)];
            if (j == 0) continue;
            for (int a = 0; a < cs.n_letters; ++a)
                if (cs.pos_matches(pos, a))
                    t.extend[(static_cast<std::size_t>(k) * static_cast<std::size_t>(cs.span) +
                              static_cast<std::size_t>(run)) *
                                 static_cast<std::size_t>(cs.n_letters) +
                             static_cast<std::size_t>(a)] = static_cast<std::int16_t>(j);
        }
    }
    return t;
}

namespace {

// Shared scaffolding for the BFS builders: state 0 is the merged final
// state, state 1 the initial state.
struct Construction {
    std::vector<SeedState> states{SeedState{}, SeedState{}};
    std::vector<std::int32_t> next;
    int n_letters;

    explicit Construction(int letters) : n_letters(letters) {
        next.assign(2 * static_cast<std::size_t>(letters), 0);
        for (int a = 0; a < letters; ++a) next[static_cast<std::size_t>(a)] = 0; // final absorbs
    }
    int create(std::uint64_t bits, int run) {
        states.push_back(SeedState{bits, run});
        next.resize(next.size() + static_cast<std::size_t>(n_letters), -1);
        return static_cast<int>(states.size()) - 1;
    }
    void set(int s, int a, int target) {
        next[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_letters) +
             static_cast<std::size_t>(a)] = target;
    }
    SeedAutomaton finish(const CompiledSeed& cs) {
        SeedAutomaton out;
        out.dfa.n_states = static_cast<int>(states.size());
        out.dfa.n_letters = n_letters;
        out.dfa.initial = 1;
        out.dfa.final_flags.assign(states.size(), 0);
        out.dfa.final_flags[0] = 1;
        out.dfa.next = std::move(next);
        out.dfa.labels.resize(states.size());
        out.dfa.labels[0] = "<>";
        for (std::size_t s = 1; s < states.size(); ++s) out.dfa.labels[s] = state_label(cs, states[s]);
        out.states = std::move(states);
        out.final_state = 0;
        return out;
    }
};

} // namespace

SeedAutomaton build_naive(const CompiledSeed& cs) {
    validate(cs);
    Construction c(cs.n_letters);
    std::unordered_map<StateKey, int, StateKeyHash> ids;
    ids[{0, 0}] = 1;
    for (int q = 1; q < static_cast<int>(c.states.size()); ++q) {
        SeedState qs = c.states[static_cast<std::size_t>(q)];
        for (int a = 0; a < cs.n_letters; ++a) {
            auto res = step(cs, qs, a);
            int target = 0;
            if (res) {
                auto [it, inserted] = ids.try_emplace({res->prefix_bits, res->run_len}, 0);
                if (inserted) it->second = c.create(res->prefix_bits, res->run_len);
                target = it->second;
            }
            c.set(q, a, target);
        }
    }
    return c.finish(cs);
}

SeedAutomaton build_incremental(const CompiledSeed& cs, BuildCost* cost) {
    validate(cs);
    SeedTables tables = precompute_tables(cs);
    Construction c(cs.n_letters);
    std::vector<std::int32_t> fail{0, 1};
    std::vector<std::int32_t> newest_fail_source{-1, -1};
    BuildCost bc;

    auto create = [&](std::uint64_t bits, int run, int fail_to) {
        int id = c.create(bits, run);
        fail.push_back(fail_to);
        newest_fail_source.push_back(-1);
        newest_fail_source[static_cast<std::size_t>(fail_to)] = id;
        bc.ops += 3;
        return id;
    };

    // First level: transitions of the initial state. At most two distinct
    // non-self targets exist, so two slots stand in for the retrieval logic.
    int run_target = -1;
    int first_pos_target = -1;
    for (int a = 0; a < cs.n_letters; ++a) {
        ++bc.transitions;
        bc.ops += 2;
        int qy;
        if (cs.pos_matches(1, a)) {
            if (cs.is_run_letter(a)) {
                if (1 >= cs.span) qy = 0;
                else if (run_target != -1) qy = run_target;
                else qy = run_target = create(0, 1, 1);
            } else {
                if (1 >= cs.span) qy = 0;
                else if (first_pos_target != -1) qy = first_pos_target;
                else qy = first_pos_target = create(1ull, 0, 1);
            }
        } else {
            qy = 1;
        }
        c.set(1, a, qy);
    }

    // Breadth-first main loop; creation order equals queue order, so the
    // pending queue is just the id cursor.
    for (int q = 2; q < static_cast<int>(c.states.size()); ++q) {
        const SeedState qs = c.states[static_cast<std::size_t>(q)];
        const int q_fail = fail[static_cast<std::size_t>(q)];
        const int kq = top_index(qs.prefix_bits);
        for (int a = 0; a < cs.n_letters; ++a) {
            ++bc.transitions;
            bc.ops += 2;
            const int via_fail = c.next[static_cast<std::size_t>(q_fail) * static_cast<std::size_t>(cs.n_letters) +
                                        static_cast<std::size_t>(a)];
            if (via_fail == 0) {
                // the smaller prefix set already completes a match, so the
                // superset does as well
                c.set(q, a, 0);
                ++bc.ops;
                continue;
            }
            std::uint64_t y;
            int ty;
            if (cs.is_run_letter(a)) {
                y = qs.prefix_bits;
                ty = qs.run_len + 1;
                ++bc.ops;
            } else {
                ty = 0;
                if (qs.prefix_bits == 0) {
                    y = tables.run_prefixes(qs.run_len, a);
                    ++bc.ops;
                } else {
                    int j = tables.extend_index(kq, qs.run_len, a);
                    y = c.states[static_cast<std::size_t>(via_fail)].prefix_bits |
                        (j ? 1ull << (j - 1) : 0ull);
                    bc.ops += 2;
                }
            }

            int qy;
            const int rev = newest_fail_source[static_cast<std::size_t>(via_fail)];
            ++bc.ops;
            if (rev != -1 && c.states[static_cast<std::size_t>(rev)].run_len == ty &&
                c.states[static_cast<std::size_t>(rev)].prefix_bits == y) {
                qy = rev; // already created, retrieved through the newest fail source
                ++bc.ops;
            } else if (c.states[static_cast<std::size_t>(via_fail)].run_len == ty &&
                       c.states[static_cast<std::size_t>(via_fail)].prefix_bits == y) {
                qy = via_fail; // nothing extended, reuse the fail-side target
                ++bc.ops;
            } else if (top_position(cs, y) + ty >= cs.span) {
                qy = 0;
                ++bc.ops;
            } else {
                qy = create(y, ty, via_fail);
            }
            c.set(q, a, qy);
        }
    }

    if (cost) *cost = bc;
    return c.finish(cs);
}

SeedAutomaton build_naive(const Seed& seed, const AlignmentAlphabet& aa) {
    return build_naive(compile_seed(seed, aa));
}

SeedAutomaton build_incremental(const Seed& seed, const AlignmentAlphabet& aa, BuildCost* cost) {
    return build_incremental(compile_seed(seed, aa), cost);
}

bool verify_trace(const CompiledSeed& cs, const SeedAutomaton& sa,
                  const std::vector<std::uint8_t>& text) {
    auto prefix_matched = [&](int end, int len) {
        // does the seed prefix of length len match text[end-len..end)?
        for (int i = 1; i <= len; ++i)
            if (!cs.pos_matches(i, text[static_cast<std::size_t>(end - len + i - 1)])) return false;
        return true;
    };

    int state = sa.dfa.initial;
    bool matched = false;
    for (int p = 1; p <= static_cast<int>(text.size()); ++p) {
        state = sa.dfa.step(state, text[static_cast<std::size_t>(p - 1)]);
        if (p >= cs.span) {
            bool full = true;
            for (int i = 1; i <= cs.span && full; ++i)
                full = cs.pos_matches(i, text[static_cast<std::size_t>(p - cs.span + i - 1)]);
            matched = matched || full;
        }
        if (sa.dfa.is_final(state)) return matched;
        if (matched) return false;

        int run = 0;
        while (run < p && cs.is_run_letter(text[static_cast<std::size_t>(p - 1 - run)])) ++run;
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < cs.tracked.size(); ++i) {
            int z = cs.tracked[i];
            if (z <= p - run && prefix_matched(p - run, z)) bits |= 1ull << i;
        }
        const SeedState& got = sa.states[static_cast<std::size_t>(state)];
        if (got.prefix_bits != bits || got.run_len != run) return false;
    }
    return true;
}

namespace {

struct MultiKey {
    std::vector<std::uint64_t> bits;
    int run;
    bool operator==(const MultiKey&) const = default;
};

struct MultiKeyHash {
    std::size_t operator()(const MultiKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t b : k.bits) {
            h ^= b;
            h *= 1099511628211ull;
        }
        h ^= static_cast<std::uint64_t>(k.run);
        h *= 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

} // namespace

SeedAutomaton build_multi(const std::vector<CompiledSeed>& seeds) {
    if (seeds.empty()) throw Error("build_multi: empty seed list");
    for (const auto& cs : seeds) {
        validate(cs);
        if (cs.n_letters != seeds[0].n_letters || cs.run_mask != seeds[0].run_mask)
            throw Error("build_multi: seeds over mixed alphabets");
    }
    const int k = static_cast<int>(seeds.size());
    const int L = seeds[0].n_letters;

    auto label_of = [&](const MultiKey& key) {
        std::string out = "<";
        for (int i = 0; i < k; ++i)
            out += format_prefix_set(seeds[static_cast<std::size_t>(i)], key.bits[static_cast<std::size_t>(i)]) + ",";
        out += std::to_string(key.run) + ">";
        return out;
    };

    std::vector<MultiKey> states{MultiKey{}, MultiKey{std::vector<std::uint64_t>(static_cast<std::size_t>(k), 0), 0}};
    std::vector<std::int32_t> next(2 * static_cast<std::size_t>(L), 0);
    std::unordered_map<MultiKey, int, MultiKeyHash> ids;
    ids[states[1]] = 1;

    for (int q = 1; q < static_cast<int>(states.size()); ++q) {
        MultiKey qs = states[static_cast<std::size_t>(q)];
        for (int a = 0; a < L; ++a) {
            MultiKey ykey;
            ykey.bits.resize(static_cast<std::size_t>(k));
            bool final = false;
            bool run_letter = seeds[0].is_run_letter(a);
            if (run_letter) {
                ykey.bits = qs.bits;
                ykey.run = qs.run + 1;
                for (int i = 0; i < k && !final; ++i)
                    final = top_position(seeds[static_cast<std::size_t>(i)], qs.bits[static_cast<std::size_t>(i)]) +
                                ykey.run >=
                            seeds[static_cast<std::size_t>(i)].span;
            } else {
                ykey.run = 0;
                for (int i = 0; i < k; ++i) {
                    const CompiledSeed& cs = seeds[static_cast<std::size_t>(i)];
                    auto res = step(cs, SeedState{qs.bits[static_cast<std::size_t>(i)], qs.run}, a);
                    if (!res) { final = true; break; }
                    ykey.bits[static_cast<std::size_t>(i)] = res->prefix_bits;
                }
            }
            int target = 0;
            if (!final) {
                auto [it, inserted] = ids.try_emplace(ykey, 0);
                if (inserted) {
                    states.push_back(ykey);
                    next.resize(next.size() + static_cast<std::size_t>(L), -1);
                    it->second = static_cast<int>(states.size()) - 1;
                }
                target = it->second;
            }
            next[static_cast<std::size_t>(q) * static_cast<std::size_t>(L) + static_cast<std::size_t>(a)] = target;
        }
    }

    SeedAutomaton out;
    out.dfa.n_states = static_cast<int>(states.size());
    out.dfa.n_letters = L;
    out.dfa.initial = 1;
    out.dfa.final_flags.assign(states.size(), 0);
    out.dfa.final_flags[0] = 1;
    out.dfa.next = std::move(next);
    out.dfa.labels.resize(states.size());
    out.dfa.labels[0] = "<>";
    for (std::size_t s = 1; s < states.size(); ++s) out.dfa.labels[s] = label_of(states[s]);
    out.states.resize(states.size());
    for (std::size_t s = 1; s < states.size(); ++s)
        out.states[s] = SeedState{k == 1 ? states[s].bits[0] : 0, states[s].run};
    out.final_state = 0;
    return out;
}

SeedAutomaton build_multi(const std::vector<Seed>& seeds, const AlignmentAlphabet& aa) {
    std::vector<CompiledSeed> cs;
    cs.reserve(seeds.size());
    for (const Seed& s : seeds) cs.push_back(compile_seed(s, aa));
    return build_multi(cs);
}

std::optional<int> first_hit(const Dfa& d, const std::vector<std::uint8_t>& text) {
    int state = d.initial;
    if (d.is_final(state)) return 0;
    for (std::size_t p = 0; p < text.size(); ++p) {
        state = d.step(state, text[p]);
        if (d.is_final(state)) return static_cast<int>(p) + 1;
    }
    return std::nullopt;
}

} // namespace subsetseed
