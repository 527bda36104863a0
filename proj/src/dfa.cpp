#include "subsetseed/dfa.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace subsetseed {

namespace {

std::vector<int> bfs_order(const Dfa& d) {
    std::vector<int> order;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(d.n_states), 0);
    order.push_back(d.initial);
    seen[static_cast<std::size_t>(d.initial)] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int s = order[head];
        for (int c = 0; c < d.n_letters; ++c) {
            int t = d.step(s, c);
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                order.push_back(t);
            }
        }
    }
    return order;
}

} // namespace

int reachable_count(const Dfa& d) { return static_cast<int>(bfs_order(d).size()); }

Dfa prune_unreachable(const Dfa& d) {
    std::vector<int> order = bfs_order(d);
    std::vector<int> new_id(static_cast<std::size_t>(d.n_states), -1);
    for (std::size_t i = 0; i < order.size(); ++i) new_id[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    Dfa out;
    out.n_states = static_cast<int>(order.size());
    out.n_letters = d.n_letters;
    out.initial = 0;
    out.final_flags.resize(static_cast<std::size_t>(out.n_states));
    out.next.resize(static_cast<std::size_t>(out.n_states) * static_cast<std::size_t>(d.n_letters));
    if (!d.labels.empty()) out.labels.resize(static_cast<std::size_t>(out.n_states));
    for (std::size_t i = 0; i < order.size(); ++i) {
        int s = order[i];
        out.final_flags[i] = d.final_flags[static_cast<std::size_t>(s)];
        if (!d.labels.empty()) out.labels[i] = d.labels[static_cast<std::size_t>(s)];
        for (int c = 0; c < d.n_letters; ++c)
            out.next[i * static_cast<std::size_t>(d.n_letters) + static_cast<std::size_t>(c)] =
                new_id[static_cast<std::size_t>(d.step(s, c))];
    }
    return out;
}

Dfa minimize(const Dfa& d0) {
    Dfa d = prune_unreachable(d0);
    const int n = d.n_states;
    const int L = d.n_letters;

    // Inverse transitions in CSR form, one block per letter.
    std::vector<int> pred_off(static_cast<std::size_t>(L) * static_cast<std::size_t>(n + 1), 0);
    std::vector<int> pred(static_cast<std::size_t>(n) * static_cast<std::size_t>(L));
    for (int s = 0; s < n; ++s)
        for (int c = 0; c < L; ++c)
            ++pred_off[static_cast<std::size_t>(c) * static_cast<std::size_t>(n + 1) +
                       static_cast<std::size_t>(d.step(s, c)) + 1];
    for (int c = 0; c < L; ++c) {
        std::size_t base = static_cast<std::size_t>(c) * static_cast<std::size_t>(n + 1);
        for (int t = 0; t < n; ++t) pred_off[base + static_cast<std::size_t>(t) + 1] += pred_off[base + static_cast<std::size_t>(t)];
    }
    {
        std::vector<int> cursor(pred_off);
        for (int s = 0; s < n; ++s)
            for (int c = 0; c < L; ++c) {
                std::size_t slot = static_cast<std::size_t>(c) * static_cast<std::size_t>(n + 1) +
                                   static_cast<std::size_t>(d.step(s, c));
                pred[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(cursor[slot]++) -
                     static_cast<std::size_t>(pred_off[static_cast<std::size_t>(c) * static_cast<std::size_t>(n + 1)])] = s;
            }
    }
    auto preds_of = [&](int c, int t, const int*& begin, const int*& end) {
        std::size_t base = static_cast<std::size_t>(c) * static_cast<std::size_t>(n + 1);
        std::size_t lo = static_cast<std::size_t>(pred_off[base + static_cast<std::size_t>(t)]) -
                         static_cast<std::size_t>(pred_off[base]);
        std::size_t hi = static_cast<std::size_t>(pred_off[base + static_cast<std::size_t>(t) + 1]) -
                         static_cast<std::size_t>(pred_off[base]);
        const int* letter_base = pred.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(n);
        begin = letter_base + lo;
        end = letter_base + hi;
    };

    // Hopcroft's partition refinement.
    std::vector<int> blk(static_cast<std::size_t>(n));
    std::vector<int> pos(static_cast<std::size_t>(n));
    std::vector<int> elems(static_cast<std::size_t>(n));
    std::vector<int> first, past;

    {
        int nf = 0;
        for (int s = 0; s < n; ++s)
            if (!d.is_final(s)) ++nf;
        int fi = nf, ni = 0; // finals placed after non-finals
        for (int s = 0; s < n; ++s) {
            int at = d.is_final(s) ? fi++ : ni++;
            elems[static_cast<std::size_t>(at)] = s;
            pos[static_cast<std::size_t>(s)] = at;
        }
        if (nf > 0) { first.push_back(0); past.push_back(nf); }
        if (nf < n) { first.push_back(nf); past.push_back(n); }
        for (int s = 0; s < n; ++s) blk[static_cast<std::size_t>(s)] = (d.is_final(s) && nf > 0 && nf < n) ? 1 : 0;
    }

    std::vector<std::pair<int, int>> worklist;
    std::vector<std::uint8_t> in_wl;
    auto push_work = [&](int b, int c) {
        std::size_t key = static_cast<std::size_t>(b) * static_cast<std::size_t>(L) + static_cast<std::size_t>(c);
        if (!in_wl[key]) {
            in_wl[key] = 1;
            worklist.emplace_back(b, c);
        }
    };
    in_wl.assign(first.size() * static_cast<std::size_t>(L), 0);
    for (std::size_t b = 0; b < first.size(); ++b)
        for (int c = 0; c < L; ++c) push_work(static_cast<int>(b), c);

    std::vector<int> mark_count;
    mark_count.assign(first.size(), 0);
    std::vector<int> touched;
    std::vector<int> splitter;

    while (!worklist.empty()) {
        auto [A, c] = worklist.back();
        worklist.pop_back();
        in_wl[static_cast<std::size_t>(A) * static_cast<std::size_t>(L) + static_cast<std::size_t>(c)] = 0;

        splitter.assign(elems.begin() + first[static_cast<std::size_t>(A)],
                        elems.begin() + past[static_cast<std::size_t>(A)]);
        touched.clear();
        for (int t : splitter) {
            const int *pb, *pe;
            preds_of(c, t, pb, pe);
            for (const int* it = pb; it != pe; ++it) {
                int s = *it;
                int b = blk[static_cast<std::size_t>(s)];
                if (mark_count[static_cast<std::size_t>(b)] == 0) touched.push_back(b);
                int i = pos[static_cast<std::size_t>(s)];
                int j = first[static_cast<std::size_t>(b)] + mark_count[static_cast<std::size_t>(b)];
                if (i != j) {
                    std::swap(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]);
                    pos[static_cast<std::size_t>(elems[static_cast<std::size_t>(i)])] = i;
                    pos[static_cast<std::size_t>(elems[static_cast<std::size_t>(j)])] = j;
                }
                ++mark_count[static_cast<std::size_t>(b)];
            }
        }

        for (int b : touched) {
            int m = mark_count[static_cast<std::size_t>(b)];
            mark_count[static_cast<std::size_t>(b)] = 0;
            int sz = past[static_cast<std::size_t>(b)] - first[static_cast<std::size_t>(b)];
            if (m == sz) continue;

            // Move the smaller half into a new block.
            int nb = static_cast<int>(first.size());
            if (m <= sz - m) {
                first.push_back(first[static_cast<std::size_t>(b)]);
                past.push_back(first[static_cast<std::size_t>(b)] + m);
                first[static_cast<std::size_t>(b)] += m;
            } else {
                first.push_back(first[static_cast<std::size_t>(b)] + m);
                past.push_back(past[static_cast<std::size_t>(b)]);
                past[static_cast<std::size_t>(b)] = first[static_cast<std::size_t>(b)] + m;
            }
            for (int i = first[static_cast<std::size_t>(nb)]; i < past[static_cast<std::size_t>(nb)]; ++i)
                blk[static_cast<std::size_t>(elems[static_cast<std::size_t>(i)])] = nb;
            mark_count.push_back(0);
            in_wl.resize(in_wl.size() + static_cast<std::size_t>(L), 0);

            for (int c2 = 0; c2 < L; ++c2) {
                std::size_t key = static_cast<std::size_t>(b) * static_cast<std::size_t>(L) + static_cast<std::size_t>(c2);
                if (in_wl[key]) {
                    push_work(nb, c2); // pending splitter covers both halves
                } else {
                    int small = (past[static_cast<std::size_t>(nb)] - first[static_cast<std::size_t>(nb)] <=
                                 past[static_cast<std::size_t>(b)] - first[static_cast<std::size_t>(b)])
                                    ? nb
                                    : b;
                    push_work(small, c2);
                }
            }
        }
    }

    // Quotient automaton over the blocks.
    Dfa q;
    q.n_states = static_cast<int>(first.size());
    q.n_letters = L;
    q.initial = blk[static_cast<std::size_t>(d.initial)];
    q.final_flags.resize(static_cast<std::size_t>(q.n_states));
    q.next.resize(static_cast<std::size_t>(q.n_states) * static_cast<std::size_t>(L));
    for (std::size_t b = 0; b < first.size(); ++b) {
        int rep = elems[static_cast<std::size_t>(first[b])];
        q.final_flags[b] = d.final_flags[static_cast<std::size_t>(rep)];
        for (int c = 0; c < L; ++c)
            q.next[b * static_cast<std::size_t>(L) + static_cast<std::size_t>(c)] =
                blk[static_cast<std::size_t>(d.step(rep, c))];
    }
    return prune_unreachable(q);
}

bool equivalent(const Dfa& a, const Dfa& b) {
    if (a.n_letters != b.n_letters) throw Error("equivalent: alphabet size mismatch");
    const int na = a.n_states;
    std::vector<int> parent(static_cast<std::size_t>(na + b.n_states));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };

    std::vector<std::pair<int, int>> stack{{a.initial, b.initial}};
    while (!stack.empty()) {
        auto [p, q] = stack.back();
        stack.pop_back();
        if (a.is_final(p) != b.is_final(q)) return false;
        int rp = find(p), rq = find(na + q);
        if (rp == rq) continue;
        parent[static_cast<std::size_t>(rp)] = rq;
        for (int c = 0; c < a.n_letters; ++c) stack.emplace_back(a.step(p, c), b.step(q, c));
    }
    return true;
}

std::string export_dot(const Dfa& d, const std::vector<std::string>& letter_names) {
    auto letter_name = [&](int c) {
        if (!letter_names.empty()) return letter_names[static_cast<std::size_t>(c)];
        return std::to_string(c);
    };
    auto escape = [](const std::string& s) {
        std::string out;
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out.push_back('\\');
            out.push_back(ch);
        }
        return out;
    };

    std::ostringstream out;
    out << "digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n  __start -> s" << d.initial << ";\n";
    for (int s = 0; s < d.n_states; ++s) {
        out << "  s" << s << " [shape=" << (d.is_final(s) ? "doublecircle" : "circle");
        if (!d.labels.empty() && !d.labels[static_cast<std::size_t>(s)].empty())
            out << ", label=\"" << escape(d.labels[static_cast<std::size_t>(s)]) << "\"";
        out << "];\n";
    }
    for (int s = 0; s < d.n_states; ++s) {
        // One edge per distinct target, letters joined on the label.
        for (int c = 0; c < d.n_letters; ++c) {
            int t = d.step(s, c);
            bool seen_before = false;
            for (int c2 = 0; c2 < c; ++c2) seen_before = seen_before || d.step(s, c2) == t;
            if (seen_before) continue;
            std::string lbl = letter_name(c);
            for (int c2 = c + 1; c2 < d.n_letters; ++c2)
                if (d.step(s, c2) == t) lbl += "," + letter_name(c2);
            out << "  s" << s << " -> s" << t << " [label=\"" << escape(lbl) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string serialize_dfa(const Dfa& d) {
    std::ostringstream out;
    out << "dfa " << d.n_states << ' ' << d.n_letters << ' ' << d.initial << "\nfinals:";
    for (int s = 0; s < d.n_states; ++s)
        if (d.is_final(s)) out << ' ' << s;
    out << '\n';
    for (int s = 0; s < d.n_states; ++s) {
        for (int c = 0; c < d.n_letters; ++c) {
            if (c) out << ' ';
            out << d.step(s, c);
        }
        out << '\n';
    }
    for (std::size_t s = 0; s < d.labels.size(); ++s)
        if (!d.labels[s].empty()) out << "label " << s << ' ' << d.labels[s] << '\n';
    return out.str();
}

Dfa parse_dfa(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("dfa parse: empty document");
    std::istringstream header(line);
    std::string magic;
    int ns = 0, nl = 0, init = 0;
    if (!(header >> magic) || magic != "dfa") throw Error("dfa parse: missing 'dfa' header");
    if (!(header >> ns >> nl >> init)) throw Error("dfa parse: malformed header");
    if (ns < 1 || nl < 1) throw Error("dfa parse: needs at least one state and one letter");
    if (init < 0 || init >= ns) throw Error("dfa parse: initial state out of range");

    Dfa d;
    d.n_states = ns;
    d.n_letters = nl;
    d.initial = init;
    d.final_flags.assign(static_cast<std::size_t>(ns), 0);
    d.next.assign(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nl), 0);

    if (!std::getline(in, line)) throw Error("dfa parse: missing finals line");
    {
        std::istringstream f(line);
        std::string tag;
        f >> tag;
        if (tag != "finals:") throw Error("dfa parse: expected 'finals:' line");
        int id;
        while (f >> id) {
            if (id < 0 || id >= ns) throw Error("dfa parse: final state id out of range");
            d.final_flags[static_cast<std::size_t>(id)] = 1;
        }
    }
    for (int s = 0; s < ns; ++s) {
        if (!std::getline(in, line)) throw Error("dfa parse: missing transition row " + std::to_string(s));
        std::istringstream row(line);
        for (int c = 0; c < nl; ++c) {
            int t;
            if (!(row >> t)) throw Error("dfa parse: short transition row " + std::to_string(s));
            if (t < 0 || t >= ns) throw Error("dfa parse: dangling state id " + std::to_string(t));
            d.next[static_cast<std::size_t>(s) * static_cast<std::size_t>(nl) + static_cast<std::size_t>(c)] = t;
        }
        int extra;
        if (row >> extra) throw Error("dfa parse: overlong transition row " + std::to_string(s));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream l(line);
        std::string tag;
        int id;
        l >> tag >> id;
        if (tag != "label" || l.fail()) throw Error("dfa parse: unexpected trailing line '" + line + "'");
        if (id < 0 || id >= ns) throw Error("dfa parse: label id out of range");
        std::string rest;
        std::getline(l, rest);
        if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
        if (d.labels.empty()) d.labels.assign(static_cast<std::size_t>(ns), "");
        d.labels[static_cast<std::size_t>(id)] = rest;
    }
    return d;
}

} // namespace subsetseed
