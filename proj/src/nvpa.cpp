// ============================================================================
// nvpa.cpp — visibly pushdown Büchi automata: membership, closures, emptiness
// ============================================================================

#include "stackhyper/nvpa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stackhyper {

// ── validation ──────────────────────────────────────────────────────────────

void Nvpa::check_valid() const {
    auto check_state = [&](Id q) {
        if (q >= num_states) throw std::logic_error("nvpa: state id out of range");
    };
    check_state(initial);
    for (const auto& r : call_rules) {
        check_state(r.from);
        check_state(r.to);
        if (r.push >= num_stack_syms) throw std::logic_error("nvpa: push symbol out of range");
        if (r.guard.arity() != alphabet.arity) throw std::logic_error("nvpa: guard arity");
    }
    for (const auto& r : int_rules) {
        check_state(r.from);
        check_state(r.to);
        if (r.guard.arity() != alphabet.arity) throw std::logic_error("nvpa: guard arity");
    }
    for (const auto& r : ret_rules) {
        check_state(r.from);
        check_state(r.to);
        if (r.pop != kBottom && r.pop >= num_stack_syms)
            throw std::logic_error("nvpa: pop symbol out of range");
        if (r.guard.arity() != alphabet.arity) throw std::logic_error("nvpa: guard arity");
    }
    if (acceptance == Acceptance::Buchi) {
        if (accepting.size() != num_states) throw std::logic_error("nvpa: accepting size");
    } else {
        if (priority.size() != num_states) throw std::logic_error("nvpa: priority size");
    }
}

// ── lasso words ─────────────────────────────────────────────────────────────

bool LassoWord::stack_neutral() const {
    std::vector<Op> tags;
    for (const auto& z : word.period) tags.push_back(z.tag);
    return is_well_matched(tags);
}

long LassoWord::period_net() const {
    long net = 0;
    for (const auto& z : word.period) {
        if (z.tag == Op::Call) ++net;
        if (z.tag == Op::Ret) --net;
    }
    return net;
}

// ── shared cycle machinery ──────────────────────────────────────────────────
// exists a cycle (within the given adjacency) whose minimum priority is even;
// Büchi is the special case priority ∈ {0, 1}.

namespace {

struct SccUtil {
    const std::vector<std::vector<std::uint32_t>>& adj;

    std::vector<std::vector<std::uint32_t>> sccs_of(const std::vector<std::uint32_t>& nodes) {
        std::set<std::uint32_t> in_set(nodes.begin(), nodes.end());
        std::map<std::uint32_t, int> index, low;
        std::set<std::uint32_t> on_stack;
        std::vector<std::uint32_t> stack;
        std::vector<std::vector<std::uint32_t>> out;
        int next = 0;
        struct Frame { std::uint32_t v; std::size_t ei; };
        for (std::uint32_t root : nodes) {
            if (index.count(root)) continue;
            std::vector<Frame> call{{root, 0}};
            index[root] = low[root] = next++;
            stack.push_back(root);
            on_stack.insert(root);
            while (!call.empty()) {
                Frame& fr = call.back();
                if (fr.ei < adj[fr.v].size()) {
                    std::uint32_t w = adj[fr.v][fr.ei++];
                    if (!in_set.count(w)) continue;
                    if (!index.count(w)) {
                        index[w] = low[w] = next++;
                        stack.push_back(w);
                        on_stack.insert(w);
                        call.push_back({w, 0});
                    } else if (on_stack.count(w)) {
                        low[fr.v] = std::min(low[fr.v], index[w]);
                    }
                } else {
                    std::uint32_t v = fr.v;
                    call.pop_back();
                    if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                    if (low[v] == index[v]) {
                        std::vector<std::uint32_t> scc;
                        for (;;) {
                            std::uint32_t w = stack.back();
                            stack.pop_back();
                            on_stack.erase(w);
                            scc.push_back(w);
                            if (w == v) break;
                        }
                        out.push_back(std::move(scc));
                    }
                }
            }
        }
        return out;
    }

    bool nontrivial(const std::vector<std::uint32_t>& scc) {
        if (scc.size() > 1) return true;
        std::uint32_t v = scc[0];
        return std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
    }
};

bool exists_even_min_cycle(const std::vector<std::vector<std::uint32_t>>& adj,
                           const std::vector<std::uint32_t>& prio,
                           std::vector<std::uint32_t> nodes) {
    SccUtil util{adj};
    std::vector<std::vector<std::uint32_t>> work = util.sccs_of(nodes);
    while (!work.empty()) {
        auto scc = std::move(work.back());
        work.pop_back();
        if (!util.nontrivial(scc)) continue;
        std::uint32_t mn = std::numeric_limits<std::uint32_t>::max();
        for (auto v : scc) mn = std::min(mn, prio[v]);
        if (mn % 2 == 0) return true;
        std::vector<std::uint32_t> rest;
        for (auto v : scc)
            if (prio[v] != mn) rest.push_back(v);
        // re-decompose the stripped subgraph; edges leaving `rest` are
        // filtered by sccs_of
        auto subs = util.sccs_of(rest);
        for (auto& s : subs) work.push_back(std::move(s));
    }
    return false;
}

}  // namespace

// ── membership: configuration graph for net(v) ≤ 0 ─────────────────────────

namespace {

struct ConfigNode {
    Id state;
    std::vector<Id> stack;  // top first
    std::uint32_t cls;

    bool operator<(const ConfigNode& o) const {
        return std::tie(state, stack, cls) < std::tie(o.state, o.stack, o.cls);
    }
};

bool member_config_graph(const Nvpa& n, const LassoWord& w) {
    const std::size_t up = w.word.prefix_len(), vp = w.word.period_len();
    const std::size_t L = up + vp;
    auto sym_at = [&](std::uint32_t cls) -> const SymbolTemplate& {
        return cls < up ? w.word.prefix[cls] : w.word.period[cls - up];
    };
    auto advance = [&](std::uint32_t cls) -> std::uint32_t {
        return cls + 1 < L ? cls + 1 : static_cast<std::uint32_t>(up);
    };

    std::map<ConfigNode, std::uint32_t> ids;
    std::vector<ConfigNode> nodes;
    std::vector<std::vector<std::uint32_t>> adj;
    std::deque<std::uint32_t> work;
    auto get = [&](ConfigNode c) {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
        ids.emplace(c, id);
        nodes.push_back(std::move(c));
        adj.emplace_back();
        work.push_back(id);
        return id;
    };

    get(ConfigNode{n.initial, {}, 0});
    while (!work.empty()) {
        std::uint32_t vid = work.front();
        work.pop_front();
        ConfigNode cur = nodes[vid];  // copy: nodes may reallocate
        const SymbolTemplate& z = sym_at(cur.cls);
        std::uint32_t nxt = advance(cur.cls);
        switch (z.tag) {
            case Op::Int:
                for (const auto& r : n.int_rules) {
                    if (r.from != cur.state || !r.guard.matches(z)) continue;
                    adj[vid].push_back(get(ConfigNode{r.to, cur.stack, nxt}));
                }
                break;
            case Op::Call:
                for (const auto& r : n.call_rules) {
                    if (r.from != cur.state || !r.guard.matches(z)) continue;
                    ConfigNode c2{r.to, {}, nxt};
                    c2.stack.reserve(cur.stack.size() + 1);
                    c2.stack.push_back(r.push);
                    c2.stack.insert(c2.stack.end(), cur.stack.begin(), cur.stack.end());
                    adj[vid].push_back(get(std::move(c2)));
                }
                break;
            case Op::Ret:
                if (cur.stack.empty()) {
                    for (const auto& r : n.ret_rules) {
                        if (r.from != cur.state || r.pop != kBottom || !r.guard.matches(z))
                            continue;
                        adj[vid].push_back(get(ConfigNode{r.to, {}, nxt}));
                    }
                } else {
                    for (const auto& r : n.ret_rules) {
                        if (r.from != cur.state || r.pop != cur.stack.front() ||
                            !r.guard.matches(z))
                            continue;
                        ConfigNode c2{r.to, {cur.stack.begin() + 1, cur.stack.end()}, nxt};
                        adj[vid].push_back(get(std::move(c2)));
                    }
                }
                break;
        }
    }

    std::vector<std::uint32_t> prio(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        Id q = nodes[i].state;
        prio[i] = n.acceptance == Nvpa::Acceptance::Buchi ? (n.accepting[q] ? 0 : 1)
                                                          : n.priority[q];
    }
    std::vector<std::uint32_t> all(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) all[i] = i;
    return exists_even_min_cycle(adj, prio, all);
}

// NVPA accepting exactly {u·v^ω}; every state accepting.
Nvpa lasso_word_automaton(const Alphabet& al, const SymbolLasso& w) {
    Nvpa out;
    out.alphabet = al;
    const std::size_t up = w.prefix_len(), vp = w.period_len();
    const std::uint32_t L = static_cast<std::uint32_t>(up + vp);
    out.num_states = L;
    out.initial = 0;
    out.num_stack_syms = 1;
    out.acceptance = Nvpa::Acceptance::Buchi;
    out.accepting.assign(L, true);
    auto exact_guard = [&](const SymbolTemplate& z) {
        Guard g = Guard::unconstrained(al.arity);
        for (std::uint32_t i = 0; i < al.arity; ++i) {
            g.state_sets[i] = IdSet{z.states[i]};
            if (z.tag != Op::Int) g.stack_sets[i] = IdSet{z.stacks[i]};
        }
        return g;
    };
    for (std::uint32_t c = 0; c < L; ++c) {
        const SymbolTemplate& z = c < up ? w.prefix[c] : w.period[c - up];
        std::uint32_t nxt = c + 1 < L ? c + 1 : static_cast<std::uint32_t>(up);
        switch (z.tag) {
            case Op::Int:
                out.int_rules.push_back({c, exact_guard(z), nxt});
                break;
            case Op::Call:
                out.call_rules.push_back({c, exact_guard(z), nxt, 0});
                break;
            case Op::Ret:
                out.ret_rules.push_back({c, exact_guard(z), 0, nxt});
                out.ret_rules.push_back({c, exact_guard(z), kBottom, nxt});
                break;
        }
    }
    return out;
}

// product of two Büchi NVPAs over the same alphabet; accepting when the
// first component is (the second is all-accepting in our use)
Nvpa product_first_buchi(const Nvpa& a, const Nvpa& b) {
    Nvpa out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states * b.num_states;
    auto st = [&](Id x, Id y) { return x * b.num_states + y; };
    out.initial = st(a.initial, b.initial);
    out.num_stack_syms = a.num_stack_syms * b.num_stack_syms;
    auto sy = [&](Id x, Id y) { return x * b.num_stack_syms + y; };
    out.acceptance = Nvpa::Acceptance::Buchi;
    out.accepting.assign(out.num_states, false);
    for (Id x = 0; x < a.num_states; ++x)
        for (Id y = 0; y < b.num_states; ++y)
            out.accepting[st(x, y)] = a.accepting[x] && b.accepting[y];

    for (const auto& ra : a.int_rules)
        for (const auto& rb : b.int_rules) {
            auto g = ra.guard.conjoin(rb.guard);
            if (!g || !g->satisfiable(a.alphabet, Op::Int)) continue;
            out.int_rules.push_back({st(ra.from, rb.from), std::move(*g), st(ra.to, rb.to)});
        }
    for (const auto& ra : a.call_rules)
        for (const auto& rb : b.call_rules) {
            auto g = ra.guard.conjoin(rb.guard);
            if (!g || !g->satisfiable(a.alphabet, Op::Call)) continue;
            out.call_rules.push_back(
                {st(ra.from, rb.from), std::move(*g), st(ra.to, rb.to), sy(ra.push, rb.push)});
        }
    for (const auto& ra : a.ret_rules)
        for (const auto& rb : b.ret_rules) {
            auto g = ra.guard.conjoin(rb.guard);
            if (!g || !g->satisfiable(a.alphabet, Op::Ret)) continue;
            // ⊥ pairs with ⊥ only: heights of both stacks agree by visibility
            if ((ra.pop == kBottom) != (rb.pop == kBottom)) continue;
            Id pop = ra.pop == kBottom ? kBottom : sy(ra.pop, rb.pop);
            out.ret_rules.push_back({st(ra.from, rb.from), std::move(*g), pop, st(ra.to, rb.to)});
        }
    return out;
}

}  // namespace

bool lasso_member(const Nvpa& n, const LassoWord& w) {
    if (!w.word.valid()) throw std::invalid_argument("lasso_member: empty period");
    for (const auto& z : w.word.prefix)
        if (z.arity() != n.alphabet.arity) throw std::invalid_argument("lasso_member: arity");
    for (const auto& z : w.word.period)
        if (z.arity() != n.alphabet.arity) throw std::invalid_argument("lasso_member: arity");

    if (w.period_net() <= 0) return member_config_graph(n, w);

    // climbing period: intersect with the word and decide emptiness
    const Nvpa* base = &n;
    Nvpa lowered;
    if (n.acceptance == Nvpa::Acceptance::Parity) {
        lowered = parity_to_buchi(n);
        base = &lowered;
    }
    Nvpa word_aut = lasso_word_automaton(n.alphabet, w.word);
    Nvpa prod = nvpa_trim(product_first_buchi(*base, word_aut));
    return nvpa_emptiness(prod).has_value();
}

// ── union ───────────────────────────────────────────────────────────────────

Nvpa nvpa_union(const Nvpa& a, const Nvpa& b) {
    if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("nvpa_union: alphabet mismatch");
    if (a.acceptance != Nvpa::Acceptance::Buchi || b.acceptance != Nvpa::Acceptance::Buchi)
        throw std::invalid_argument("nvpa_union: Büchi operands required");
    Nvpa out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states + b.num_states + 1;
    Id off = a.num_states;
    Id fresh = a.num_states + b.num_states;
    out.initial = fresh;
    out.num_stack_syms = a.num_stack_syms + b.num_stack_syms;
    Id soff = a.num_stack_syms;
    out.acceptance = Nvpa::Acceptance::Buchi;
    out.accepting.assign(out.num_states, false);
    for (Id q = 0; q < a.num_states; ++q) out.accepting[q] = a.accepting[q];
    for (Id q = 0; q < b.num_states; ++q) out.accepting[off + q] = b.accepting[q];

    for (const auto& r : a.call_rules) out.call_rules.push_back(r);
    for (const auto& r : a.int_rules) out.int_rules.push_back(r);
    for (const auto& r : a.ret_rules) out.ret_rules.push_back(r);
    for (const auto& r : b.call_rules)
        out.call_rules.push_back({r.from + off, r.guard, r.to + off, r.push + soff});
    for (const auto& r : b.int_rules) out.int_rules.push_back({r.from + off, r.guard, r.to + off});
    for (const auto& r : b.ret_rules)
        out.ret_rules.push_back(
            {r.from + off, r.guard, r.pop == kBottom ? kBottom : r.pop + soff, r.to + off});

    // the fresh initial inherits both initials' outgoing rules
    for (const auto& r : a.call_rules)
        if (r.from == a.initial) out.call_rules.push_back({fresh, r.guard, r.to, r.push});
    for (const auto& r : a.int_rules)
        if (r.from == a.initial) out.int_rules.push_back({fresh, r.guard, r.to});
    for (const auto& r : a.ret_rules)
        if (r.from == a.initial) out.ret_rules.push_back({fresh, r.guard, r.pop, r.to});
    for (const auto& r : b.call_rules)
        if (r.from == b.initial)
            out.call_rules.push_back({fresh, r.guard, r.to + off, r.push + soff});
    for (const auto& r : b.int_rules)
        if (r.from == b.initial) out.int_rules.push_back({fresh, r.guard, r.to + off});
    for (const auto& r : b.ret_rules)
        if (r.from == b.initial)
            out.ret_rules.push_back(
                {fresh, r.guard, r.pop == kBottom ? kBottom : r.pop + soff, r.to + off});
    return out;
}

// ── prefix ──────────────────────────────────────────────────────────────────

Nvpa nvpa_prefix(const FirstSymbolPredicate& first, const Nvpa& n) {
    Nvpa out = n;
    Id q0 = out.num_states++;
    Id sentinel = out.num_stack_syms++;  // marks the first symbol's push
    out.accepting.resize(out.num_states, false);
    if (out.acceptance == Nvpa::Acceptance::Parity) {
        std::uint32_t mx = 1;
        for (auto p : out.priority) mx = std::max(mx, p);
        out.priority.resize(out.num_states, fc_odd_priority(mx));
    }
    out.initial = q0;

    if (first.on_call.satisfiable(n.alphabet, Op::Call))
        out.call_rules.push_back({q0, first.on_call, n.initial, sentinel});
    if (first.on_int.satisfiable(n.alphabet, Op::Int))
        out.int_rules.push_back({q0, first.on_int, n.initial});
    if (first.on_ret.satisfiable(n.alphabet, Op::Ret))
        out.ret_rules.push_back({q0, first.on_ret, kBottom, n.initial});

    // below the sentinel the simulated stack is empty: ⊥ rules also fire on it
    std::size_t orig = n.ret_rules.size();
    for (std::size_t i = 0; i < orig; ++i) {
        const auto& r = n.ret_rules[i];
        if (r.pop == kBottom) out.ret_rules.push_back({r.from, r.guard, sentinel, r.to});
    }
    return out;
}

// ── parity → Büchi ──────────────────────────────────────────────────────────

std::uint32_t fc_odd_priority(std::uint32_t n) { return (n % 2 == 1) ? n : n + 1; }

Nvpa parity_to_buchi(const Nvpa& n) {
    if (n.acceptance == Nvpa::Acceptance::Buchi) return n;
    std::vector<std::uint32_t> evens;
    {
        std::set<std::uint32_t> ps(n.priority.begin(), n.priority.end());
        std::uint32_t mx = ps.empty() ? 0 : *ps.rbegin();
        for (std::uint32_t p = 0; p <= mx; p += 2) evens.push_back(p);
    }
    // states: q (uncommitted) for q < n.num_states, then (q, evens[k])
    Nvpa out;
    out.alphabet = n.alphabet;
    const std::uint32_t base = n.num_states;
    out.num_states = n.num_states * (1 + static_cast<std::uint32_t>(evens.size()));
    out.initial = n.initial;
    out.num_stack_syms = n.num_stack_syms;
    out.acceptance = Nvpa::Acceptance::Buchi;
    out.accepting.assign(out.num_states, false);
    auto committed = [&](Id q, std::size_t k) {
        return base + static_cast<Id>(k) * n.num_states + q;
    };
    for (Id q = 0; q < n.num_states; ++q)
        for (std::size_t k = 0; k < evens.size(); ++k)
            if (n.priority[q] == evens[k]) out.accepting[committed(q, k)] = true;

    // target states reachable from uncommitted q' move: q' itself or any
    // commitment (q', p) with priority(q') >= p
    auto for_targets = [&](Id to, bool from_committed, std::size_t k, auto&& emit) {
        if (!from_committed) {
            emit(to);
            for (std::size_t j = 0; j < evens.size(); ++j)
                if (n.priority[to] >= evens[j]) emit(committed(to, j));
        } else {
            if (n.priority[to] >= evens[k]) emit(committed(to, k));
        }
    };
    for (const auto& r : n.call_rules) {
        for_targets(r.to, false, 0, [&](Id t) { out.call_rules.push_back({r.from, r.guard, t, r.push}); });
        for (std::size_t k = 0; k < evens.size(); ++k)
            for_targets(r.to, true, k, [&](Id t) {
                out.call_rules.push_back({committed(r.from, k), r.guard, t, r.push});
            });
    }
    for (const auto& r : n.int_rules) {
        for_targets(r.to, false, 0, [&](Id t) { out.int_rules.push_back({r.from, r.guard, t}); });
        for (std::size_t k = 0; k < evens.size(); ++k)
            for_targets(r.to, true, k, [&](Id t) {
                out.int_rules.push_back({committed(r.from, k), r.guard, t});
            });
    }
    for (const auto& r : n.ret_rules) {
        for_targets(r.to, false, 0,
                    [&](Id t) { out.ret_rules.push_back({r.from, r.guard, r.pop, t}); });
        for (std::size_t k = 0; k < evens.size(); ++k)
            for_targets(r.to, true, k, [&](Id t) {
                out.ret_rules.push_back({committed(r.from, k), r.guard, r.pop, t});
            });
    }
    return out;
}

// ── widening ────────────────────────────────────────────────────────────────

Nvpa nvpa_widen(const Nvpa& n, const Alphabet& wider,
                const std::vector<std::uint32_t>& new_slot_of_old) {
    Nvpa out = n;
    out.alphabet = wider;
    std::vector<std::uint32_t> old_of_new(wider.arity, kNoId);
    for (std::uint32_t i = 0; i < new_slot_of_old.size(); ++i)
        old_of_new[new_slot_of_old[i]] = i;
    for (auto& r : out.call_rules) r.guard = r.guard.remap(old_of_new, wider.arity);
    for (auto& r : out.int_rules) r.guard = r.guard.remap(old_of_new, wider.arity);
    for (auto& r : out.ret_rules) r.guard = r.guard.remap(old_of_new, wider.arity);
    return out;
}

// ── trim ────────────────────────────────────────────────────────────────────

Nvpa nvpa_trim(const Nvpa& n) {
    // 1. rule-graph reachability from the initial state
    std::vector<std::vector<Id>> fwd(n.num_states), bwd(n.num_states);
    auto add_edge = [&](Id a, Id b) {
        fwd[a].push_back(b);
        bwd[b].push_back(a);
    };
    auto sat = [&](const Guard& g, Op t) { return g.satisfiable(n.alphabet, t); };
    for (const auto& r : n.call_rules)
        if (sat(r.guard, Op::Call)) add_edge(r.from, r.to);
    for (const auto& r : n.int_rules)
        if (sat(r.guard, Op::Int)) add_edge(r.from, r.to);
    for (const auto& r : n.ret_rules)
        if (sat(r.guard, Op::Ret)) add_edge(r.from, r.to);

    auto closure = [&](std::vector<Id> seed, const std::vector<std::vector<Id>>& adj) {
        std::vector<char> mark(n.num_states, 0);
        std::deque<Id> work;
        for (Id s : seed)
            if (!mark[s]) { mark[s] = 1; work.push_back(s); }
        while (!work.empty()) {
            Id v = work.front();
            work.pop_front();
            for (Id w : adj[v])
                if (!mark[w]) { mark[w] = 1; work.push_back(w); }
        }
        return mark;
    };
    auto reach = closure({n.initial}, fwd);
    std::vector<Id> acc_seed;
    for (Id q = 0; q < n.num_states; ++q) {
        bool good = n.acceptance == Nvpa::Acceptance::Buchi ? n.accepting[q]
                                                            : n.priority[q] % 2 == 0;
        if (good) acc_seed.push_back(q);
    }
    auto co = closure(acc_seed, bwd);

    std::vector<char> keep(n.num_states, 0);
    for (Id q = 0; q < n.num_states; ++q) keep[q] = reach[q] && co[q];
    keep[n.initial] = 1;

    // 2. partition refinement on outgoing signatures
    std::vector<std::uint32_t> block(n.num_states, 0);
    for (Id q = 0; q < n.num_states; ++q) {
        if (n.acceptance == Nvpa::Acceptance::Buchi)
            block[q] = n.accepting[q] ? 1 : 0;
        else
            block[q] = n.priority[q];
    }
    for (;;) {
        std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> sig_to_block;
        std::vector<std::uint32_t> next(n.num_states, 0);
        for (Id q = 0; q < n.num_states; ++q) {
            std::vector<std::string> parts;
            if (keep[q]) {
                for (const auto& r : n.call_rules)
                    if (r.from == q && keep[r.to] && sat(r.guard, Op::Call))
                        parts.push_back("c" + r.guard.to_string() + ">" +
                                        std::to_string(block[r.to]) + "^" + std::to_string(r.push));
                for (const auto& r : n.int_rules)
                    if (r.from == q && keep[r.to] && sat(r.guard, Op::Int))
                        parts.push_back("i" + r.guard.to_string() + ">" +
                                        std::to_string(block[r.to]));
                for (const auto& r : n.ret_rules)
                    if (r.from == q && keep[r.to] && sat(r.guard, Op::Ret))
                        parts.push_back("r" + r.guard.to_string() + "/" +
                                        std::to_string(r.pop) + ">" + std::to_string(block[r.to]));
                std::sort(parts.begin(), parts.end());
                parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
            }
            std::string sig;
            for (auto& p : parts) sig += p + ";";
            auto key = std::make_pair(block[q], sig);
            auto it = sig_to_block.find(key);
            if (it == sig_to_block.end())
                it = sig_to_block.emplace(key, static_cast<std::uint32_t>(sig_to_block.size()))
                         .first;
            next[q] = it->second;
        }
        if (next == block) break;
        block = std::move(next);
    }

    // representative per block among kept states; re-number densely
    std::map<std::uint32_t, Id> rep;
    std::vector<Id> new_id(n.num_states, kNoId);
    Id next_id = 0;
    auto assign = [&](Id q) {
        auto it = rep.find(block[q]);
        if (it == rep.end()) {
            rep[block[q]] = q;
            new_id[q] = next_id++;
        }
    };
    assign(n.initial);
    for (Id q = 0; q < n.num_states; ++q)
        if (keep[q]) assign(q);
    auto mapped = [&](Id q) { return new_id[rep[block[q]]]; };

    Nvpa out;
    out.alphabet = n.alphabet;
    out.num_states = next_id;
    out.initial = mapped(n.initial);
    out.num_stack_syms = n.num_stack_syms;
    out.acceptance = n.acceptance;
    if (n.acceptance == Nvpa::Acceptance::Buchi)
        out.accepting.assign(out.num_states, false);
    else
        out.priority.assign(out.num_states, 1);
    for (Id q = 0; q < n.num_states; ++q) {
        if (!keep[q] && q != n.initial) continue;
        if (n.acceptance == Nvpa::Acceptance::Buchi)
            out.accepting[mapped(q)] = n.accepting[q];
        else
            out.priority[mapped(q)] = n.priority[q];
    }

    std::set<std::string> seen;
    auto push_unique = [&](const std::string& key, auto&& add) {
        if (seen.insert(key).second) add();
    };
    for (const auto& r : n.call_rules) {
        if (!keep[r.from] || !keep[r.to] || !sat(r.guard, Op::Call)) continue;
        Id f = mapped(r.from), t = mapped(r.to);
        push_unique("c" + std::to_string(f) + "|" + r.guard.to_string() + "|" + std::to_string(t) +
                        "|" + std::to_string(r.push),
                    [&] { out.call_rules.push_back({f, r.guard, t, r.push}); });
    }
    for (const auto& r : n.int_rules) {
        if (!keep[r.from] || !keep[r.to] || !sat(r.guard, Op::Int)) continue;
        Id f = mapped(r.from), t = mapped(r.to);
        push_unique("i" + std::to_string(f) + "|" + r.guard.to_string() + "|" + std::to_string(t),
                    [&] { out.int_rules.push_back({f, r.guard, t}); });
    }
    for (const auto& r : n.ret_rules) {
        if (!keep[r.from] || !keep[r.to] || !sat(r.guard, Op::Ret)) continue;
        Id f = mapped(r.from), t = mapped(r.to);
        push_unique("r" + std::to_string(f) + "|" + r.guard.to_string() + "|" +
                        std::to_string(r.pop) + "|" + std::to_string(t),
                    [&] { out.ret_rules.push_back({f, r.guard, r.pop, t}); });
    }
    return out;
}

// ── emptiness ───────────────────────────────────────────────────────────────

namespace {

struct SumFact {
    Id q, p;
    bool f;
    bool operator<(const SumFact& o) const {
        return std::tie(q, p, f) < std::tie(o.q, o.p, o.f);
    }
};

struct Derivation {
    enum class Kind { Int, CallRet, Compose } kind;
    std::size_t rule_a = 0;  // Int: int rule; CallRet: call rule
    std::size_t rule_b = 0;  // CallRet: ret rule
    bool has_inner = false;
    SumFact inner{};      // CallRet inner summary
    SumFact left{}, right{};  // Compose
};

struct EdgeRef {
    enum class Kind { Int, BotRet, PendCall, Summary } kind;
    std::size_t rule = 0;  // Int/BotRet/PendCall
    SumFact sum{};         // Summary
    Id from = 0, to = 0;
    bool flag = false;
};

struct Saturation {
    const Nvpa& n;
    std::map<SumFact, Derivation> facts;
    std::deque<SumFact> work;

    bool is_acc(Id q) const { return n.accepting[q]; }

    void add(SumFact s, Derivation d) {
        if (facts.count(s)) return;
        facts.emplace(s, std::move(d));
        work.push_back(s);
    }

    void run() {
        // base: internal steps
        for (std::size_t i = 0; i < n.int_rules.size(); ++i) {
            const auto& r = n.int_rules[i];
            if (!r.guard.satisfiable(n.alphabet, Op::Int)) continue;
            Derivation d;
            d.kind = Derivation::Kind::Int;
            d.rule_a = i;
            add({r.from, r.to, is_acc(r.to)}, d);
        }
        // base: empty-inner call/ret pairs
        for (std::size_t ci = 0; ci < n.call_rules.size(); ++ci) {
            const auto& c = n.call_rules[ci];
            if (!c.guard.satisfiable(n.alphabet, Op::Call)) continue;
            for (std::size_t ri = 0; ri < n.ret_rules.size(); ++ri) {
                const auto& r = n.ret_rules[ri];
                if (r.pop != c.push || r.from != c.to) continue;
                if (!r.guard.satisfiable(n.alphabet, Op::Ret)) continue;
                Derivation d;
                d.kind = Derivation::Kind::CallRet;
                d.rule_a = ci;
                d.rule_b = ri;
                add({c.from, r.to, is_acc(c.to) || is_acc(r.to)}, d);
            }
        }
        while (!work.empty()) {
            SumFact s = work.front();
            work.pop_front();
            // wrap: call ... s ... ret
            for (std::size_t ci = 0; ci < n.call_rules.size(); ++ci) {
                const auto& c = n.call_rules[ci];
                if (c.to != s.q || !c.guard.satisfiable(n.alphabet, Op::Call)) continue;
                for (std::size_t ri = 0; ri < n.ret_rules.size(); ++ri) {
                    const auto& r = n.ret_rules[ri];
                    if (r.pop != c.push || r.from != s.p) continue;
                    if (!r.guard.satisfiable(n.alphabet, Op::Ret)) continue;
                    Derivation d;
                    d.kind = Derivation::Kind::CallRet;
                    d.rule_a = ci;
                    d.rule_b = ri;
                    d.has_inner = true;
                    d.inner = s;
                    add({c.from, r.to, is_acc(c.to) || s.f || is_acc(r.to)}, d);
                }
            }
            // compose with existing facts on both sides (snapshot keys first)
            std::vector<SumFact> existing;
            existing.reserve(facts.size());
            for (const auto& [k, v] : facts) existing.push_back(k);
            for (const SumFact& t : existing) {
                if (t.q == s.p) {
                    Derivation d;
                    d.kind = Derivation::Kind::Compose;
                    d.left = s;
                    d.right = t;
                    add({s.q, t.p, s.f || t.f}, d);
                }
                if (t.p == s.q) {
                    Derivation d;
                    d.kind = Derivation::Kind::Compose;
                    d.left = t;
                    d.right = s;
                    add({t.q, s.p, t.f || s.f}, d);
                }
            }
        }
    }
};

struct WordRun {
    std::vector<SymbolTemplate> word;
    std::vector<Id> states;  // state before each position
    std::vector<Id> pushes;  // pushed Γ_N symbol at call positions, else kNoId
};

struct Expander {
    const Nvpa& n;
    const std::map<SumFact, Derivation>& facts;

    SymbolTemplate pick(const Guard& g, Op tag) const {
        auto z = g.least_symbol(n.alphabet, tag);
        if (!z) throw std::logic_error("emptiness: unsatisfiable guard in witness");
        return *z;
    }

    void expand_sum(const SumFact& s, WordRun& out) const {
        const Derivation& d = facts.at(s);
        switch (d.kind) {
            case Derivation::Kind::Int: {
                const auto& r = n.int_rules[d.rule_a];
                out.word.push_back(pick(r.guard, Op::Int));
                out.states.push_back(r.from);
                out.pushes.push_back(kNoId);
                return;
            }
            case Derivation::Kind::CallRet: {
                const auto& c = n.call_rules[d.rule_a];
                const auto& r = n.ret_rules[d.rule_b];
                out.word.push_back(pick(c.guard, Op::Call));
                out.states.push_back(c.from);
                out.pushes.push_back(c.push);
                if (d.has_inner) expand_sum(d.inner, out);
                out.word.push_back(pick(r.guard, Op::Ret));
                out.states.push_back(r.from);
                out.pushes.push_back(kNoId);
                return;
            }
            case Derivation::Kind::Compose:
                expand_sum(d.left, out);
                expand_sum(d.right, out);
                return;
        }
    }

    void expand_edge(const EdgeRef& e, WordRun& out) const {
        switch (e.kind) {
            case EdgeRef::Kind::Int: {
                const auto& r = n.int_rules[e.rule];
                out.word.push_back(pick(r.guard, Op::Int));
                out.states.push_back(r.from);
                out.pushes.push_back(kNoId);
                return;
            }
            case EdgeRef::Kind::BotRet: {
                const auto& r = n.ret_rules[e.rule];
                out.word.push_back(pick(r.guard, Op::Ret));
                out.states.push_back(r.from);
                out.pushes.push_back(kNoId);
                return;
            }
            case EdgeRef::Kind::PendCall: {
                const auto& r = n.call_rules[e.rule];
                out.word.push_back(pick(r.guard, Op::Call));
                out.states.push_back(r.from);
                out.pushes.push_back(r.push);
                return;
            }
            case EdgeRef::Kind::Summary:
                expand_sum(e.sum, out);
                return;
        }
    }
};

}  // namespace

std::optional<EmptinessWitness> nvpa_emptiness(const Nvpa& n) {
    if (n.acceptance != Nvpa::Acceptance::Buchi)
        throw std::invalid_argument("nvpa_emptiness: Büchi acceptance required");
    n.check_valid();

    Saturation sat{n};
    sat.run();

    // edge lists
    std::vector<EdgeRef> level_edges;  // int, ⊥-ret, summaries (usable at level 0)
    std::vector<EdgeRef> climb_edges;  // int, summaries, pending calls
    for (std::size_t i = 0; i < n.int_rules.size(); ++i) {
        const auto& r = n.int_rules[i];
        if (!r.guard.satisfiable(n.alphabet, Op::Int)) continue;
        EdgeRef e{EdgeRef::Kind::Int, i, {}, r.from, r.to, n.accepting[r.to]};
        level_edges.push_back(e);
        climb_edges.push_back(e);
    }
    for (std::size_t i = 0; i < n.ret_rules.size(); ++i) {
        const auto& r = n.ret_rules[i];
        if (r.pop != kBottom || !r.guard.satisfiable(n.alphabet, Op::Ret)) continue;
        level_edges.push_back({EdgeRef::Kind::BotRet, i, {}, r.from, r.to, n.accepting[r.to]});
    }
    for (std::size_t i = 0; i < n.call_rules.size(); ++i) {
        const auto& r = n.call_rules[i];
        if (!r.guard.satisfiable(n.alphabet, Op::Call)) continue;
        climb_edges.push_back({EdgeRef::Kind::PendCall, i, {}, r.from, r.to, n.accepting[r.to]});
    }
    for (const auto& [s, d] : sat.facts) {
        EdgeRef e{EdgeRef::Kind::Summary, 0, s, s.q, s.p, s.f};
        level_edges.push_back(e);
        climb_edges.push_back(e);
    }

    auto post_star = [&](const std::vector<char>& seed, const std::vector<EdgeRef>& edges) {
        std::vector<char> mark = seed;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : edges)
                if (mark[e.from] && !mark[e.to]) {
                    mark[e.to] = 1;
                    changed = true;
                }
        }
        return mark;
    };
    std::vector<char> init(n.num_states, 0);
    init[n.initial] = 1;
    auto r0 = post_star(init, level_edges);
    auto r1 = post_star(r0, climb_edges);

    // find a flagged edge inside an SCC of the restricted edge set
    auto find_cycle = [&](const std::vector<char>& region, const std::vector<EdgeRef>& edges)
        -> std::optional<std::pair<EdgeRef, std::vector<EdgeRef>>> {
        std::vector<std::vector<std::uint32_t>> adj(n.num_states);
        for (const auto& e : edges)
            if (region[e.from] && region[e.to]) adj[e.from].push_back(e.to);
        std::vector<std::uint32_t> nodes;
        for (Id q = 0; q < n.num_states; ++q)
            if (region[q]) nodes.push_back(q);
        SccUtil util{adj};
        auto sccs = util.sccs_of(nodes);
        std::vector<std::uint32_t> scc_of(n.num_states, kNoId);
        for (std::uint32_t i = 0; i < sccs.size(); ++i)
            for (auto v : sccs[i]) scc_of[v] = i;
        for (const auto& e : edges) {
            if (!e.flag || !region[e.from] || !region[e.to]) continue;
            if (scc_of[e.from] != scc_of[e.to] || scc_of[e.from] == kNoId) continue;
            // self-contained: path e.to -> e.from within the SCC
            std::vector<EdgeRef> back;
            if (e.to != e.from) {
                // BFS over `edges` restricted to this SCC
                std::map<Id, std::size_t> parent_edge;
                std::deque<Id> bfs{e.to};
                std::set<Id> seen{e.to};
                bool found = false;
                while (!bfs.empty() && !found) {
                    Id v = bfs.front();
                    bfs.pop_front();
                    for (std::size_t k = 0; k < edges.size(); ++k) {
                        const auto& g = edges[k];
                        if (g.from != v || scc_of[g.to] != scc_of[e.from]) continue;
                        if (seen.count(g.to)) continue;
                        seen.insert(g.to);
                        parent_edge[g.to] = k;
                        if (g.to == e.from) { found = true; break; }
                        bfs.push_back(g.to);
                    }
                }
                if (!found) continue;  // flag edge not on a genuine cycle
                for (Id v = e.from; v != e.to;) {
                    const auto& g = edges[parent_edge[v]];
                    back.push_back(g);
                    v = g.from;
                }
                std::reverse(back.begin(), back.end());
            }
            return std::make_pair(e, back);
        }
        return std::nullopt;
    };

    // shortest edge path from the initial state to `target` over `edges`
    // within `region`
    auto find_path = [&](Id target, const std::vector<EdgeRef>& edges,
                         const std::vector<char>& region) {
        std::vector<EdgeRef> path;
        if (target == n.initial) return path;
        std::map<Id, std::size_t> parent_edge;
        std::deque<Id> bfs{n.initial};
        std::set<Id> seen{n.initial};
        while (!bfs.empty()) {
            Id v = bfs.front();
            bfs.pop_front();
            for (std::size_t k = 0; k < edges.size(); ++k) {
                const auto& g = edges[k];
                if (g.from != v || !region[g.to] || seen.count(g.to)) continue;
                seen.insert(g.to);
                parent_edge[g.to] = k;
                if (g.to == target) goto done;
                bfs.push_back(g.to);
            }
        }
    done:
        if (!seen.count(target)) throw std::logic_error("emptiness: target unreachable");
        for (Id v = target; v != n.initial;) {
            const auto& g = edges[parent_edge[v]];
            path.push_back(g);
            v = g.from;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    Expander ex{n, sat.facts};
    auto assemble = [&](const std::vector<EdgeRef>& prefix_edges,
                        const std::vector<EdgeRef>& cycle_edges) {
        WordRun pre, per;
        for (const auto& e : prefix_edges) ex.expand_edge(e, pre);
        for (const auto& e : cycle_edges) ex.expand_edge(e, per);
        EmptinessWitness w;
        w.word.word.prefix = std::move(pre.word);
        w.word.word.period = std::move(per.word);
        w.run.states_prefix = std::move(pre.states);
        w.run.states_period = std::move(per.states);
        w.run.push_prefix = std::move(pre.pushes);
        w.run.push_period = std::move(per.pushes);
        return w;
    };

    // level-0 cycles first (stack-neutral periods), then climbing cycles
    if (auto c = find_cycle(r0, level_edges)) {
        auto prefix = find_path(c->first.from, level_edges, r0);
        std::vector<EdgeRef> cyc{c->first};
        cyc.insert(cyc.end(), c->second.begin(), c->second.end());
        return assemble(prefix, cyc);
    }
    if (auto c = find_cycle(r1, climb_edges)) {
        // prefix: level edges to some r0 state, then climb edges onward; a
        // single BFS over the union with r0-gating of ⊥-returns
        std::vector<EdgeRef> combined;
        for (const auto& e : level_edges)
            if (r0[e.from]) combined.push_back(e);  // ⊥-rets only from r0 area
        for (const auto& e : climb_edges) combined.push_back(e);
        auto prefix = find_path(c->first.from, combined, r1);
        std::vector<EdgeRef> cyc{c->first};
        cyc.insert(cyc.end(), c->second.begin(), c->second.end());
        return assemble(prefix, cyc);
    }
    return std::nullopt;
}

// ── dump ────────────────────────────────────────────────────────────────────

std::string nvpa_dump(const Nvpa& n) {
    std::ostringstream os;
    os << "nvpa arity=" << n.alphabet.arity << " states=" << n.num_states
       << " init=q" << n.initial << " stack=" << n.num_stack_syms << " acceptance="
       << (n.acceptance == Nvpa::Acceptance::Buchi ? "buchi" : "parity") << "\n";
    if (n.acceptance == Nvpa::Acceptance::Buchi) {
        os << "accepting:";
        for (Id q = 0; q < n.num_states; ++q)
            if (n.accepting[q]) os << " q" << q;
        os << "\n";
    } else {
        os << "priority:";
        for (Id q = 0; q < n.num_states; ++q) os << " q" << q << ":" << n.priority[q];
        os << "\n";
    }
    std::vector<std::string> lines;
    for (const auto& r : n.call_rules) {
        std::ostringstream l;
        l << "call q" << r.from << " --[" << r.guard.to_string() << "]--> q" << r.to << " push g"
          << r.push;
        lines.push_back(l.str());
    }
    for (const auto& r : n.int_rules) {
        std::ostringstream l;
        l << "int q" << r.from << " --[" << r.guard.to_string() << "]--> q" << r.to;
        lines.push_back(l.str());
    }
    for (const auto& r : n.ret_rules) {
        std::ostringstream l;
        l << "ret q" << r.from << " --[" << r.guard.to_string() << "]-- pop ";
        if (r.pop == kBottom)
            l << "bot";
        else
            l << "g" << r.pop;
        l << " --> q" << r.to;
        lines.push_back(l.str());
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << l << "\n";
    return os.str();
}

}  // namespace stackhyper
