// ============================================================================
// parity_game.cpp — Zielonka recursion with strategy certificates
// ============================================================================

#include "stackhyper/parity_game.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stackhyper {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Solver {
    const ParityGame& g;
    std::vector<std::vector<std::uint32_t>> pred;
    std::vector<std::uint8_t> winner;
    std::vector<std::uint32_t> strategy;

    explicit Solver(const ParityGame& game) : g(game) {
        pred.resize(g.size());
        for (std::uint32_t v = 0; v < g.size(); ++v)
            for (std::uint32_t w : g.succ[v]) pred[w].push_back(v);
        winner.assign(g.size(), 0);
        strategy.assign(g.size(), kNone);
    }

    // Attractor of player pl to `target` within `sub`; records strategy edges
    // for pl on newly attracted pl-nodes and on target pl-nodes that can stay
    // in the attractor.
    std::vector<std::uint32_t> attract(const std::vector<char>& sub, std::vector<char>& in_attr,
                                       std::vector<std::uint32_t>& strat, std::uint8_t pl,
                                       const std::vector<std::uint32_t>& target) {
        std::vector<std::uint32_t> order(target.begin(), target.end());
        std::vector<std::uint32_t> degree(g.size(), 0);
        for (std::uint32_t v = 0; v < g.size(); ++v) {
            if (!sub[v]) continue;
            std::uint32_t d = 0;
            for (std::uint32_t w : g.succ[v])
                if (sub[w]) ++d;
            degree[v] = d;
        }
        for (std::uint32_t t : target) in_attr[t] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::uint32_t v = order[i];
            for (std::uint32_t u : pred[v]) {
                if (!sub[u] || in_attr[u]) continue;
                if (g.owner[u] == pl) {
                    in_attr[u] = 1;
                    strat[u] = v;
                    order.push_back(u);
                } else {
                    if (degree[u] > 0) --degree[u];
                    if (degree[u] == 0) {
                        in_attr[u] = 1;
                        order.push_back(u);
                    }
                }
            }
        }
        return order;
    }

    // Core recursion over the subgame indicated by `sub` (node mask).
    // Writes winner[] and strategy[] for nodes of the subgame.
    void solve(std::vector<char> sub, std::size_t count) {
        if (count == 0) return;
        std::uint32_t d = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t v = 0; v < g.size(); ++v)
            if (sub[v]) d = std::min(d, g.priority[v]);
        std::uint8_t pl = static_cast<std::uint8_t>(d % 2);

        std::vector<std::uint32_t> top;
        for (std::uint32_t v = 0; v < g.size(); ++v)
            if (sub[v] && g.priority[v] == d) top.push_back(v);

        std::vector<char> in_a(g.size(), 0);
        std::vector<std::uint32_t> strat_a(g.size(), kNone);
        auto a_nodes = attract(sub, in_a, strat_a, pl, top);

        // solve G \ A
        std::vector<char> rest = sub;
        std::size_t rest_count = count;
        for (std::uint32_t v : a_nodes) {
            rest[v] = 0;
            --rest_count;
        }
        solve(rest, rest_count);

        bool opponent_empty = true;
        for (std::uint32_t v = 0; v < g.size(); ++v)
            if (rest[v] && winner[v] != pl) { opponent_empty = false; break; }

        if (opponent_empty) {
            // pl wins everywhere in sub: attractor strategy on A, subgame
            // strategy elsewhere; top nodes of pl pick any successor in sub
            for (std::uint32_t v : a_nodes) {
                winner[v] = pl;
                if (g.owner[v] == pl) {
                    if (strat_a[v] != kNone) {
                        strategy[v] = strat_a[v];
                    } else {
                        strategy[v] = kNone;
                        for (std::uint32_t w : g.succ[v])
                            if (sub[w]) { strategy[v] = w; break; }
                    }
                }
            }
            return;
        }

        // opponent's winning set in the subgame, with its attractor in sub
        std::uint8_t op = static_cast<std::uint8_t>(1 - pl);
        std::vector<std::uint32_t> opp_set;
        for (std::uint32_t v = 0; v < g.size(); ++v)
            if (rest[v] && winner[v] == op) opp_set.push_back(v);
        std::vector<char> in_b(g.size(), 0);
        std::vector<std::uint32_t> strat_b(g.size(), kNone);
        auto b_nodes = attract(sub, in_b, strat_b, op, opp_set);

        for (std::uint32_t v : b_nodes) {
            winner[v] = op;
            if (g.owner[v] == op && strat_b[v] != kNone) strategy[v] = strat_b[v];
            // nodes already solved inside opp_set keep their subgame strategy
        }
        std::vector<char> rem = sub;
        std::size_t rem_count = count;
        for (std::uint32_t v : b_nodes) {
            rem[v] = 0;
            --rem_count;
        }
        solve(rem, rem_count);
    }
};

// No cycle in `edges` restricted to `nodes` may have an odd minimum priority
// when checking Even's region (and dually for Odd).  Classic recursive SCC
// filter.
struct CycleCheck {
    const ParityGame& g;
    const std::vector<std::vector<std::uint32_t>>& adj;

    // returns true iff the subgraph on `nodes` has a cycle whose minimum
    // priority has parity `bad_parity`
    bool has_bad_cycle(std::vector<std::uint32_t> nodes, std::uint8_t bad_parity) {
        if (nodes.empty()) return false;
        // Tarjan SCC on the induced subgraph
        std::vector<char> in(g.size(), 0);
        for (auto v : nodes) in[v] = 1;
        std::vector<int> index(g.size(), -1), low(g.size(), 0);
        std::vector<char> on_stack(g.size(), 0);
        std::vector<std::uint32_t> stack;
        std::vector<std::vector<std::uint32_t>> sccs;
        int next_index = 0;

        struct Frame { std::uint32_t v; std::size_t ei; };
        for (auto root : nodes) {
            if (index[root] != -1) continue;
            std::vector<Frame> call{{root, 0}};
            index[root] = low[root] = next_index++;
            stack.push_back(root);
            on_stack[root] = 1;
            while (!call.empty()) {
                auto& fr = call.back();
                if (fr.ei < adj[fr.v].size()) {
                    std::uint32_t w = adj[fr.v][fr.ei++];
                    if (!in[w]) continue;
                    if (index[w] == -1) {
                        index[w] = low[w] = next_index++;
                        stack.push_back(w);
                        on_stack[w] = 1;
                        call.push_back({w, 0});
                    } else if (on_stack[w]) {
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
                            on_stack[w] = 0;
                            scc.push_back(w);
                            if (w == v) break;
                        }
                        sccs.push_back(std::move(scc));
                    }
                }
            }
        }
        for (auto& scc : sccs) {
            bool nontrivial = scc.size() > 1;
            if (!nontrivial) {
                std::uint32_t v = scc[0];
                for (std::uint32_t w : adj[v])
                    if (w == v && in[v]) nontrivial = true;
            }
            if (!nontrivial) continue;
            std::uint32_t mn = std::numeric_limits<std::uint32_t>::max();
            for (auto v : scc) mn = std::min(mn, g.priority[v]);
            if (mn % 2 == bad_parity) return true;
            // strip minimum-priority nodes, recurse
            std::vector<std::uint32_t> rest;
            for (auto v : scc)
                if (g.priority[v] != mn) rest.push_back(v);
            if (has_bad_cycle(std::move(rest), bad_parity)) return true;
        }
        return false;
    }
};

}  // namespace

GameSolution solve_parity_game(const ParityGame& g) {
    for (std::uint32_t v = 0; v < g.size(); ++v)
        if (g.succ[v].empty()) throw std::logic_error("parity game: dead end node");

    Solver s(g);
    std::vector<char> all(g.size(), 1);
    s.solve(all, g.size());

    // certificate: in each player's region, fixing that player's strategy
    // must leave no cycle whose minimum priority favors the opponent
    for (std::uint8_t pl : {std::uint8_t{0}, std::uint8_t{1}}) {
        std::vector<std::vector<std::uint32_t>> adj(g.size());
        std::vector<std::uint32_t> region;
        for (std::uint32_t v = 0; v < g.size(); ++v) {
            if (s.winner[v] != pl) continue;
            region.push_back(v);
            if (g.owner[v] == pl) {
                if (s.strategy[v] == kNone)
                    throw std::logic_error("parity game: missing strategy in winning region");
                adj[v].push_back(s.strategy[v]);
            } else {
                for (std::uint32_t w : g.succ[v])
                    if (s.winner[w] == pl) adj[v].push_back(w);
            }
        }
        CycleCheck check{g, adj};
        if (check.has_bad_cycle(region, static_cast<std::uint8_t>(1 - pl)))
            throw std::logic_error("parity game: strategy certificate failed");
    }

    return GameSolution{std::move(s.winner), std::move(s.strategy)};
}

}  // namespace stackhyper
