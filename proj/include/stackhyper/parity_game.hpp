// ============================================================================
// stackhyper/parity_game.hpp — Zielonka solver for small min-parity games
// ============================================================================
//
// Player 0 (Even) wins an infinite play iff the minimum priority visited
// infinitely often is even — the mp(σ) convention of the acceptance games
// this project builds.  Games here are total by construction (every node has
// a successor); dead ends arising in subgames are handled by the attractor.
//
// ============================================================================

#ifndef STACKHYPER_PARITY_GAME_HPP
#define STACKHYPER_PARITY_GAME_HPP

#include <cstdint>
#include <vector>

namespace stackhyper {

struct ParityGame {
    std::vector<std::uint8_t> owner;           // 0 = Even, 1 = Odd
    std::vector<std::uint32_t> priority;
    std::vector<std::vector<std::uint32_t>> succ;

    std::size_t size() const noexcept { return owner.size(); }
    std::uint32_t add_node(std::uint8_t own, std::uint32_t prio) {
        owner.push_back(own);
        priority.push_back(prio);
        succ.emplace_back();
        return static_cast<std::uint32_t>(owner.size() - 1);
    }
    void add_edge(std::uint32_t from, std::uint32_t to) { succ[from].push_back(to); }
};

struct GameSolution {
    std::vector<std::uint8_t> winner;            // per node
    std::vector<std::uint32_t> strategy;         // per node: chosen successor for its
                                                 // owner where the owner wins, else -1
};

// Solves the game; verifies internally that the winning strategies admit no
// losing cycle (throws std::logic_error if the certificate check fails).
GameSolution solve_parity_game(const ParityGame& g);

}  // namespace stackhyper

#endif  // STACKHYPER_PARITY_GAME_HPP
