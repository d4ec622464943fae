// ============================================================================
// stackhyper/bplus.hpp — positive Boolean transition formulas
// ============================================================================
//
// B+(Q × {→, ⤳}) extended with symbol-predicate atoms, so one formula per
// (state, tag) represents the whole family ζ ↦ δ(q, ζ): predicate atoms
// partially evaluate to constants at a concrete symbol and the residue is a
// plain positive formula over moves.
//
// dual() swaps ∧/∨ and true/false, leaves move atoms fixed, and complements
// predicate sets within their component universe — pointwise this is exactly
// the Appendix-C dual of every specialization.
//
// Nodes are hash-consed per arena; formulas are ids into the arena.
//
// ============================================================================

#ifndef STACKHYPER_BPLUS_HPP
#define STACKHYPER_BPLUS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "stackhyper/symbols.hpp"

namespace stackhyper {

enum class Move : std::uint8_t { Step = 0, Jump = 1 };  // → and ⤳

enum class BKind : std::uint8_t { True, False, MoveAtom, SymState, SymStack, And, Or };

using BRef = std::uint32_t;

struct BNode {
    BKind kind{};
    Id state = kNoId;          // MoveAtom
    Move move = Move::Step;    // MoveAtom
    std::uint32_t comp = 0;    // Sym*: 0-based slot (component i+1)
    IdSet set;                 // Sym*
    std::vector<BRef> kids;    // And / Or

    bool operator==(const BNode& o) const {
        return kind == o.kind && state == o.state && move == o.move && comp == o.comp &&
               set == o.set && kids == o.kids;
    }
};

class BArena {
public:
    BRef tru() { return intern({BKind::True}); }
    BRef fls() { return intern({BKind::False}); }
    BRef move_atom(Id state, Move m);
    BRef sym_state(std::uint32_t comp, IdSet set);
    BRef sym_stack(std::uint32_t comp, IdSet set);
    // n-ary with constant folding and flattening
    BRef conj(std::vector<BRef> kids);
    BRef disj(std::vector<BRef> kids);

    const BNode& node(BRef r) const { return nodes_.at(r); }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    BRef intern(BNode n);
    std::vector<BNode> nodes_;
    struct Hash {
        std::size_t operator()(const BNode& n) const noexcept;
    };
    std::unordered_map<BNode, BRef, Hash> intern_;
};

// ── Queries and transformations ─────────────────────────────────────────────

// Atoms (state, move) that appear in the formula.
void collect_move_atoms(const BArena& a, BRef f, std::vector<std::pair<Id, Move>>& out);
bool has_jump_atom(const BArena& a, BRef f);
bool has_sym_atom(const BArena& a, BRef f);

// Monotone evaluation with predicate atoms resolved against z (may be null
// when the formula has no predicate atoms) and move atoms true exactly on
// `chosen`.
bool eval_bplus(const BArena& a, BRef f, const SymbolTemplate* z,
                const std::vector<std::pair<Id, Move>>& chosen);

// Partial evaluation of predicate atoms at a concrete symbol.
BRef specialize(BArena& a, BRef f, const SymbolTemplate& z);

// Appendix-C dual; involution.  tag gives the stack-component universe.
BRef dual(BArena& a, BRef f, const Alphabet& al, Op tag);

// Copy f from `src` into `dst`, adding `state_offset` to move-atom states
// and re-indexing predicate components through old_slot_of_new⁻¹ (slot map
// new_slot_of_old: for each old slot, its slot in the widened alphabet).
BRef transplant(const BArena& src, BRef f, BArena& dst, Id state_offset,
                const std::vector<std::uint32_t>& new_slot_of_old);

// Rewrites every move atom through fn (may return a whole formula).
template <typename Fn>
BRef map_move_atoms(const BArena& src, BRef f, BArena& dst, Fn&& fn);

// DNF: each term is (guard over symbol components, set of move atoms).
// Terms whose guard is unsatisfiable for the tag are dropped.
struct DnfTerm {
    Guard guard;
    std::vector<std::pair<Id, Move>> moves;  // sorted, unique
};
std::vector<DnfTerm> dnf(const BArena& a, BRef f, const Alphabet& al, Op tag,
                         std::size_t term_cap);

// Prefix-notation rendering for dumps.
std::string bplus_to_string(const BArena& a, BRef f);

// ── template impl ───────────────────────────────────────────────────────────

template <typename Fn>
BRef map_move_atoms(const BArena& src, BRef f, BArena& dst, Fn&& fn) {
    const BNode& n = src.node(f);
    switch (n.kind) {
        case BKind::True: return dst.tru();
        case BKind::False: return dst.fls();
        case BKind::SymState: return dst.sym_state(n.comp, n.set);
        case BKind::SymStack: return dst.sym_stack(n.comp, n.set);
        case BKind::MoveAtom: return fn(n.state, n.move);
        case BKind::And:
        case BKind::Or: {
            std::vector<BRef> kids;
            kids.reserve(n.kids.size());
            for (BRef k : n.kids) kids.push_back(map_move_atoms(src, k, dst, fn));
            return n.kind == BKind::And ? dst.conj(std::move(kids)) : dst.disj(std::move(kids));
        }
    }
    return dst.fls();
}

}  // namespace stackhyper

#endif  // STACKHYPER_BPLUS_HPP
