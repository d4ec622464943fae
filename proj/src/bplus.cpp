// ============================================================================
// bplus.cpp — positive Boolean formulas: construction, dual, DNF
// ============================================================================

#include "stackhyper/bplus.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace stackhyper {

std::size_t BArena::Hash::operator()(const BNode& n) const noexcept {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    mix(n.state);
    mix(static_cast<std::size_t>(n.move));
    mix(n.comp);
    for (Id x : n.set) mix(x);
    for (BRef k : n.kids) mix(k);
    return h;
}

BRef BArena::intern(BNode n) {
    auto it = intern_.find(n);
    if (it != intern_.end()) return it->second;
    BRef r = static_cast<BRef>(nodes_.size());
    nodes_.push_back(n);
    intern_.emplace(std::move(n), r);
    return r;
}

BRef BArena::move_atom(Id state, Move m) {
    BNode n;
    n.kind = BKind::MoveAtom;
    n.state = state;
    n.move = m;
    return intern(std::move(n));
}

BRef BArena::sym_state(std::uint32_t comp, IdSet set) {
    BNode n;
    n.kind = BKind::SymState;
    n.comp = comp;
    n.set = std::move(set);
    return intern(std::move(n));
}

BRef BArena::sym_stack(std::uint32_t comp, IdSet set) {
    BNode n;
    n.kind = BKind::SymStack;
    n.comp = comp;
    n.set = std::move(set);
    return intern(std::move(n));
}

BRef BArena::conj(std::vector<BRef> kids) {
    std::vector<BRef> flat;
    for (BRef k : kids) {
        const BNode& n = node(k);
        if (n.kind == BKind::True) continue;
        if (n.kind == BKind::False) return fls();
        if (n.kind == BKind::And) {
            flat.insert(flat.end(), n.kids.begin(), n.kids.end());
        } else {
            flat.push_back(k);
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return tru();
    if (flat.size() == 1) return flat[0];
    BNode n;
    n.kind = BKind::And;
    n.kids = std::move(flat);
    return intern(std::move(n));
}

BRef BArena::disj(std::vector<BRef> kids) {
    std::vector<BRef> flat;
    for (BRef k : kids) {
        const BNode& n = node(k);
        if (n.kind == BKind::False) continue;
        if (n.kind == BKind::True) return tru();
        if (n.kind == BKind::Or) {
            flat.insert(flat.end(), n.kids.begin(), n.kids.end());
        } else {
            flat.push_back(k);
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return fls();
    if (flat.size() == 1) return flat[0];
    BNode n;
    n.kind = BKind::Or;
    n.kids = std::move(flat);
    return intern(std::move(n));
}

// ── queries ─────────────────────────────────────────────────────────────────

void collect_move_atoms(const BArena& a, BRef f, std::vector<std::pair<Id, Move>>& out) {
    const BNode& n = a.node(f);
    if (n.kind == BKind::MoveAtom) {
        out.push_back({n.state, n.move});
        return;
    }
    if (n.kind == BKind::And || n.kind == BKind::Or)
        for (BRef k : n.kids) collect_move_atoms(a, k, out);
}

bool has_jump_atom(const BArena& a, BRef f) {
    const BNode& n = a.node(f);
    if (n.kind == BKind::MoveAtom) return n.move == Move::Jump;
    if (n.kind == BKind::And || n.kind == BKind::Or)
        for (BRef k : n.kids)
            if (has_jump_atom(a, k)) return true;
    return false;
}

bool has_sym_atom(const BArena& a, BRef f) {
    const BNode& n = a.node(f);
    if (n.kind == BKind::SymState || n.kind == BKind::SymStack) return true;
    if (n.kind == BKind::And || n.kind == BKind::Or)
        for (BRef k : n.kids)
            if (has_sym_atom(a, k)) return true;
    return false;
}

bool eval_bplus(const BArena& a, BRef f, const SymbolTemplate* z,
                const std::vector<std::pair<Id, Move>>& chosen) {
    const BNode& n = a.node(f);
    switch (n.kind) {
        case BKind::True: return true;
        case BKind::False: return false;
        case BKind::MoveAtom:
            return std::find(chosen.begin(), chosen.end(), std::make_pair(n.state, n.move)) !=
                   chosen.end();
        case BKind::SymState:
            if (!z) throw std::invalid_argument("eval_bplus: predicate atom without a symbol");
            return idset_contains(n.set, z->states.at(n.comp));
        case BKind::SymStack:
            if (!z) throw std::invalid_argument("eval_bplus: predicate atom without a symbol");
            return idset_contains(n.set, z->stacks.at(n.comp));
        case BKind::And:
            for (BRef k : n.kids)
                if (!eval_bplus(a, k, z, chosen)) return false;
            return true;
        case BKind::Or:
            for (BRef k : n.kids)
                if (eval_bplus(a, k, z, chosen)) return true;
            return false;
    }
    return false;
}

BRef specialize(BArena& a, BRef f, const SymbolTemplate& z) {
    const BNode n = a.node(f);
    switch (n.kind) {
        case BKind::True:
        case BKind::False:
        case BKind::MoveAtom:
            return f;
        case BKind::SymState:
            return idset_contains(n.set, z.states.at(n.comp)) ? a.tru() : a.fls();
        case BKind::SymStack:
            return idset_contains(n.set, z.stacks.at(n.comp)) ? a.tru() : a.fls();
        case BKind::And:
        case BKind::Or: {
            std::vector<BRef> kids;
            kids.reserve(n.kids.size());
            for (BRef k : n.kids) kids.push_back(specialize(a, k, z));
            return n.kind == BKind::And ? a.conj(std::move(kids)) : a.disj(std::move(kids));
        }
    }
    return a.fls();
}

BRef dual(BArena& a, BRef f, const Alphabet& al, Op tag) {
    const BNode n = a.node(f);
    switch (n.kind) {
        case BKind::True: return a.fls();
        case BKind::False: return a.tru();
        case BKind::MoveAtom: return f;
        case BKind::SymState: return a.sym_state(n.comp, idset_complement(n.set, al.num_states));
        case BKind::SymStack: {
            if (tag == Op::Int)
                throw std::logic_error("dual: stack predicate on an int-tag formula");
            return a.sym_stack(n.comp, idset_complement(n.set, al.num_stack));
        }
        case BKind::And:
        case BKind::Or: {
            std::vector<BRef> kids;
            kids.reserve(n.kids.size());
            for (BRef k : n.kids) kids.push_back(dual(a, k, al, tag));
            return n.kind == BKind::And ? a.disj(std::move(kids)) : a.conj(std::move(kids));
        }
    }
    return a.fls();
}

BRef transplant(const BArena& src, BRef f, BArena& dst, Id state_offset,
                const std::vector<std::uint32_t>& new_slot_of_old) {
    const BNode& n = src.node(f);
    switch (n.kind) {
        case BKind::True: return dst.tru();
        case BKind::False: return dst.fls();
        case BKind::MoveAtom: return dst.move_atom(n.state + state_offset, n.move);
        case BKind::SymState: return dst.sym_state(new_slot_of_old.at(n.comp), n.set);
        case BKind::SymStack: return dst.sym_stack(new_slot_of_old.at(n.comp), n.set);
        case BKind::And:
        case BKind::Or: {
            std::vector<BRef> kids;
            kids.reserve(n.kids.size());
            for (BRef k : n.kids)
                kids.push_back(transplant(src, k, dst, state_offset, new_slot_of_old));
            return n.kind == BKind::And ? dst.conj(std::move(kids)) : dst.disj(std::move(kids));
        }
    }
    return dst.fls();
}

// ── DNF ─────────────────────────────────────────────────────────────────────

namespace {

struct RawTerm {
    Guard guard;
    std::vector<std::pair<Id, Move>> moves;
};

void dedupe_moves(std::vector<std::pair<Id, Move>>& m) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
}

std::vector<RawTerm> dnf_rec(const BArena& a, BRef f, const Alphabet& al, Op tag,
                             std::size_t cap) {
    const BNode& n = a.node(f);
    switch (n.kind) {
        case BKind::True: return {RawTerm{Guard::unconstrained(al.arity), {}}};
        case BKind::False: return {};
        case BKind::MoveAtom:
            return {RawTerm{Guard::unconstrained(al.arity), {{n.state, n.move}}}};
        case BKind::SymState: {
            Guard g = Guard::unconstrained(al.arity);
            g.state_sets[n.comp] = n.set;
            if (!g.satisfiable(al, tag)) return {};
            return {RawTerm{std::move(g), {}}};
        }
        case BKind::SymStack: {
            Guard g = Guard::unconstrained(al.arity);
            g.stack_sets[n.comp] = n.set;
            if (!g.satisfiable(al, tag)) return {};
            return {RawTerm{std::move(g), {}}};
        }
        case BKind::Or: {
            std::vector<RawTerm> out;
            for (BRef k : n.kids) {
                auto sub = dnf_rec(a, k, al, tag, cap);
                out.insert(out.end(), sub.begin(), sub.end());
                if (out.size() > cap) throw std::length_error("dnf: term cap exceeded");
            }
            return out;
        }
        case BKind::And: {
            std::vector<RawTerm> acc = {RawTerm{Guard::unconstrained(al.arity), {}}};
            for (BRef k : n.kids) {
                auto sub = dnf_rec(a, k, al, tag, cap);
                std::vector<RawTerm> next;
                for (const auto& t1 : acc) {
                    for (const auto& t2 : sub) {
                        auto g = t1.guard.conjoin(t2.guard);
                        if (!g || !g->satisfiable(al, tag)) continue;
                        RawTerm t;
                        t.guard = std::move(*g);
                        t.moves = t1.moves;
                        t.moves.insert(t.moves.end(), t2.moves.begin(), t2.moves.end());
                        next.push_back(std::move(t));
                        if (next.size() > cap) throw std::length_error("dnf: term cap exceeded");
                    }
                }
                acc = std::move(next);
                if (acc.empty()) break;
            }
            return acc;
        }
    }
    return {};
}

}  // namespace

std::vector<DnfTerm> dnf(const BArena& a, BRef f, const Alphabet& al, Op tag,
                         std::size_t term_cap) {
    auto raw = dnf_rec(a, f, al, tag, term_cap);
    std::vector<DnfTerm> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
        DnfTerm d;
        d.guard = std::move(t.guard);
        d.moves = std::move(t.moves);
        dedupe_moves(d.moves);
        out.push_back(std::move(d));
    }
    // drop exact duplicates
    std::sort(out.begin(), out.end(), [](const DnfTerm& x, const DnfTerm& y) {
        if (!(x.guard == y.guard)) return x.guard.to_string() < y.guard.to_string();
        return x.moves < y.moves;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const DnfTerm& x, const DnfTerm& y) {
                              return x.guard == y.guard && x.moves == y.moves;
                          }),
              out.end());
    return out;
}

std::string bplus_to_string(const BArena& a, BRef f) {
    const BNode& n = a.node(f);
    std::ostringstream os;
    switch (n.kind) {
        case BKind::True: return "true";
        case BKind::False: return "false";
        case BKind::MoveAtom:
            os << "(" << (n.move == Move::Step ? "->" : "~>") << " q" << n.state << ")";
            return os.str();
        case BKind::SymState:
        case BKind::SymStack: {
            os << "(" << (n.kind == BKind::SymState ? "st" : "sk") << (n.comp + 1) << " in {";
            for (std::size_t i = 0; i < n.set.size(); ++i) os << (i ? "," : "") << n.set[i];
            os << "})";
            return os.str();
        }
        case BKind::And:
        case BKind::Or: {
            os << "(" << (n.kind == BKind::And ? "and" : "or");
            for (BRef k : n.kids) os << " " << bplus_to_string(a, k);
            os << ")";
            return os.str();
        }
    }
    return "?";
}

}  // namespace stackhyper
