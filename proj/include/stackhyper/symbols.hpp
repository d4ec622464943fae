// ============================================================================
// stackhyper/symbols.hpp — pushdown alphabets Σ[m], symbols and guards
// ============================================================================
//
// Σ[m] is never enumerated.  A symbol is a structured value (tag + two
// m-vectors); automata transitions carry *guards*, conjunctions of
// per-component membership tests, evaluated against symbols in O(m).
//
//   Σ[m]_call = {call} × S^m × Γ^m
//   Σ[m]_int  = {int}  × S^m × {ε}^m
//   Σ[m]_ret  = {ret}  × S^m × Γ^m
//
// Component indices are 1-based in the math; here vectors are 0-based and
// "component i" with i ≥ 1 lives at slot i-1.  component(ζ, 0) is the
// convention (s_in, undefined) and needs the system's initial state.
//
// ============================================================================

#ifndef STACKHYPER_SYMBOLS_HPP
#define STACKHYPER_SYMBOLS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackhyper/ids.hpp"
#include "stackhyper/lasso.hpp"

namespace stackhyper {

enum class Op : std::uint8_t { Call = 0, Int = 1, Ret = 2 };

const char* op_name(Op o);

// ── Alphabet descriptor ─────────────────────────────────────────────────────
// Arity plus the sizes of the shared component universes (control states and
// stack symbols of the modeled pushdown system).

struct Alphabet {
    std::uint32_t arity = 0;
    std::uint32_t num_states = 0;
    std::uint32_t num_stack = 0;

    bool operator==(const Alphabet& o) const {
        return arity == o.arity && num_states == o.num_states && num_stack == o.num_stack;
    }
    Alphabet widened(std::uint32_t new_arity) const {
        Alphabet a = *this;
        a.arity = new_arity;
        return a;
    }
};

// ── SymbolTemplate ──────────────────────────────────────────────────────────
// One letter of Σ[m].  stacks[i] is kEpsilon exactly when tag == Int.

struct SymbolTemplate {
    Op tag = Op::Int;
    std::vector<Id> states;
    std::vector<Id> stacks;

    std::uint32_t arity() const noexcept { return static_cast<std::uint32_t>(states.size()); }
    bool operator==(const SymbolTemplate& o) const {
        return tag == o.tag && states == o.states && stacks == o.stacks;
    }
    bool operator<(const SymbolTemplate& o) const {
        if (tag != o.tag) return tag < o.tag;
        if (states != o.states) return states < o.states;
        return stacks < o.stacks;
    }
};

// Validated constructors (throw std::invalid_argument on ε-discipline errors).
SymbolTemplate make_symbol(Op tag, std::vector<Id> states, std::vector<Id> stacks);

// ζ + (s, a): append component m+1.  a must be kEpsilon iff tag is Int.
SymbolTemplate extend(const SymbolTemplate& z, Id state, Id stack_sym);

// Component access with the Appendix-style 0 convention: component 0 is
// (s_in, undefined); the stack half of the pair is kNoId there.
std::pair<Id, Id> component(const SymbolTemplate& z, std::uint32_t i, Id initial_state);

// Debug rendering: tag[s1,...,sm][a1,...,am] with ids, or names if given.
std::string symbol_to_string(const SymbolTemplate& z);

// ── Guards ──────────────────────────────────────────────────────────────────
// A guard is a conjunction of membership constraints on components of one
// tag's symbols.  Absent constraint = unconstrained.  Sets are sorted vectors.

using IdSet = std::vector<Id>;  // sorted, unique

bool idset_contains(const IdSet& s, Id x);
IdSet idset_intersect(const IdSet& a, const IdSet& b);
IdSet idset_complement(const IdSet& a, std::uint32_t universe);  // within [0,universe)
IdSet idset_sorted(std::vector<Id> xs);

struct Guard {
    // slot i constrains component i+1; nullopt = unconstrained
    std::vector<std::optional<IdSet>> state_sets;
    std::vector<std::optional<IdSet>> stack_sets;  // meaningful for call/ret only

    static Guard unconstrained(std::uint32_t arity) {
        Guard g;
        g.state_sets.resize(arity);
        g.stack_sets.resize(arity);
        return g;
    }

    std::uint32_t arity() const noexcept { return static_cast<std::uint32_t>(state_sets.size()); }

    bool matches(const SymbolTemplate& z) const;

    // Conjunction; returns nullopt when some component set becomes empty.
    std::optional<Guard> conjoin(const Guard& o) const;

    // True when some symbol of the given tag satisfies the guard.
    bool satisfiable(const Alphabet& a, Op tag) const;

    // Least symbol of the given tag satisfying the guard (for witnesses).
    std::optional<SymbolTemplate> least_symbol(const Alphabet& a, Op tag) const;

    // Re-index components: slot i of the result constrains what old slot
    // mapping[i] constrained (kNoId = unconstrained fresh component).
    Guard remap(const std::vector<std::uint32_t>& old_slot_of_new, std::uint32_t new_arity) const;

    bool operator==(const Guard& o) const {
        return state_sets == o.state_sets && stack_sets == o.stack_sets;
    }

    std::string to_string() const;
};

// ── Path environment encoding (Def. 3) ─────────────────────────────────────
// A trace entry (o, q, a, q') of one path; a is kEpsilon for internal steps.

struct TraceStep {
    Op tag = Op::Int;
    Id src = 0;
    Id stack_sym = kEpsilon;  // pushed (call) or popped (ret) symbol
    Id dst = 0;

    bool operator==(const TraceStep& o) const {
        return tag == o.tag && src == o.src && stack_sym == o.stack_sym && dst == o.dst;
    }
};

using TraceLasso = Lasso<TraceStep>;
using SymbolLasso = Lasso<SymbolTemplate>;
using PatternLasso = Lasso<Op>;

// Positionwise zip of m shape-aligned, tag-aligned traces into a Σ[m] word.
// Throws std::invalid_argument on tag or shape mismatch, and on broken
// per-trace chaining (dst of step i must equal src of step i+1).
SymbolLasso encode_environment(const std::vector<TraceLasso>& traces);

// Componentwise projection, inverse of encode_environment.
TraceLasso project_component(const SymbolLasso& w, std::uint32_t i);

PatternLasso pattern_of_symbols(const SymbolLasso& w);

}  // namespace stackhyper

#endif  // STACKHYPER_SYMBOLS_HPP
