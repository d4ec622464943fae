// ============================================================================
// stackhyper/nvpa.hpp — nondeterministic visibly pushdown Büchi automata
// ============================================================================
//
// N = (Q, q_in, Σ[m], Γ_N, ⊥, δ, Q_F).  Reading a call symbol pushes, an
// internal symbol leaves the stack alone, a return symbol pops — except that
// a return at ⊥ leaves the stack at ⊥ and needs a ⊥-guarded rule.
// Transitions are guarded rules over symbol components; Σ[m] is never
// enumerated.  A parity variant (priority map) exists for pipeline steps and
// is lowered with parity_to_buchi before emptiness.
//
// Emptiness is the summary-graph method: saturate matched-call summaries
// (q ⟿ q′, f) where f records passage through Q_F, combine them with
// internal edges, ⊥-return edges (level 0 only) and pending-call edges, and
// look for a reachable flagged cycle.  Witnesses come out of the summary
// derivations as concrete lassos with their accepting runs.
//
// ============================================================================

#ifndef STACKHYPER_NVPA_HPP
#define STACKHYPER_NVPA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stackhyper/symbols.hpp"

namespace stackhyper {

inline constexpr Id kBottom = static_cast<Id>(-3);  // ⊥ in pop slots

struct Nvpa {
    Alphabet alphabet;
    std::uint32_t num_states = 0;
    Id initial = 0;
    std::uint32_t num_stack_syms = 0;  // Γ_N ids are 0..num_stack_syms-1

    struct CallRule {
        Id from;
        Guard guard;
        Id to;
        Id push;
    };
    struct IntRule {
        Id from;
        Guard guard;
        Id to;
    };
    struct RetRule {
        Id from;
        Guard guard;
        Id pop;  // Γ_N id or kBottom
        Id to;
    };

    std::vector<CallRule> call_rules;
    std::vector<IntRule> int_rules;
    std::vector<RetRule> ret_rules;

    // exactly one acceptance mode
    enum class Acceptance : std::uint8_t { Buchi, Parity };
    Acceptance acceptance = Acceptance::Buchi;
    std::vector<bool> accepting;          // Büchi
    std::vector<std::uint32_t> priority;  // parity (min-even convention)

    std::size_t rule_count() const {
        return call_rules.size() + int_rules.size() + ret_rules.size();
    }
    // size measure used by the Theorem-1 bound assertions
    std::size_t size_measure() const { return num_states + rule_count(); }

    void check_valid() const;  // throws std::logic_error on malformed automata
};

// ── Lasso words and membership ──────────────────────────────────────────────

struct LassoWord {
    SymbolLasso word;
    bool stack_neutral() const;  // period's tag projection well matched

    // #calls − #rets within the period
    long period_net() const;
};

// Exact membership for net(v) ≤ 0 via a finite configuration graph; for
// net(v) > 0 via product with the lasso plus summary emptiness.
bool lasso_member(const Nvpa& n, const LassoWord& w);

// ── Closure operations ──────────────────────────────────────────────────────

// Fresh initial state inheriting both initials' rules; |Q| = |Q1| + |Q2| + 1.
Nvpa nvpa_union(const Nvpa& a, const Nvpa& b);

// { ζ·w | ζ ⊨ guards, w ∈ L(n) } with the first symbol's stack effect
// honored (push on call, ⊥ rule on ret).  `first` holds one guard per tag;
// an unsatisfiable slot excludes that tag.
struct FirstSymbolPredicate {
    Guard on_call;
    Guard on_int;
    Guard on_ret;
    static FirstSymbolPredicate any(const Alphabet& a) {
        return {Guard::unconstrained(a.arity), Guard::unconstrained(a.arity),
                Guard::unconstrained(a.arity)};
    }
};
Nvpa nvpa_prefix(const FirstSymbolPredicate& first, const Nvpa& n);

// Language-preserving parity → Büchi: guess the even priority that is the
// eventual minimum and the point after which nothing smaller occurs.
Nvpa parity_to_buchi(const Nvpa& n);

// Re-index symbol components into a widened alphabet; slot i of the old
// alphabet becomes slot new_slot_of_old[i].
Nvpa nvpa_widen(const Nvpa& n, const Alphabet& wider, const std::vector<std::uint32_t>& new_slot_of_old);

// Drop states that are unreachable in the rule graph or cannot reach an
// accepting state in it (stack-insensitive over-approximation, so the
// language is preserved), then merge states with identical behavior
// signatures.  Keeps the initial state.
Nvpa nvpa_trim(const Nvpa& n);

// ── Emptiness ───────────────────────────────────────────────────────────────

// An accepting run on the witness lasso, position-aligned with the word.
struct NvpaRun {
    std::vector<Id> states_prefix;       // state before reading prefix[i]
    std::vector<Id> states_period;       // state before reading period[i]
    // stack ops are implied by the word's tags and the rules; pushes recorded
    std::vector<Id> push_prefix;         // kNoId when not a call
    std::vector<Id> push_period;
};

struct EmptinessWitness {
    LassoWord word;
    NvpaRun run;
};

// Returns a witness iff L(n) ≠ ∅ (Büchi acceptance required).
std::optional<EmptinessWitness> nvpa_emptiness(const Nvpa& n);

// ── Dump ────────────────────────────────────────────────────────────────────

// Stable text form: header with arity/acceptance, one rule per line.
std::string nvpa_dump(const Nvpa& n);

}  // namespace stackhyper

#endif  // STACKHYPER_NVPA_HPP
