// ============================================================================
// stackhyper/pds.hpp — pushdown systems and stack access patterns
// ============================================================================
//
// P = (S, Γ, s_in, Δ, L) with Δ split into internal, call (push one symbol)
// and return (pop one symbol) transitions.  Configurations carry the stack
// top-first.  All value types are immutable after construction and safe to
// share across threads.
//
// File format (one directive per line, `#` comments):
//
//     states: s0 s1 ...
//     init: s0
//     stack: A B ...
//     props: a b ...            (optional; labels may also introduce props)
//     label s0 { a b }
//     int  s0 -> s1
//     call s0 -> s1 push A
//     ret  s0 pop A -> s1
//
// ============================================================================

#ifndef STACKHYPER_PDS_HPP
#define STACKHYPER_PDS_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "stackhyper/ids.hpp"
#include "stackhyper/lasso.hpp"
#include "stackhyper/symbols.hpp"

namespace stackhyper {

struct PdsError : std::runtime_error {
    explicit PdsError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PushdownSystem {
    NameTable states;
    NameTable stack_syms;
    NameTable props;
    Id initial = kNoId;

    // labeling[s] = sorted proposition ids
    std::vector<IdSet> labeling;

    struct IntTrans { Id from, to; };
    struct CallTrans { Id from, to; Id push; };
    struct RetTrans { Id from; Id pop; Id to; };

    std::vector<IntTrans> trans_int;
    std::vector<CallTrans> trans_call;
    std::vector<RetTrans> trans_ret;

    std::uint32_t num_states() const { return static_cast<std::uint32_t>(states.size()); }
    std::uint32_t num_stack() const { return static_cast<std::uint32_t>(stack_syms.size()); }

    bool has_prop(Id state, Id prop) const { return idset_contains(labeling.at(state), prop); }

    // states whose label set contains the proposition
    IdSet states_with_prop(Id prop) const;

    Alphabet alphabet(std::uint32_t arity) const {
        return Alphabet{arity, num_states(), num_stack()};
    }
};

// ── Configurations and steps ────────────────────────────────────────────────

struct Configuration {
    Id state = 0;
    std::vector<Id> stack;  // top at the front

    bool operator==(const Configuration& o) const { return state == o.state && stack == o.stack; }
    bool operator<(const Configuration& o) const {
        if (state != o.state) return state < o.state;
        return stack < o.stack;
    }
};

// All §3.1 successors of c, sorted deterministically.  Empty when stuck.
std::vector<std::pair<TraceStep, Configuration>> step(const PushdownSystem& p,
                                                      const Configuration& c);

// ── Parsing / printing ──────────────────────────────────────────────────────

PushdownSystem parse_pds(const std::string& text);  // throws PdsError
std::string print_pds(const PushdownSystem& p);

// ── Stack access patterns ───────────────────────────────────────────────────

// §3.3 recursion: ε | int | call u ret | uv.
bool is_well_matched(const std::vector<Op>& w);

// The letter of Def. 1's prefix condition: positions i with w(i) = ret and
// w[:i] well matched.
std::vector<std::size_t> unmatched_return_positions(const std::vector<Op>& w);

// Tag projection of a trace.
PatternLasso pattern_of_trace(const TraceLasso& t);
std::vector<Op> pattern_of_steps(const std::vector<TraceStep>& steps);

// ── Appendix A machinery ────────────────────────────────────────────────────

// Footnote-9 normal form: states know whether the stack is empty; the
// bottommost symbol is pushed annotated.  Builds only the reachable
// (state × flag) product, so already-flat systems keep their size.
PushdownSystem normalize_empty_stack(const PushdownSystem& p);

// ΔP: applies the empty-stack normal form, then adds three new sink states
// q_call, q_int, q_ret with int self-loops, fresh propositions
// new/call/int/ret, and an internal jump q -> q_o for every state q with an
// o-transition.  On systems whose normal form is size-preserving the result
// has exactly three more states.  Throws PdsError when the fresh names
// collide with existing ones.
PushdownSystem delta_transform(const PushdownSystem& p);

}  // namespace stackhyper

#endif  // STACKHYPER_PDS_HPP
