// ============================================================================
// stackhyper/formula.hpp — sHCTL*/sHLTL sentences
// ============================================================================
//
// Two syntactic levels.  Sentences combine basic formulas E ψ with ¬ and ∨;
// cognate formulas ψ are the HyperCTL*-shaped inner layer.  The parser keeps
// surface sugar (&, ->, <->, A, forall, F, G, R) in the tree; desugar()
// rewrites to the core grammar
//
//     θ ::= Eψ | ¬θ | θ ∨ θ          ψ ::= a_π | ¬ψ | ψ∨ψ | Xψ | ψUψ | ∃π.ψ
//
// and freshens duplicate binders so every path variable is bound once.
//
// Concrete syntax (all ASCII): `E`/`A` sentence quantifiers, `exists p.`
// and `forall p.` with maximal scope, atoms `a@p`, operators
// `X U F G R ! & | -> <->`, parentheses, `#` line comments.  Precedence:
// unary > U/R (right assoc) > & > | > -> (right assoc) > <->.
//
// ============================================================================

#ifndef STACKHYPER_FORMULA_HPP
#define STACKHYPER_FORMULA_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stackhyper/ids.hpp"

namespace stackhyper {

enum class FKind : std::uint8_t {
    // cognate core
    Atom,      // prop @ var
    Neg,       // cognate negation
    Or,
    Next,
    Until,
    Exists,    // binds var
    // sentence core
    SentE,     // E ψ  (child is a cognate)
    SentNeg,
    SentOr,
    // surface sugar (both levels where applicable; removed by desugar)
    And,
    Implies,
    Iff,
    Release,   // cognate only
    Finally,   // cognate only
    Globally,  // cognate only
    Forall,    // cognate only, binds var
    SentA,     // A ψ
    SentAnd,
    SentImplies,
    SentIff,
};

const char* fkind_name(FKind k);

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = static_cast<FormulaId>(-1);

struct FormulaNode {
    FKind kind{};
    FormulaId child0 = kNoFormula;
    FormulaId child1 = kNoFormula;
    std::string prop;  // Atom
    std::string var;   // Atom / Exists / Forall

    bool operator==(const FormulaNode& o) const {
        return kind == o.kind && child0 == o.child0 && child1 == o.child1 && prop == o.prop &&
               var == o.var;
    }
};

// ── ParseError ──────────────────────────────────────────────────────────────

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                             ": " + msg),
          line(l),
          column(c) {}
};

// ── FormulaArena ────────────────────────────────────────────────────────────
// Interned storage; structurally identical nodes share one id, so equality
// of subtrees is id equality.

class FormulaArena {
public:
    FormulaId atom(const std::string& prop, const std::string& var);
    FormulaId unary(FKind k, FormulaId c);
    FormulaId binary(FKind k, FormulaId a, FormulaId b);
    FormulaId quant(FKind k, const std::string& var, FormulaId body);

    const FormulaNode& node(FormulaId id) const { return nodes_.at(id); }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    FormulaId intern(FormulaNode n);
    std::vector<FormulaNode> nodes_;
    struct Hash {
        std::size_t operator()(const FormulaNode& n) const noexcept;
    };
    std::unordered_map<FormulaNode, FormulaId, Hash> intern_;
};

// ── Parsing / printing ──────────────────────────────────────────────────────

// Parses one sentence (UTF-8 text, `#` comments).  Throws ParseError.
FormulaId parse_formula(const std::string& text, FormulaArena& arena);

// Unparser; parse_formula(print_formula(f)) is structurally f.
std::string print_formula(FormulaId f, const FormulaArena& arena);

// ── Desugaring ──────────────────────────────────────────────────────────────
// Core constructors only; semantically equivalent; duplicate binders
// freshened.  Idempotent.
FormulaId desugar(FormulaId f, FormulaArena& arena);

// ── Formula complexity (Def. 4 recursion on the desugared tree) ────────────
std::uint64_t formula_complexity(FormulaId f, const FormulaArena& arena);

std::uint64_t fc_odd(std::uint64_t n);   // smallest odd  >= n
std::uint64_t fc_even(std::uint64_t n);  // smallest even >= n

// ── Well-formedness ─────────────────────────────────────────────────────────

enum class ViolationKind : std::uint8_t {
    FreeVariable,
    UntilOutsideQuantifier,
    DuplicateBinder,
    SugarRemains,
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct WellFormedReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

// Checks a desugared sentence: every atom's variable bound by an enclosing
// exists, every Until under at least one path quantifier, binders unique.
WellFormedReport well_formed(FormulaId f, const FormulaArena& arena);

// ── Structure helpers used across modules ───────────────────────────────────

bool is_sentence_kind(FKind k);

// Free path variables of a cognate subtree, in order of first occurrence.
std::vector<std::string> free_variables(FormulaId f, const FormulaArena& arena);

// All propositions appearing in the tree, sorted.
std::vector<std::string> propositions(FormulaId f, const FormulaArena& arena);

}  // namespace stackhyper

#endif  // STACKHYPER_FORMULA_HPP
