// ============================================================================
// formula.cpp — parser, printer, desugaring, fc, well-formedness
// ============================================================================

#include "stackhyper/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace stackhyper {

const char* fkind_name(FKind k) {
    switch (k) {
        case FKind::Atom: return "atom";
        case FKind::Neg: return "neg";
        case FKind::Or: return "or";
        case FKind::Next: return "X";
        case FKind::Until: return "U";
        case FKind::Exists: return "exists";
        case FKind::SentE: return "E";
        case FKind::SentNeg: return "sent-neg";
        case FKind::SentOr: return "sent-or";
        case FKind::And: return "and";
        case FKind::Implies: return "implies";
        case FKind::Iff: return "iff";
        case FKind::Release: return "R";
        case FKind::Finally: return "F";
        case FKind::Globally: return "G";
        case FKind::Forall: return "forall";
        case FKind::SentA: return "A";
        case FKind::SentAnd: return "sent-and";
        case FKind::SentImplies: return "sent-implies";
        case FKind::SentIff: return "sent-iff";
    }
    return "?";
}

bool is_sentence_kind(FKind k) {
    switch (k) {
        case FKind::SentE:
        case FKind::SentNeg:
        case FKind::SentOr:
        case FKind::SentA:
        case FKind::SentAnd:
        case FKind::SentImplies:
        case FKind::SentIff:
            return true;
        default:
            return false;
    }
}

// ── arena ───────────────────────────────────────────────────────────────────

std::size_t FormulaArena::Hash::operator()(const FormulaNode& n) const noexcept {
    std::size_t h = static_cast<std::size_t>(n.kind);
    auto mix = [&h](std::size_t v) { h = h * 1000003u ^ v; };
    mix(n.child0);
    mix(n.child1);
    mix(std::hash<std::string>{}(n.prop));
    mix(std::hash<std::string>{}(n.var));
    return h;
}

FormulaId FormulaArena::intern(FormulaNode n) {
    auto it = intern_.find(n);
    if (it != intern_.end()) return it->second;
    FormulaId id = static_cast<FormulaId>(nodes_.size());
    nodes_.push_back(n);
    intern_.emplace(std::move(n), id);
    return id;
}

FormulaId FormulaArena::atom(const std::string& prop, const std::string& var) {
    FormulaNode n;
    n.kind = FKind::Atom;
    n.prop = prop;
    n.var = var;
    return intern(std::move(n));
}

FormulaId FormulaArena::unary(FKind k, FormulaId c) {
    FormulaNode n;
    n.kind = k;
    n.child0 = c;
    return intern(std::move(n));
}

FormulaId FormulaArena::binary(FKind k, FormulaId a, FormulaId b) {
    FormulaNode n;
    n.kind = k;
    n.child0 = a;
    n.child1 = b;
    return intern(std::move(n));
}

FormulaId FormulaArena::quant(FKind k, const std::string& var, FormulaId body) {
    FormulaNode n;
    n.kind = k;
    n.child0 = body;
    n.var = var;
    return intern(std::move(n));
}

// ── lexer ───────────────────────────────────────────────────────────────────

namespace {

enum class Tok : std::uint8_t {
    Ident, E, A, X, U, F, G, R, Exists, Forall,
    Not, AndT, OrT, Arrow, DArrow, LParen, RParen, Dot, At, End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t) { out.push_back({k, std::move(t), line, col}); };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') { ++line; col = 1; ++i; continue; }
        if (c == ' ' || c == '\t' || c == '\r') { ++col; ++i; continue; }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        int start_col = col;
        auto push_at = [&](Tok k, std::string t, std::size_t len) {
            out.push_back({k, std::move(t), line, start_col});
            i += len;
            col += static_cast<int>(len);
        };
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string w = text.substr(i, j - i);
            Tok k = Tok::Ident;
            if (w == "E") k = Tok::E;
            else if (w == "A") k = Tok::A;
            else if (w == "X") k = Tok::X;
            else if (w == "U") k = Tok::U;
            else if (w == "F") k = Tok::F;
            else if (w == "G") k = Tok::G;
            else if (w == "R") k = Tok::R;
            else if (w == "exists") k = Tok::Exists;
            else if (w == "forall") k = Tok::Forall;
            push_at(k, w, j - i);
            continue;
        }
        switch (c) {
            case '!': push_at(Tok::Not, "!", 1); continue;
            case '&': push_at(Tok::AndT, "&", 1); continue;
            case '|': push_at(Tok::OrT, "|", 1); continue;
            case '(': push_at(Tok::LParen, "(", 1); continue;
            case ')': push_at(Tok::RParen, ")", 1); continue;
            case '.': push_at(Tok::Dot, ".", 1); continue;
            case '@': push_at(Tok::At, "@", 1); continue;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') { push_at(Tok::Arrow, "->", 2); continue; }
                throw ParseError(line, col, "stray '-'");
            case '<':
                if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
                    push_at(Tok::DArrow, "<->", 3);
                    continue;
                }
                throw ParseError(line, col, "stray '<'");
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        (void)push;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

// ── parser ──────────────────────────────────────────────────────────────────
// sentence  := siff
// siff      := simp ('<->' simp)*
// simp      := sor ('->' simp)?
// sor       := sand ('|' sand)*
// sand      := sunary ('&' sunary)*
// sunary    := '!' sunary | ('E'|'A') cunary | '(' siff ')'
// cognate   := ciff       (same precedence ladder, atoms `a@p`, quantifiers
//                          and unary X/F/G with maximal-scope bodies)
// cuntil    := cunary (('U'|'R') cuntil)?

struct Parser {
    const std::vector<Token>& ts;
    std::size_t pos = 0;
    FormulaArena& arena;

    const Token& peek() const { return ts[pos]; }
    Token take() { return ts[pos++]; }
    bool accept(Tok k) {
        if (peek().kind == k) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(peek().line, peek().col, msg);
    }
    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail("expected " + what);
        return take();
    }

    FormulaId sentence() {
        FormulaId f = siff();
        if (peek().kind != Tok::End) fail("trailing input after sentence");
        return f;
    }

    FormulaId siff() {
        FormulaId lhs = simp();
        while (accept(Tok::DArrow)) lhs = arena.binary(FKind::SentIff, lhs, simp());
        return lhs;
    }
    FormulaId simp() {
        FormulaId lhs = sor();
        if (accept(Tok::Arrow)) return arena.binary(FKind::SentImplies, lhs, simp());
        return lhs;
    }
    FormulaId sor() {
        FormulaId lhs = sand();
        while (accept(Tok::OrT)) lhs = arena.binary(FKind::SentOr, lhs, sand());
        return lhs;
    }
    FormulaId sand() {
        FormulaId lhs = sunary();
        while (accept(Tok::AndT)) lhs = arena.binary(FKind::SentAnd, lhs, sunary());
        return lhs;
    }
    FormulaId sunary() {
        switch (peek().kind) {
            case Tok::Not: take(); return arena.unary(FKind::SentNeg, sunary());
            case Tok::E: take(); return arena.unary(FKind::SentE, cunary());
            case Tok::A: take(); return arena.unary(FKind::SentA, cunary());
            case Tok::LParen: {
                take();
                FormulaId f = siff();
                expect(Tok::RParen, "')'");
                return f;
            }
            default:
                fail("expected a sentence (E/A/!/parenthesis)");
        }
    }

    FormulaId ciff() {
        FormulaId lhs = cimp();
        while (accept(Tok::DArrow)) lhs = arena.binary(FKind::Iff, lhs, cimp());
        return lhs;
    }
    FormulaId cimp() {
        FormulaId lhs = cor();
        if (accept(Tok::Arrow)) return arena.binary(FKind::Implies, lhs, cimp());
        return lhs;
    }
    FormulaId cor() {
        FormulaId lhs = cand();
        while (accept(Tok::OrT)) lhs = arena.binary(FKind::Or, lhs, cand());
        return lhs;
    }
    FormulaId cand() {
        FormulaId lhs = cuntil();
        while (accept(Tok::AndT)) lhs = arena.binary(FKind::And, lhs, cuntil());
        return lhs;
    }
    FormulaId cuntil() {
        FormulaId lhs = cunary();
        if (accept(Tok::U)) return arena.binary(FKind::Until, lhs, cuntil());
        if (accept(Tok::R)) return arena.binary(FKind::Release, lhs, cuntil());
        return lhs;
    }
    FormulaId cunary() {
        switch (peek().kind) {
            case Tok::Not: take(); return arena.unary(FKind::Neg, cunary());
            case Tok::X: take(); return arena.unary(FKind::Next, cunary());
            case Tok::F: take(); return arena.unary(FKind::Finally, cunary());
            case Tok::G: take(); return arena.unary(FKind::Globally, cunary());
            case Tok::Exists: {
                take();
                Token v = expect(Tok::Ident, "path variable");
                expect(Tok::Dot, "'.' after path variable");
                return arena.quant(FKind::Exists, v.text, ciff());
            }
            case Tok::Forall: {
                take();
                Token v = expect(Tok::Ident, "path variable");
                expect(Tok::Dot, "'.' after path variable");
                return arena.quant(FKind::Forall, v.text, ciff());
            }
            case Tok::LParen: {
                take();
                FormulaId f = ciff();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Ident: {
                Token p = take();
                expect(Tok::At, "'@' in atom");
                Token v = expect(Tok::Ident, "path variable after '@'");
                return arena.atom(p.text, v.text);
            }
            default:
                fail("expected a cognate formula");
        }
    }
};

}  // namespace

FormulaId parse_formula(const std::string& text, FormulaArena& arena) {
    auto tokens = lex(text);
    Parser p{tokens, 0, arena};
    return p.sentence();
}

// ── printer ─────────────────────────────────────────────────────────────────
// Precedence levels (higher binds tighter): iff=0, imp=1, or=2, and=3,
// until=4, unary=5.

namespace {

int precedence(FKind k) {
    switch (k) {
        case FKind::Iff:
        case FKind::SentIff: return 0;
        case FKind::Implies:
        case FKind::SentImplies: return 1;
        case FKind::Or:
        case FKind::SentOr: return 2;
        case FKind::And:
        case FKind::SentAnd: return 3;
        case FKind::Until:
        case FKind::Release: return 4;
        default: return 5;
    }
}

void print_rec(FormulaId f, const FormulaArena& a, int min_prec, std::ostringstream& os) {
    const FormulaNode& n = a.node(f);
    int prec = precedence(n.kind);
    bool paren = prec < min_prec;
    if (paren) os << "(";
    switch (n.kind) {
        case FKind::Atom: os << n.prop << "@" << n.var; break;
        case FKind::Neg:
        case FKind::SentNeg:
            os << "!";
            print_rec(n.child0, a, 6, os);
            break;
        case FKind::Next:
            os << "X ";
            print_rec(n.child0, a, 6, os);
            break;
        case FKind::Finally:
            os << "F ";
            print_rec(n.child0, a, 6, os);
            break;
        case FKind::Globally:
            os << "G ";
            print_rec(n.child0, a, 6, os);
            break;
        case FKind::SentE:
            os << "E ";
            print_rec(n.child0, a, 6, os);
            break;
        case FKind::SentA:
            os << "A ";
            print_rec(n.child0, a, 6, os);
            break;
        case FKind::Exists:
            os << "exists " << n.var << ". ";
            print_rec(n.child0, a, 0, os);
            break;
        case FKind::Forall:
            os << "forall " << n.var << ". ";
            print_rec(n.child0, a, 0, os);
            break;
        case FKind::Until:
        case FKind::Release:
            print_rec(n.child0, a, prec + 1, os);
            os << (n.kind == FKind::Until ? " U " : " R ");
            print_rec(n.child1, a, prec, os);  // right assoc
            break;
        case FKind::Implies:
        case FKind::SentImplies:
            print_rec(n.child0, a, prec + 1, os);
            os << " -> ";
            print_rec(n.child1, a, prec, os);
            break;
        case FKind::Or:
        case FKind::SentOr:
        case FKind::And:
        case FKind::SentAnd:
        case FKind::Iff:
        case FKind::SentIff: {
            const char* sym = (n.kind == FKind::Or || n.kind == FKind::SentOr)   ? " | "
                              : (n.kind == FKind::And || n.kind == FKind::SentAnd) ? " & "
                                                                                   : " <-> ";
            print_rec(n.child0, a, prec, os);
            os << sym;
            print_rec(n.child1, a, prec + 1, os);  // left assoc
            break;
        }
    }
    if (paren) os << ")";
}

}  // namespace

std::string print_formula(FormulaId f, const FormulaArena& arena) {
    std::ostringstream os;
    const FormulaNode& n = arena.node(f);
    // quantifier/E bodies are printed parenthesized when they are not unary,
    // so "E (exists p. ...)" still round-trips; handled by min_prec=6 above
    print_rec(f, arena, is_sentence_kind(n.kind) ? 0 : 0, os);
    return os.str();
}

// ── desugaring ──────────────────────────────────────────────────────────────

namespace {

struct Desugarer {
    FormulaArena& a;
    // variables bound so far anywhere (for freshening)
    std::set<std::string> used;
    int fresh_counter = 0;
    std::string any_prop;  // first proposition in the sentence, for `true`

    std::string fresh(const std::string& base) {
        std::string cand;
        do {
            cand = base + "_" + std::to_string(fresh_counter++);
        } while (used.count(cand));
        used.insert(cand);
        return cand;
    }

    // true-expansion a@pi | !a@pi with the innermost in-scope variable.
    FormulaId make_true(const std::vector<std::string>& scope) {
        if (scope.empty())
            throw std::invalid_argument("desugar: F/G used outside any path quantifier");
        FormulaId at = a.atom(any_prop, scope.back());
        return a.binary(FKind::Or, at, a.unary(FKind::Neg, at));
    }

    // rename: active substitution var -> new name
    FormulaId go(FormulaId f, std::map<std::string, std::string>& sub,
                 std::vector<std::string>& scope) {
        const FormulaNode n = a.node(f);
        switch (n.kind) {
            case FKind::Atom: {
                auto it = sub.find(n.var);
                return a.atom(n.prop, it == sub.end() ? n.var : it->second);
            }
            case FKind::Neg: return a.unary(FKind::Neg, go(n.child0, sub, scope));
            case FKind::Next: return a.unary(FKind::Next, go(n.child0, sub, scope));
            case FKind::Or:
                return a.binary(FKind::Or, go(n.child0, sub, scope), go(n.child1, sub, scope));
            case FKind::Until:
                return a.binary(FKind::Until, go(n.child0, sub, scope), go(n.child1, sub, scope));
            case FKind::And: {
                // ψ1 ∧ ψ2 = ¬(¬ψ1 ∨ ¬ψ2)
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                return a.unary(FKind::Neg,
                               a.binary(FKind::Or, a.unary(FKind::Neg, l), a.unary(FKind::Neg, r)));
            }
            case FKind::Implies: {
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                return a.binary(FKind::Or, a.unary(FKind::Neg, l), r);
            }
            case FKind::Iff: {
                // (l -> r) & (r -> l), each desugared
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                FormulaId lr = a.binary(FKind::Or, a.unary(FKind::Neg, l), r);
                FormulaId rl = a.binary(FKind::Or, a.unary(FKind::Neg, r), l);
                return a.unary(FKind::Neg, a.binary(FKind::Or, a.unary(FKind::Neg, lr),
                                                    a.unary(FKind::Neg, rl)));
            }
            case FKind::Finally: {
                // F ψ = true U ψ
                FormulaId body = go(n.child0, sub, scope);
                return a.binary(FKind::Until, make_true(scope), body);
            }
            case FKind::Globally: {
                // G ψ = ¬F¬ψ
                FormulaId body = go(n.child0, sub, scope);
                FormulaId f1 = a.binary(FKind::Until, make_true(scope), a.unary(FKind::Neg, body));
                return a.unary(FKind::Neg, f1);
            }
            case FKind::Release: {
                // ψ R ψ' = ¬((¬ψ) U (¬ψ'))  — classical release
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                return a.unary(FKind::Neg, a.binary(FKind::Until, a.unary(FKind::Neg, l),
                                                    a.unary(FKind::Neg, r)));
            }
            case FKind::Exists:
            case FKind::Forall: {
                std::string name = n.var;
                std::map<std::string, std::string> inner = sub;
                if (used.count(name)) {
                    std::string f2 = fresh(name);
                    inner[name] = f2;
                    name = f2;
                } else {
                    used.insert(name);
                    inner.erase(name);
                }
                scope.push_back(name);
                FormulaId body = go(n.child0, inner, scope);
                scope.pop_back();
                if (n.kind == FKind::Exists) return a.quant(FKind::Exists, name, body);
                // ∀π.ψ = ¬∃π.¬ψ
                return a.unary(FKind::Neg,
                               a.quant(FKind::Exists, name, a.unary(FKind::Neg, body)));
            }
            case FKind::SentE: return a.unary(FKind::SentE, go(n.child0, sub, scope));
            case FKind::SentA: {
                // A ψ = ¬E¬ψ
                FormulaId body = go(n.child0, sub, scope);
                return a.unary(FKind::SentNeg,
                               a.unary(FKind::SentE, a.unary(FKind::Neg, body)));
            }
            case FKind::SentNeg: return a.unary(FKind::SentNeg, go(n.child0, sub, scope));
            case FKind::SentOr:
                return a.binary(FKind::SentOr, go(n.child0, sub, scope), go(n.child1, sub, scope));
            case FKind::SentAnd: {
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                return a.unary(FKind::SentNeg,
                               a.binary(FKind::SentOr, a.unary(FKind::SentNeg, l),
                                        a.unary(FKind::SentNeg, r)));
            }
            case FKind::SentImplies: {
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                return a.binary(FKind::SentOr, a.unary(FKind::SentNeg, l), r);
            }
            case FKind::SentIff: {
                FormulaId l = go(n.child0, sub, scope);
                FormulaId r = go(n.child1, sub, scope);
                FormulaId lr = a.binary(FKind::SentOr, a.unary(FKind::SentNeg, l), r);
                FormulaId rl = a.binary(FKind::SentOr, a.unary(FKind::SentNeg, r), l);
                return a.unary(FKind::SentNeg,
                               a.binary(FKind::SentOr, a.unary(FKind::SentNeg, lr),
                                        a.unary(FKind::SentNeg, rl)));
            }
        }
        throw std::logic_error("desugar: unhandled kind");
    }
};

void collect_props(FormulaId f, const FormulaArena& a, std::set<std::string>& out) {
    const FormulaNode& n = a.node(f);
    if (n.kind == FKind::Atom) {
        out.insert(n.prop);
        return;
    }
    if (n.child0 != kNoFormula) collect_props(n.child0, a, out);
    if (n.child1 != kNoFormula) collect_props(n.child1, a, out);
}

void collect_vars(FormulaId f, const FormulaArena& a, std::set<std::string>& out) {
    const FormulaNode& n = a.node(f);
    if (!n.var.empty()) out.insert(n.var);
    if (n.child0 != kNoFormula) collect_vars(n.child0, a, out);
    if (n.child1 != kNoFormula) collect_vars(n.child1, a, out);
}

}  // namespace

FormulaId desugar(FormulaId f, FormulaArena& arena) {
    Desugarer d{arena};
    std::set<std::string> props;
    collect_props(f, arena, props);
    d.any_prop = props.empty() ? "p0" : *props.begin();
    // binders must avoid capturing variables that occur free in the input
    for (const auto& v : free_variables(f, arena)) d.used.insert(v);
    std::map<std::string, std::string> sub;
    std::vector<std::string> scope;
    return d.go(f, sub, scope);
}

// ── formula complexity ──────────────────────────────────────────────────────

std::uint64_t fc_odd(std::uint64_t n) { return (n % 2 == 1) ? n : n + 1; }
std::uint64_t fc_even(std::uint64_t n) { return (n % 2 == 0) ? n : n + 1; }

std::uint64_t formula_complexity(FormulaId f, const FormulaArena& a) {
    const FormulaNode& n = a.node(f);
    switch (n.kind) {
        case FKind::Atom: return 0;
        case FKind::Neg: return fc_even(formula_complexity(n.child0, a));
        case FKind::Or:
            return std::max(formula_complexity(n.child0, a), formula_complexity(n.child1, a));
        case FKind::Next: return formula_complexity(n.child0, a);
        case FKind::Until:
            return fc_even(
                std::max(formula_complexity(n.child0, a), formula_complexity(n.child1, a)));
        case FKind::Exists: return fc_odd(formula_complexity(n.child0, a));
        case FKind::SentE: return fc_odd(formula_complexity(n.child0, a));
        case FKind::SentNeg: return formula_complexity(n.child0, a);
        case FKind::SentOr:
            return std::max(formula_complexity(n.child0, a), formula_complexity(n.child1, a));
        default:
            throw std::invalid_argument(std::string("formula_complexity: sugar remains: ") +
                                        fkind_name(n.kind));
    }
}

// ── well-formedness ─────────────────────────────────────────────────────────

namespace {

struct WfCheck {
    const FormulaArena& a;
    WellFormedReport report;
    std::set<std::string> bound_anywhere;

    void cognate(FormulaId f, std::set<std::string> scope, int quant_depth) {
        const FormulaNode& n = a.node(f);
        switch (n.kind) {
            case FKind::Atom:
                if (!scope.count(n.var))
                    report.violations.push_back(
                        {ViolationKind::FreeVariable, "unbound path variable '" + n.var + "'"});
                return;
            case FKind::Neg:
            case FKind::Next:
                cognate(n.child0, scope, quant_depth);
                return;
            case FKind::Or:
                cognate(n.child0, scope, quant_depth);
                cognate(n.child1, std::move(scope), quant_depth);
                return;
            case FKind::Until:
                if (quant_depth == 0)
                    report.violations.push_back({ViolationKind::UntilOutsideQuantifier,
                                                 "U occurs outside all path quantifiers"});
                cognate(n.child0, scope, quant_depth);
                cognate(n.child1, std::move(scope), quant_depth);
                return;
            case FKind::Exists: {
                if (bound_anywhere.count(n.var))
                    report.violations.push_back(
                        {ViolationKind::DuplicateBinder,
                         "path variable '" + n.var + "' bound more than once"});
                bound_anywhere.insert(n.var);
                scope.insert(n.var);
                cognate(n.child0, std::move(scope), quant_depth + 1);
                return;
            }
            default:
                report.violations.push_back(
                    {ViolationKind::SugarRemains,
                     std::string("non-core constructor '") + fkind_name(n.kind) + "'"});
                return;
        }
    }

    void sentence(FormulaId f) {
        const FormulaNode& n = a.node(f);
        switch (n.kind) {
            case FKind::SentE:
                cognate(n.child0, {}, 0);
                return;
            case FKind::SentNeg:
                sentence(n.child0);
                return;
            case FKind::SentOr:
                sentence(n.child0);
                sentence(n.child1);
                return;
            default:
                report.violations.push_back(
                    {ViolationKind::SugarRemains,
                     std::string("sentence level has non-core constructor '") +
                         fkind_name(n.kind) + "'"});
                return;
        }
    }
};

}  // namespace

WellFormedReport well_formed(FormulaId f, const FormulaArena& arena) {
    WfCheck c{arena};
    c.sentence(f);
    return std::move(c.report);
}

std::vector<std::string> free_variables(FormulaId f, const FormulaArena& a) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::function<void(FormulaId, std::set<std::string>&)> rec =
        [&](FormulaId g, std::set<std::string>& bound) {
            const FormulaNode& n = a.node(g);
            if (n.kind == FKind::Atom) {
                if (!bound.count(n.var) && !seen.count(n.var)) {
                    seen.insert(n.var);
                    order.push_back(n.var);
                }
                return;
            }
            if (n.kind == FKind::Exists || n.kind == FKind::Forall) {
                bool added = bound.insert(n.var).second;
                rec(n.child0, bound);
                if (added) bound.erase(n.var);
                return;
            }
            if (n.child0 != kNoFormula) rec(n.child0, bound);
            if (n.child1 != kNoFormula) rec(n.child1, bound);
        };
    std::set<std::string> bound;
    rec(f, bound);
    return order;
}

std::vector<std::string> propositions(FormulaId f, const FormulaArena& a) {
    std::set<std::string> props;
    collect_props(f, a, props);
    return {props.begin(), props.end()};
}

}  // namespace stackhyper
