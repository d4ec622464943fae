// ============================================================================
// symbols.cpp — Σ[m] symbols, guards, environment encoding
// ============================================================================

#include "stackhyper/symbols.hpp"

#include <algorithm>
#include <sstream>

namespace stackhyper {

const char* op_name(Op o) {
    switch (o) {
        case Op::Call: return "call";
        case Op::Int: return "int";
        case Op::Ret: return "ret";
    }
    return "?";
}

// ── symbols ─────────────────────────────────────────────────────────────────

SymbolTemplate make_symbol(Op tag, std::vector<Id> states, std::vector<Id> stacks) {
    if (states.size() != stacks.size())
        throw std::invalid_argument("make_symbol: component vectors differ in length");
    for (Id a : stacks) {
        if (tag == Op::Int && a != kEpsilon)
            throw std::invalid_argument("make_symbol: int symbol with non-epsilon stack entry");
        if (tag != Op::Int && a == kEpsilon)
            throw std::invalid_argument("make_symbol: call/ret symbol with epsilon stack entry");
    }
    SymbolTemplate z;
    z.tag = tag;
    z.states = std::move(states);
    z.stacks = std::move(stacks);
    return z;
}

SymbolTemplate extend(const SymbolTemplate& z, Id state, Id stack_sym) {
    if (z.tag == Op::Int && stack_sym != kEpsilon)
        throw std::invalid_argument("extend: int symbol takes epsilon stack entry");
    if (z.tag != Op::Int && stack_sym == kEpsilon)
        throw std::invalid_argument("extend: call/ret symbol takes a real stack entry");
    SymbolTemplate out = z;
    out.states.push_back(state);
    out.stacks.push_back(stack_sym);
    return out;
}

std::pair<Id, Id> component(const SymbolTemplate& z, std::uint32_t i, Id initial_state) {
    if (i == 0) return {initial_state, kNoId};
    if (i > z.arity()) throw std::out_of_range("component: index exceeds arity");
    return {z.states[i - 1], z.stacks[i - 1]};
}

std::string symbol_to_string(const SymbolTemplate& z) {
    std::ostringstream os;
    os << op_name(z.tag) << "[";
    for (std::size_t i = 0; i < z.states.size(); ++i) {
        if (i) os << ",";
        os << "s" << z.states[i];
    }
    os << "][";
    for (std::size_t i = 0; i < z.stacks.size(); ++i) {
        if (i) os << ",";
        if (z.stacks[i] == kEpsilon)
            os << "eps";
        else
            os << "g" << z.stacks[i];
    }
    os << "]";
    return os.str();
}

// ── id sets ─────────────────────────────────────────────────────────────────

bool idset_contains(const IdSet& s, Id x) {
    return std::binary_search(s.begin(), s.end(), x);
}

IdSet idset_intersect(const IdSet& a, const IdSet& b) {
    IdSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IdSet idset_complement(const IdSet& a, std::uint32_t universe) {
    IdSet out;
    out.reserve(universe);
    std::size_t j = 0;
    for (Id x = 0; x < universe; ++x) {
        while (j < a.size() && a[j] < x) ++j;
        if (j < a.size() && a[j] == x) continue;
        out.push_back(x);
    }
    return out;
}

IdSet idset_sorted(std::vector<Id> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// ── guards ──────────────────────────────────────────────────────────────────

bool Guard::matches(const SymbolTemplate& z) const {
    if (z.arity() != arity()) return false;
    for (std::uint32_t i = 0; i < arity(); ++i) {
        if (state_sets[i] && !idset_contains(*state_sets[i], z.states[i])) return false;
        if (z.tag != Op::Int && stack_sets[i] && !idset_contains(*stack_sets[i], z.stacks[i]))
            return false;
    }
    return true;
}

std::optional<Guard> Guard::conjoin(const Guard& o) const {
    Guard out = *this;
    for (std::uint32_t i = 0; i < arity(); ++i) {
        if (o.state_sets[i]) {
            out.state_sets[i] = out.state_sets[i]
                                    ? idset_intersect(*out.state_sets[i], *o.state_sets[i])
                                    : *o.state_sets[i];
            if (out.state_sets[i]->empty()) return std::nullopt;
        }
        if (o.stack_sets[i]) {
            out.stack_sets[i] = out.stack_sets[i]
                                    ? idset_intersect(*out.stack_sets[i], *o.stack_sets[i])
                                    : *o.stack_sets[i];
            if (out.stack_sets[i]->empty()) return std::nullopt;
        }
    }
    return out;
}

bool Guard::satisfiable(const Alphabet& a, Op tag) const {
    for (std::uint32_t i = 0; i < arity(); ++i) {
        if (state_sets[i] && state_sets[i]->empty()) return false;
        if (state_sets[i] && state_sets[i]->front() >= a.num_states) return false;
        if (tag != Op::Int && stack_sets[i]) {
            if (stack_sets[i]->empty()) return false;
            bool any = false;
            for (Id x : *stack_sets[i]) any = any || x < a.num_stack;
            if (!any) return false;
        }
    }
    if (tag != Op::Int && a.num_stack == 0 && arity() > 0) return false;
    return true;
}

std::optional<SymbolTemplate> Guard::least_symbol(const Alphabet& a, Op tag) const {
    if (!satisfiable(a, tag)) return std::nullopt;
    SymbolTemplate z;
    z.tag = tag;
    z.states.resize(arity());
    z.stacks.resize(arity());
    for (std::uint32_t i = 0; i < arity(); ++i) {
        if (state_sets[i]) {
            z.states[i] = state_sets[i]->front();
        } else {
            if (a.num_states == 0) return std::nullopt;
            z.states[i] = 0;
        }
        if (tag == Op::Int) {
            z.stacks[i] = kEpsilon;
        } else if (stack_sets[i]) {
            Id pick = kNoId;
            for (Id x : *stack_sets[i])
                if (x < a.num_stack) { pick = x; break; }
            if (pick == kNoId) return std::nullopt;
            z.stacks[i] = pick;
        } else {
            if (a.num_stack == 0) return std::nullopt;
            z.stacks[i] = 0;
        }
    }
    return z;
}

Guard Guard::remap(const std::vector<std::uint32_t>& old_slot_of_new, std::uint32_t new_arity) const {
    Guard out = Guard::unconstrained(new_arity);
    for (std::uint32_t i = 0; i < new_arity; ++i) {
        std::uint32_t src = old_slot_of_new[i];
        if (src == kNoId) continue;
        out.state_sets[i] = state_sets[src];
        out.stack_sets[i] = stack_sets[src];
    }
    return out;
}

std::string Guard::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::uint32_t i = 0; i < arity(); ++i) {
        if (state_sets[i]) {
            if (any) os << " & ";
            os << "st" << (i + 1) << " in {";
            for (std::size_t k = 0; k < state_sets[i]->size(); ++k)
                os << (k ? "," : "") << (*state_sets[i])[k];
            os << "}";
            any = true;
        }
        if (stack_sets[i]) {
            if (any) os << " & ";
            os << "sk" << (i + 1) << " in {";
            for (std::size_t k = 0; k < stack_sets[i]->size(); ++k)
                os << (k ? "," : "") << (*stack_sets[i])[k];
            os << "}";
            any = true;
        }
    }
    if (!any) os << "any";
    return os.str();
}

// ── environment encoding ────────────────────────────────────────────────────

static void check_chaining(const TraceLasso& t) {
    auto link = [&](const TraceStep& a, const TraceStep& b) {
        if (a.dst != b.src) throw std::invalid_argument("encode: trace steps do not chain");
    };
    for (std::size_t i = 0; i + 1 < t.prefix.size(); ++i) link(t.prefix[i], t.prefix[i + 1]);
    if (!t.prefix.empty() && !t.period.empty()) link(t.prefix.back(), t.period.front());
    for (std::size_t i = 0; i + 1 < t.period.size(); ++i) link(t.period[i], t.period[i + 1]);
    if (!t.period.empty()) link(t.period.back(), t.period.front());
}

SymbolLasso encode_environment(const std::vector<TraceLasso>& traces) {
    if (traces.empty()) throw std::invalid_argument("encode: needs at least one trace");
    std::size_t up = traces[0].prefix_len();
    std::size_t vp = traces[0].period_len();
    for (const auto& t : traces) {
        if (!t.valid()) throw std::invalid_argument("encode: empty period");
        if (t.prefix_len() != up || t.period_len() != vp)
            throw std::invalid_argument("encode: lasso shape mismatch");
        check_chaining(t);
    }
    auto zip_at = [&](std::size_t pos) {
        SymbolTemplate z;
        z.tag = traces[0].at(pos).tag;
        for (const auto& t : traces) {
            const TraceStep& s = t.at(pos);
            if (s.tag != z.tag)
                throw std::invalid_argument("encode: tag mismatch at position " + std::to_string(pos));
            z.states.push_back(s.src);
            z.stacks.push_back(s.stack_sym);
        }
        return z;
    };
    SymbolLasso w;
    for (std::size_t i = 0; i < up; ++i) w.prefix.push_back(zip_at(i));
    for (std::size_t i = 0; i < vp; ++i) w.period.push_back(zip_at(up + i));
    return w;
}

TraceLasso project_component(const SymbolLasso& w, std::uint32_t i) {
    TraceLasso t;
    std::size_t up = w.prefix_len(), vp = w.period_len();
    auto step_at = [&](std::size_t pos) {
        const SymbolTemplate& z = w.at(pos);
        const SymbolTemplate& nxt = w.at(pos + 1 < up + vp ? pos + 1 : up);
        TraceStep s;
        s.tag = z.tag;
        s.src = z.states.at(i);
        s.stack_sym = z.stacks.at(i);
        // dst comes from the next position's source; position up+vp-1 wraps
        // to the period start
        s.dst = (pos + 1 < up + vp) ? w.at(pos + 1).states.at(i) : nxt.states.at(i);
        return s;
    };
    for (std::size_t p = 0; p < up; ++p) t.prefix.push_back(step_at(p));
    for (std::size_t p = 0; p < vp; ++p) t.period.push_back(step_at(up + p));
    return t;
}

PatternLasso pattern_of_symbols(const SymbolLasso& w) {
    PatternLasso p;
    for (const auto& z : w.prefix) p.prefix.push_back(z.tag);
    for (const auto& z : w.period) p.period.push_back(z.tag);
    return p;
}

}  // namespace stackhyper
