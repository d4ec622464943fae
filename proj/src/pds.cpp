// ============================================================================
// pds.cpp — pushdown-system ingestion, semantics, Appendix-A transformation
// ============================================================================

#include "stackhyper/pds.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stackhyper {

IdSet PushdownSystem::states_with_prop(Id prop) const {
    IdSet out;
    for (Id s = 0; s < num_states(); ++s)
        if (idset_contains(labeling[s], prop)) out.push_back(s);
    return out;
}

// ── step ────────────────────────────────────────────────────────────────────

std::vector<std::pair<TraceStep, Configuration>> step(const PushdownSystem& p,
                                                      const Configuration& c) {
    std::vector<std::pair<TraceStep, Configuration>> out;
    for (const auto& t : p.trans_int) {
        if (t.from != c.state) continue;
        Configuration nc{t.to, c.stack};
        out.push_back({TraceStep{Op::Int, t.from, kEpsilon, t.to}, std::move(nc)});
    }
    for (const auto& t : p.trans_call) {
        if (t.from != c.state) continue;
        Configuration nc;
        nc.state = t.to;
        nc.stack.reserve(c.stack.size() + 1);
        nc.stack.push_back(t.push);
        nc.stack.insert(nc.stack.end(), c.stack.begin(), c.stack.end());
        out.push_back({TraceStep{Op::Call, t.from, t.push, t.to}, std::move(nc)});
    }
    if (!c.stack.empty()) {
        for (const auto& t : p.trans_ret) {
            if (t.from != c.state || t.pop != c.stack.front()) continue;
            Configuration nc;
            nc.state = t.to;
            nc.stack.assign(c.stack.begin() + 1, c.stack.end());
            out.push_back({TraceStep{Op::Ret, t.from, t.pop, t.to}, std::move(nc)});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.tag != b.first.tag) return a.first.tag < b.first.tag;
        if (a.first.dst != b.first.dst) return a.first.dst < b.first.dst;
        return a.first.stack_sym < b.first.stack_sym;
    });
    return out;
}

// ── parsing ─────────────────────────────────────────────────────────────────

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

struct PdsParser {
    PushdownSystem p;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw PdsError("pds line " + std::to_string(line_no) + ": " + msg);
    }

    Id state_ref(const std::string& s) {
        auto id = p.states.find(s);
        if (!id) fail("undeclared state '" + s + "'");
        return *id;
    }
    Id stack_ref(const std::string& s) {
        auto id = p.stack_syms.find(s);
        if (!id) fail("undeclared stack symbol '" + s + "'");
        return *id;
    }

    void declare(NameTable& t, const std::vector<std::string>& words, std::size_t from,
                 const char* what) {
        for (std::size_t i = from; i < words.size(); ++i) {
            if (!valid_ident(words[i])) fail(std::string("bad ") + what + " name '" + words[i] + "'");
            if (t.contains(words[i])) fail(std::string("duplicate ") + what + " '" + words[i] + "'");
            t.intern(words[i]);
        }
    }

    void run(const std::string& text) {
        std::istringstream is(text);
        std::string raw;
        std::vector<std::pair<int, std::vector<std::string>>> lines;
        while (std::getline(is, raw)) {
            ++line_no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.resize(hash);
            auto words = split_ws(raw);
            if (!words.empty()) lines.push_back({line_no, words});
        }
        for (auto& [ln, words] : lines) {
            line_no = ln;
            const std::string& head = words[0];
            if (head == "states:") {
                declare(p.states, words, 1, "state");
            } else if (head == "stack:") {
                declare(p.stack_syms, words, 1, "stack symbol");
            } else if (head == "props:") {
                for (std::size_t i = 1; i < words.size(); ++i) {
                    if (!valid_ident(words[i])) fail("bad proposition '" + words[i] + "'");
                    p.props.intern(words[i]);
                }
            } else if (head == "init:") {
                if (words.size() != 2) fail("init: takes one state");
                p.initial = state_ref(words[1]);
            } else if (head == "label") {
                // label s { a b }
                if (words.size() < 4 || words[2] != "{" || words.back() != "}")
                    fail("label syntax: label s { a b }");
                Id s = state_ref(words[1]);
                if (p.labeling.size() < p.states.size()) p.labeling.resize(p.states.size());
                for (std::size_t i = 3; i + 1 < words.size(); ++i) {
                    if (!valid_ident(words[i])) fail("bad proposition '" + words[i] + "'");
                    Id a = p.props.intern(words[i]);
                    p.labeling[s].push_back(a);
                }
            } else if (head == "int") {
                if (words.size() != 4 || words[2] != "->") fail("int syntax: int s -> t");
                p.trans_int.push_back({state_ref(words[1]), state_ref(words[3])});
            } else if (head == "call") {
                if (words.size() != 6 || words[2] != "->" || words[4] != "push")
                    fail("call syntax: call s -> t push A");
                p.trans_call.push_back(
                    {state_ref(words[1]), state_ref(words[3]), stack_ref(words[5])});
            } else if (head == "ret") {
                if (words.size() != 6 || words[2] != "pop" || words[4] != "->")
                    fail("ret syntax: ret s pop A -> t");
                p.trans_ret.push_back(
                    {state_ref(words[1]), stack_ref(words[3]), state_ref(words[5])});
            } else {
                fail("unknown directive '" + head + "'");
            }
        }
        if (p.states.size() == 0) throw PdsError("pds: no states declared");
        if (p.initial == kNoId) throw PdsError("pds: missing init");
        p.labeling.resize(p.states.size());
        for (auto& l : p.labeling) l = idset_sorted(std::move(l));
        // canonical transition order
        std::sort(p.trans_int.begin(), p.trans_int.end(), [](auto& a, auto& b) {
            return std::tie(a.from, a.to) < std::tie(b.from, b.to);
        });
        std::sort(p.trans_call.begin(), p.trans_call.end(), [](auto& a, auto& b) {
            return std::tie(a.from, a.to, a.push) < std::tie(b.from, b.to, b.push);
        });
        std::sort(p.trans_ret.begin(), p.trans_ret.end(), [](auto& a, auto& b) {
            return std::tie(a.from, a.pop, a.to) < std::tie(b.from, b.pop, b.to);
        });
    }
};

}  // namespace

PushdownSystem parse_pds(const std::string& text) {
    PdsParser parser;
    parser.run(text);
    return std::move(parser.p);
}

std::string print_pds(const PushdownSystem& p) {
    std::ostringstream os;
    os << "states:";
    for (Id s = 0; s < p.num_states(); ++s) os << " " << p.states.name(s);
    os << "\ninit: " << p.states.name(p.initial) << "\n";
    if (p.num_stack() > 0) {
        os << "stack:";
        for (Id a = 0; a < p.num_stack(); ++a) os << " " << p.stack_syms.name(a);
        os << "\n";
    }
    if (p.props.size() > 0) {
        os << "props:";
        for (Id a = 0; a < p.props.size(); ++a) os << " " << p.props.name(a);
        os << "\n";
    }
    for (Id s = 0; s < p.num_states(); ++s) {
        if (p.labeling[s].empty()) continue;
        os << "label " << p.states.name(s) << " {";
        for (Id a : p.labeling[s]) os << " " << p.props.name(a);
        os << " }\n";
    }
    for (const auto& t : p.trans_int)
        os << "int " << p.states.name(t.from) << " -> " << p.states.name(t.to) << "\n";
    for (const auto& t : p.trans_call)
        os << "call " << p.states.name(t.from) << " -> " << p.states.name(t.to) << " push "
           << p.stack_syms.name(t.push) << "\n";
    for (const auto& t : p.trans_ret)
        os << "ret " << p.states.name(t.from) << " pop " << p.stack_syms.name(t.pop) << " -> "
           << p.states.name(t.to) << "\n";
    return os.str();
}

// ── patterns ────────────────────────────────────────────────────────────────

bool is_well_matched(const std::vector<Op>& w) {
    long depth = 0;
    for (Op o : w) {
        if (o == Op::Call) ++depth;
        if (o == Op::Ret) {
            --depth;
            if (depth < 0) return false;
        }
    }
    return depth == 0;
}

std::vector<std::size_t> unmatched_return_positions(const std::vector<Op>& w) {
    std::vector<std::size_t> out;
    long depth = 0;
    bool prefix_wm = true;  // w[:i] well matched so far
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == Op::Ret && prefix_wm && depth == 0) out.push_back(i);
        if (w[i] == Op::Call) ++depth;
        if (w[i] == Op::Ret) {
            --depth;
            if (depth < 0) prefix_wm = false;
        }
        // prefix well matched iff depth never went negative and is 0 now
    }
    return out;
}

PatternLasso pattern_of_trace(const TraceLasso& t) {
    PatternLasso p;
    for (const auto& s : t.prefix) p.prefix.push_back(s.tag);
    for (const auto& s : t.period) p.period.push_back(s.tag);
    return p;
}

std::vector<Op> pattern_of_steps(const std::vector<TraceStep>& steps) {
    std::vector<Op> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.tag);
    return out;
}

// ── Appendix A ──────────────────────────────────────────────────────────────

PushdownSystem normalize_empty_stack(const PushdownSystem& p) {
    // Reachable product of states with an emptiness flag; the bottommost
    // stack symbol is pushed annotated so pops can restore the flag.
    struct Key { Id s; bool empty; };
    auto key_name = [&](Id s, bool e) {
        return p.states.name(s) + (e ? "@e" : "@n");
    };

    PushdownSystem out;
    out.props = p.props;

    std::map<std::pair<Id, bool>, Id> state_id;
    std::vector<std::pair<Id, bool>> worklist;
    auto get_state = [&](Id s, bool e) {
        auto it = state_id.find({s, e});
        if (it != state_id.end()) return it->second;
        Id id = out.states.intern(key_name(s, e));
        state_id[{s, e}] = id;
        out.labeling.push_back(p.labeling[s]);
        worklist.push_back({s, e});
        return id;
    };

    // stack symbols: plain copy + annotated-bottom copy
    for (Id a = 0; a < p.num_stack(); ++a) out.stack_syms.intern(p.stack_syms.name(a));
    std::vector<Id> annotated(p.num_stack());
    for (Id a = 0; a < p.num_stack(); ++a) {
        std::string nm = p.stack_syms.name(a) + "_bot";
        while (out.stack_syms.contains(nm)) nm += "_";
        annotated[a] = out.stack_syms.intern(nm);
    }

    out.initial = get_state(p.initial, true);
    while (!worklist.empty()) {
        auto [s, e] = worklist.back();
        worklist.pop_back();
        Id from = state_id[{s, e}];
        for (const auto& t : p.trans_int)
            if (t.from == s) out.trans_int.push_back({from, get_state(t.to, e)});
        for (const auto& t : p.trans_call) {
            if (t.from != s) continue;
            Id push = e ? annotated[t.push] : t.push;
            out.trans_call.push_back({from, get_state(t.to, false), push});
        }
        if (!e) {
            for (const auto& t : p.trans_ret) {
                if (t.from != s) continue;
                out.trans_ret.push_back({from, t.pop, get_state(t.to, false)});
                out.trans_ret.push_back({from, annotated[t.pop], get_state(t.to, true)});
            }
        }
    }
    std::sort(out.trans_int.begin(), out.trans_int.end(), [](auto& a, auto& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    std::sort(out.trans_call.begin(), out.trans_call.end(), [](auto& a, auto& b) {
        return std::tie(a.from, a.to, a.push) < std::tie(b.from, b.to, b.push);
    });
    std::sort(out.trans_ret.begin(), out.trans_ret.end(), [](auto& a, auto& b) {
        return std::tie(a.from, a.pop, a.to) < std::tie(b.from, b.pop, b.to);
    });
    return out;
}

PushdownSystem delta_transform(const PushdownSystem& input) {
    PushdownSystem p = normalize_empty_stack(input);

    for (const char* nm : {"new", "call", "int", "ret"})
        if (p.props.contains(nm))
            throw PdsError(std::string("delta_transform: proposition '") + nm +
                           "' already used by the system");
    for (const char* nm : {"q_call", "q_int", "q_ret"})
        if (p.states.contains(nm))
            throw PdsError(std::string("delta_transform: state '") + nm +
                           "' already used by the system");

    Id prop_new = p.props.intern("new");
    Id prop_call = p.props.intern("call");
    Id prop_int = p.props.intern("int");
    Id prop_ret = p.props.intern("ret");

    Id q_call = p.states.intern("q_call");
    Id q_int = p.states.intern("q_int");
    Id q_ret = p.states.intern("q_ret");
    p.labeling.resize(p.states.size());
    p.labeling[q_call] = {prop_new};
    p.labeling[q_int] = {prop_new};
    p.labeling[q_ret] = {prop_new};

    // the only transitions in the new states are int self-loops
    std::vector<PushdownSystem::IntTrans> added = {{q_call, q_call}, {q_int, q_int}, {q_ret, q_ret}};

    std::set<Id> has_call, has_int, has_ret;
    for (const auto& t : p.trans_call) has_call.insert(t.from);
    for (const auto& t : p.trans_int) has_int.insert(t.from);
    for (const auto& t : p.trans_ret) has_ret.insert(t.from);

    for (Id s : has_call) {
        added.push_back({s, q_call});
        p.labeling[s] = idset_sorted([&] { auto v = p.labeling[s]; v.push_back(prop_call); return v; }());
    }
    for (Id s : has_int) {
        added.push_back({s, q_int});
        p.labeling[s] = idset_sorted([&] { auto v = p.labeling[s]; v.push_back(prop_int); return v; }());
    }
    for (Id s : has_ret) {
        added.push_back({s, q_ret});
        p.labeling[s] = idset_sorted([&] { auto v = p.labeling[s]; v.push_back(prop_ret); return v; }());
    }

    p.trans_int.insert(p.trans_int.end(), added.begin(), added.end());
    std::sort(p.trans_int.begin(), p.trans_int.end(), [](auto& a, auto& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return p;
}

}  // namespace stackhyper
