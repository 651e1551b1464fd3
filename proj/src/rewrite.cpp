#include "sqrtpi/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "sqrtpi/circuits.hpp"

#ifndef SQRTPI_DEFAULT_CATALOG
#define SQRTPI_DEFAULT_CATALOG "data/rules.catalog"
#endif

namespace sqrtpi::rewrite {

const char* direction_name(Direction d) { return d == Direction::LeftToRight ? "lr" : "rl"; }

const char* orientation_name(Orientation o) {
    switch (o) {
        case Orientation::LeftToRight:
            return "lr";
        case Orientation::RightToLeft:
            return "rl";
        case Orientation::Both:
            return "both";
        case Orientation::None:
            break;
    }
    return "none";
}

const RewriteRule* RuleDb::find(const std::string& name) const {
    for (const auto& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

std::vector<std::string> RuleDb::families() const {
    std::vector<std::string> out;
    for (const auto& r : rules)
        if (std::find(out.begin(), out.end(), r.family) == out.end()) out.push_back(r.family);
    return out;
}

CatalogError::CatalogError(int line, const std::string& msg)
    : std::runtime_error("catalog line " + std::to_string(line) + ": " + msg), line(line) {}

// ---------------------------------------------------------------- catalog

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

Term compile_circuit(int qubits, const std::string& body) {
    return circuits::compile(circuits::parse_circuit("qubits " + std::to_string(qubits) + "\n" + body));
}

Instantiation parse_instance(const std::string& text, int line) {
    Instantiation inst;
    inst.text = text;
    for (const auto& item : split(text, '|')) {
        if (item.empty()) continue;
        if (item[0] == '@') {
            inst.type = parse_type_pair(item.substr(1));
            continue;
        }
        size_t eq = item.find('=');
        if (eq == std::string::npos || item.size() < 2) throw CatalogError(line, "expected ?x = term, $j = n or @ type");
        std::string name = trim(item.substr(0, eq)), value = trim(item.substr(eq + 1));
        if (name.size() < 2) throw CatalogError(line, "missing variable name");
        if (name[0] == '?')
            inst.terms[name.substr(1)] = parse(value);
        else if (name[0] == '$')
            inst.ints[name.substr(1)] = std::stol(value);
        else
            throw CatalogError(line, "variables start with ? or $");
    }
    return inst;
}

}  // namespace

RuleDb parse_catalog(const std::string& text) {
    RuleDb db;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool header = false;
    std::optional<RewriteRule> cur;
    std::string lhs_circ, rhs_circ;
    bool have_lhs_circ = false, have_rhs_circ = false;
    int rule_line = 0;
    std::set<std::string> names;

    auto finish = [&] {
        RewriteRule& r = *cur;
        try {
            if (have_lhs_circ || have_rhs_circ) {
                if (r.qubits <= 0) throw CatalogError(rule_line, "rule " + r.name + ": circuit sides need 'qubits N'");
                if (have_lhs_circ) {
                    r.lhs = compile_circuit(r.qubits, lhs_circ);
                    r.lhs_text = lhs_circ;
                }
                if (have_rhs_circ) {
                    r.rhs = compile_circuit(r.qubits, rhs_circ);
                    r.rhs_text = rhs_circ;
                }
            }
        } catch (const circuits::CircuitError& e) {
            throw CatalogError(rule_line, "rule " + r.name + ": " + e.what());
        }
        if (!r.lhs || !r.rhs) throw CatalogError(rule_line, "rule " + r.name + " needs both sides");
        if (!names.insert(r.name).second) throw CatalogError(rule_line, "duplicate rule " + r.name);
        db.rules.push_back(std::move(r));
        cur.reset();
    };

    while (std::getline(in, raw)) {
        ++line;
        std::string l = trim(raw.substr(0, raw.find('#')));
        if (l.empty()) continue;
        if (!header) {
            if (l != "sqrtpi-rules 1") throw CatalogError(line, "expected header 'sqrtpi-rules 1'");
            header = true;
            continue;
        }
        size_t sp = l.find_first_of(" \t");
        std::string key = l.substr(0, sp), rest = sp == std::string::npos ? "" : trim(l.substr(sp));
        try {
            if (key == "rule") {
                if (cur) throw CatalogError(line, "missing 'end' before new rule");
                if (rest.empty()) throw CatalogError(line, "rule needs a name");
                cur = RewriteRule{};
                cur->name = rest;
                lhs_circ.clear();
                rhs_circ.clear();
                have_lhs_circ = have_rhs_circ = false;
                rule_line = line;
                continue;
            }
            if (!cur) throw CatalogError(line, "'" + key + "' outside a rule");
            if (key == "end") {
                finish();
            } else if (key == "family") {
                cur->family = rest;
            } else if (key == "lhs") {
                cur->lhs = parse(rest);
                cur->lhs_text = rest;
            } else if (key == "rhs") {
                cur->rhs = parse(rest);
                cur->rhs_text = rest;
            } else if (key == "lhs-circ") {
                lhs_circ = rest;
                have_lhs_circ = true;
            } else if (key == "rhs-circ") {
                rhs_circ = rest;
                have_rhs_circ = true;
            } else if (key == "qubits") {
                cur->qubits = std::stoi(rest);
            } else if (key == "phase") {
                cur->phase = ((std::stoi(rest) % 8) + 8) % 8;
            } else if (key == "orient") {
                if (rest == "lr")
                    cur->orient = Orientation::LeftToRight;
                else if (rest == "rl")
                    cur->orient = Orientation::RightToLeft;
                else if (rest == "both")
                    cur->orient = Orientation::Both;
                else if (rest == "none")
                    cur->orient = Orientation::None;
                else
                    throw CatalogError(line, "orient must be lr, rl, both or none");
            } else if (key == "when") {
                std::istringstream w(rest);
                std::string kind, meta;
                w >> kind >> meta;
                if (meta.size() < 2 || meta[0] != '?') throw CatalogError(line, "expected 'when involutive|scalar ?x'");
                if (kind == "involutive")
                    cur->conditions.push_back({SideCondition::Involutive, meta.substr(1)});
                else if (kind == "scalar")
                    cur->conditions.push_back({SideCondition::Scalar, meta.substr(1)});
                else
                    throw CatalogError(line, "unknown side condition " + kind);
            } else if (key == "inst") {
                cur->instances.push_back(parse_instance(rest, line));
            } else if (key == "note") {
                cur->note += (cur->note.empty() ? "" : " ") + rest;
            } else {
                throw CatalogError(line, "unknown field '" + key + "'");
            }
        } catch (const SyntaxError& e) {
            throw CatalogError(line, e.what());
        } catch (const std::invalid_argument& e) {
            throw CatalogError(line, e.what());
        }
    }
    if (!header) throw CatalogError(line, "empty catalog");
    if (cur) throw CatalogError(line, "rule " + cur->name + " is missing 'end'");
    return db;
}

RuleDb load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rule catalog " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_catalog(ss.str());
    } catch (const CatalogError& e) {
        throw CatalogError(e.line, path + ": " + e.what());
    }
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("SQRTPI_RULE_CATALOG"); env && *env) return env;
    return SQRTPI_DEFAULT_CATALOG;
}

const RuleDb& rule_db() {
    static const RuleDb db = load_catalog(default_catalog_path());
    return db;
}

// ---------------------------------------------------------------- matching

namespace {

struct Bindings {
    std::map<std::string, Term> terms;
    std::map<std::string, long> ints;
};

Term strip_annotations(const Term& t) {
    auto n = std::make_shared<Node>(*t);
    n->ann.reset();
    n->ty.reset();
    n->expansion = nullptr;
    if (n->a) n->a = strip_annotations(n->a);
    if (n->b) n->b = strip_annotations(n->b);
    for (auto& arg : n->args)
        if (arg.term) arg.term = strip_annotations(arg.term);
    return n;
}

Term pattern_of(const Term& side) { return normalize_seq(strip_annotations(side)); }

void collect_vars(const Term& t, std::set<std::string>& out) {
    switch (t->kind) {
        case NodeKind::Meta:
            out.insert("?" + t->name);
            break;
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod:
            collect_vars(t->a, out);
            collect_vars(t->b, out);
            break;
        case NodeKind::Macro:
            for (const auto& a : t->args) {
                if (a.term) collect_vars(a.term, out);
                if (!a.var.empty()) out.insert(a.var);
            }
            break;
        default:
            break;
    }
}

// chain of a node, looking through an annotation on the node itself
std::vector<Term> chain_of(const Term& t) {
    if (t->kind != NodeKind::Seq) return {t};
    std::vector<Term> out = flatten_seq(t->a);
    auto rest = flatten_seq(t->b);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

bool match(const Term& pat, const Term& t, Bindings& b);

bool match_chain(const std::vector<Term>& pats, const std::vector<Term>& ts, Bindings& b, bool allow_tail) {
    size_t k = pats.size();
    if (ts.size() < k) return false;
    if (ts.size() > k && !allow_tail) {
        if (pats.back()->kind != NodeKind::Meta) return false;
        for (size_t i = 0; i + 1 < k; ++i)
            if (!match(pats[i], ts[i], b)) return false;
        return match(pats.back(), seq_chain(std::vector<Term>(ts.begin() + (k - 1), ts.end())), b);
    }
    for (size_t i = 0; i < k; ++i)
        if (!match(pats[i], ts[i], b)) return false;
    return true;
}

bool match(const Term& pat, const Term& t, Bindings& b) {
    switch (pat->kind) {
        case NodeKind::Meta: {
            auto it = b.terms.find(pat->name);
            if (it != b.terms.end()) return syntax_equal(it->second, t, false);
            b.terms.emplace(pat->name, t);
            return true;
        }
        case NodeKind::Prim:
            return t->kind == NodeKind::Prim && t->prim == pat->prim;
        case NodeKind::Sum:
        case NodeKind::Prod:
            return t->kind == pat->kind && match(pat->a, t->a, b) && match(pat->b, t->b, b);
        case NodeKind::Seq:
            if (t->kind != NodeKind::Seq) return false;
            return match_chain(flatten_seq(pat), chain_of(t), b, false);
        case NodeKind::Macro: {
            if (pat->name == "inv" && pat->args.size() == 1 && pat->args[0].term) {
                if (t->kind == NodeKind::Meta) return false;
                return match(pat->args[0].term, normalize_seq(invert(t)), b);
            }
            if (t->kind != NodeKind::Macro || t->name != pat->name || t->args.size() != pat->args.size()) return false;
            for (size_t i = 0; i < pat->args.size(); ++i) {
                const auto &pa = pat->args[i], &ta = t->args[i];
                if (pa.is_int != ta.is_int) return false;
                if (pa.is_int) {
                    if (!ta.var.empty()) return false;
                    if (pa.var.empty()) {
                        if (pa.value != ta.value) return false;
                    } else {
                        auto it = b.ints.find(pa.var.substr(1));
                        if (it != b.ints.end() && it->second != ta.value) return false;
                        b.ints[pa.var.substr(1)] = ta.value;
                    }
                } else if (!match(pa.term, ta.term, b)) {
                    return false;
                }
            }
            return true;
        }
    }
    return false;
}

Term subst(const Term& t, const Bindings& b) {
    switch (t->kind) {
        case NodeKind::Meta: {
            auto it = b.terms.find(t->name);
            if (it == b.terms.end()) throw NoMatch("metavariable ?" + t->name + " is not bound");
            if (!t->ann) return it->second;
            return annotate(it->second, *t->ann);
        }
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod: {
            auto n = std::make_shared<Node>(*t);
            n->a = subst(t->a, b);
            n->b = subst(t->b, b);
            return n;
        }
        case NodeKind::Macro: {
            if (t->name == "inv" && t->args.size() == 1 && t->args[0].term) {
                Term inner = subst(t->args[0].term, b);
                Term r = invert(inner);
                if (!t->ann) return r;
                return annotate(r, *t->ann);
            }
            auto n = std::make_shared<Node>(*t);
            for (auto& a : n->args) {
                if (a.term) a.term = subst(a.term, b);
                if (!a.var.empty()) {
                    auto it = b.ints.find(a.var.substr(1));
                    if (it == b.ints.end()) throw NoMatch("integer variable " + a.var + " is not bound");
                    a.value = it->second;
                    a.var.clear();
                }
            }
            return n;
        }
        default:
            return t;
    }
}

int count_inverses(const Term& t) {
    int n = 0;
    if (t->kind == NodeKind::Prim && (t->prim == Prim::Vi || t->prim == Prim::Wi)) n = 1;
    if (t->kind == NodeKind::Macro && t->name == "inv") n = 1;
    if (t->a) n += count_inverses(t->a);
    if (t->b) n += count_inverses(t->b);
    for (const auto& a : t->args)
        if (a.term) n += count_inverses(a.term);
    return n;
}

int count_tensors(const Term& t) {
    int n = (t->kind == NodeKind::Sum || t->kind == NodeKind::Prod) ? 1 : 0;
    if (t->a) n += count_tensors(t->a);
    if (t->b) n += count_tensors(t->b);
    for (const auto& a : t->args)
        if (a.term) n += count_tensors(a.term);
    return n;
}

using Measure = std::tuple<int, size_t, int>;
Measure measure(const Term& t) { return {count_inverses(t), term_size(t), count_tensors(t)}; }

bool is_scalar(const Term& t) {
    try {
        typecheck(strip_types(t), TypePair{one_type(), one_type()});
        return true;
    } catch (const TypeError&) {
        return false;
    }
}

bool is_involutive(const Term& t) {
    try {
        Term typed = t->ty ? t : typecheck(t);
        ExactMatrix m = eval(typed);
        return compose(m, m) == ExactMatrix::identity(m.rows());
    } catch (const std::exception&) {
        return false;
    }
}

bool conditions_hold(const RewriteRule& r, const Bindings& b) {
    for (const auto& c : r.conditions) {
        auto it = b.terms.find(c.meta);
        if (it == b.terms.end()) return false;
        bool ok = c.kind == SideCondition::Scalar ? is_scalar(it->second) : is_involutive(it->second);
        if (!ok) return false;
    }
    return true;
}

// Compiled form of a rule direction.
struct Oriented {
    Term from, to;
    bool complete;  // every variable of `to` occurs in `from`
    int phase;
};

Oriented orient(const RewriteRule& r, Direction d) {
    const Term& from = d == Direction::LeftToRight ? r.lhs : r.rhs;
    const Term& to = d == Direction::LeftToRight ? r.rhs : r.lhs;
    std::set<std::string> vf, vt;
    collect_vars(from, vf);
    collect_vars(to, vt);
    bool complete = std::includes(vf.begin(), vf.end(), vt.begin(), vt.end());
    int phase = d == Direction::LeftToRight ? r.phase : (8 - r.phase) % 8;
    return {pattern_of(from), to, complete, phase};
}

struct Located {
    Term node;
    bool guarded;  // under a '+' or inside a macro argument
};

Located locate(const Term& root, const Path& path) {
    Term cur = root;
    bool guarded = false;
    for (size_t i = 0; i < path.size(); ++i) {
        int p = path[i];
        switch (cur->kind) {
            case NodeKind::Seq:
            case NodeKind::Sum:
            case NodeKind::Prod:
                if (p != 0 && p != 1) throw PathInvalid("path step " + std::to_string(i) + " must be 0 or 1");
                if (cur->kind == NodeKind::Sum) guarded = true;
                cur = p == 0 ? cur->a : cur->b;
                break;
            case NodeKind::Macro:
                if (p < 0 || static_cast<size_t>(p) >= cur->args.size() || !cur->args[p].term)
                    throw PathInvalid("path step " + std::to_string(i) + ": macro " + cur->name + " has no term argument " +
                                      std::to_string(p));
                guarded = true;
                cur = cur->args[p].term;
                break;
            default:
                throw PathInvalid("path step " + std::to_string(i) + " descends into a leaf");
        }
    }
    return {cur, guarded};
}

Term replace_at(const Term& node, const Path& path, size_t i, const Term& repl) {
    if (i == path.size()) return repl;
    auto n = std::make_shared<Node>(*node);
    n->ty.reset();
    n->expansion = nullptr;
    if (node->kind == NodeKind::Macro)
        n->args[path[i]].term = replace_at(node->args[path[i]].term, path, i + 1, repl);
    else if (path[i] == 0)
        n->a = replace_at(node->a, path, i + 1, repl);
    else
        n->b = replace_at(node->b, path, i + 1, repl);
    return n;
}

// Rewrites the subterm at `path` of a typed, normalised root. Returns the
// untyped, normalised result.
Term rewrite_at(const Term& root, const RewriteRule& rule, const Oriented& o, const Path& path) {
    if (!o.complete) throw NoMatch("rule " + rule.name + " cannot be used in this direction without explicit bindings");
    Located loc = locate(root, path);
    if (o.phase != 0 && loc.guarded)
        throw NoMatch("rule " + rule.name + " carries a phase and cannot be applied under '+' or inside a macro argument");
    Term target = loc.node;
    Bindings b;
    Term tail;
    bool ok;
    if (o.from->kind == NodeKind::Seq) {
        std::vector<Term> pats = flatten_seq(o.from), ts = chain_of(target);
        ok = match_chain(pats, ts, b, true);
        if (ok && ts.size() > pats.size()) tail = seq_chain(std::vector<Term>(ts.begin() + pats.size(), ts.end()));
    } else {
        ok = match(o.from, target, b);
    }
    if (!ok) throw NoMatch("rule " + rule.name + " does not match " + pretty(target));
    if (!conditions_hold(rule, b)) throw NoMatch("side condition of rule " + rule.name + " does not hold");
    Term repl = subst(o.to, b);
    if (tail) repl = make_seq(repl, tail);
    if (target->ann) repl = annotate(repl, *target->ann);
    return normalize_seq(strip_types(replace_at(root, path, 0, repl)));
}

Term prepare(const Term& t, std::optional<TypePair> type = std::nullopt) {
    return typecheck(normalize_seq(strip_types(t)), type);
}

void positions(const Term& t, Path& cur, std::vector<Path>& out) {
    out.push_back(cur);
    switch (t->kind) {
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod:
            cur.push_back(0);
            positions(t->a, cur, out);
            cur.back() = 1;
            positions(t->b, cur, out);
            cur.pop_back();
            break;
        case NodeKind::Macro:
            for (size_t i = 0; i < t->args.size(); ++i)
                if (t->args[i].term) {
                    cur.push_back(static_cast<int>(i));
                    positions(t->args[i].term, cur, out);
                    cur.pop_back();
                }
            break;
        default:
            break;
    }
}

}  // namespace

Applied apply_rule(const Term& term, const RewriteRule& rule, const Path& path, Direction dir) {
    Term root = prepare(term, term->ty);
    Oriented o = orient(rule, dir);
    Term out = rewrite_at(root, rule, o, path);
    try {
        return {typecheck(out, root->ty), o.phase};
    } catch (const TypeError& e) {
        throw NoMatch("rule " + rule.name + " produces an ill-typed term: " + e.what());
    }
}

nlohmann::json Trace::to_json() const {
    nlohmann::json steps_json = nlohmann::json::array();
    for (const auto& s : steps)
        steps_json.push_back({{"rule", s.rule},
                              {"path", s.path},
                              {"direction", direction_name(s.direction)},
                              {"phase", s.phase},
                              {"term", pretty(s.term)}});
    return {{"input", pretty(input)}, {"steps", steps_json}, {"output", pretty(output)}, {"phase", phase}};
}

Trace simplify(const Term& term, const RuleDb& db, int budget) {
    Trace trace;
    Term cur = prepare(term, term->ty);
    trace.input = cur;
    TypePair type = *cur->ty;

    struct Candidate {
        const RewriteRule* rule;
        Direction dir;
        Oriented o;
    };
    std::vector<Candidate> cands;
    for (const auto& r : db.rules) {
        auto add = [&](Direction d) {
            Oriented o = orient(r, d);
            if (o.complete) cands.push_back({&r, d, o});
        };
        if (r.orient == Orientation::LeftToRight || r.orient == Orientation::Both) add(Direction::LeftToRight);
        if (r.orient == Orientation::RightToLeft || r.orient == Orientation::Both) add(Direction::RightToLeft);
    }

    for (int step = 0; step < budget; ++step) {
        Measure m0 = measure(cur);
        std::vector<Path> ps;
        Path scratch;
        positions(cur, scratch, ps);
        bool progressed = false;
        for (const auto& p : ps) {
            for (const auto& c : cands) {
                Term next;
                try {
                    next = rewrite_at(cur, *c.rule, c.o, p);
                } catch (const RewriteError&) {
                    continue;
                }
                if (!(measure(next) < m0)) continue;
                Term typed;
                try {
                    typed = typecheck(next, type);
                } catch (const TypeError&) {
                    continue;
                }
                cur = typed;
                trace.steps.push_back({c.rule->name, p, c.dir, c.o.phase, cur});
                trace.phase = (trace.phase + c.o.phase) % 8;
                progressed = true;
                break;
            }
            if (progressed) break;
        }
        if (!progressed) break;
    }
    trace.output = cur;
    return trace;
}

// ---------------------------------------------------------------- validation

namespace {

InstanceReport validate_instance(const RewriteRule& r, const Instantiation& inst) {
    InstanceReport rep;
    rep.label = inst.text.empty() ? "(as written)" : inst.text;
    try {
        Bindings b{inst.terms, inst.ints};
        Term lhs = typecheck(subst(r.lhs, b), inst.type);
        Term rhs = typecheck(subst(r.rhs, b), lhs->ty);
        rep.dimension = static_cast<size_t>(dimension(lhs->ty->src));
        if (rep.dimension > 16) {
            rep.message = "dimension " + std::to_string(rep.dimension) + " exceeds 16";
            return rep;
        }
        for (const auto& c : r.conditions) {
            auto it = b.terms.find(c.meta);
            if (it == b.terms.end()) {
                rep.message = "side condition on unbound ?" + c.meta;
                return rep;
            }
            bool ok = c.kind == SideCondition::Scalar ? is_scalar(it->second) : is_involutive(it->second);
            if (!ok) {
                rep.message = std::string("side condition ") + (c.kind == SideCondition::Scalar ? "scalar" : "involutive") +
                              " fails for ?" + c.meta;
                return rep;
            }
        }
        ExactMatrix L = eval(lhs), R = eval(rhs);
        ExactMatrix target = R.scaled(DyadicCyclotomic::omega_pow(r.phase));
        Comparison cmp = equal_matrices(L, target, PhaseMode::Strict);
        if (cmp.verdict == Verdict::Equal) {
            rep.passed = true;
            rep.message = "ok";
            return rep;
        }
        auto [i, j] = *cmp.first_difference;
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << "): lhs " << L(i, j).to_string() << " vs w^" << r.phase << "*rhs "
            << target(i, j).to_string();
        Comparison ph = equal_matrices(L, R, PhaseMode::UpToOmegaPower);
        if (ph.verdict != Verdict::NotEqual) msg << " (holds with phase " << ph.phase << ")";
        rep.message = msg.str();
    } catch (const std::exception& e) {
        rep.message = e.what();
    }
    return rep;
}

}  // namespace

RuleReport validate_rule(const RewriteRule& rule, const std::vector<Instantiation>& instances, bool parallel) {
    RuleReport rep{rule.name, rule.family, false, {}};
    std::vector<Instantiation> insts = instances;
    if (insts.empty()) insts.push_back(Instantiation{});
    if (parallel && insts.size() > 1) {
        std::vector<std::future<InstanceReport>> fs;
        for (const auto& inst : insts)
            fs.push_back(std::async(std::launch::async, [&rule, inst] { return validate_instance(rule, inst); }));
        for (auto& f : fs) rep.instances.push_back(f.get());
    } else {
        for (const auto& inst : insts) rep.instances.push_back(validate_instance(rule, inst));
    }
    rep.passed = std::all_of(rep.instances.begin(), rep.instances.end(), [](const auto& x) { return x.passed; });
    return rep;
}

RuleReport validate_rule(const RewriteRule& rule, bool parallel) { return validate_rule(rule, rule.instances, parallel); }

std::vector<RuleReport> validate_all(const RuleDb& db, const std::string& family) {
    std::vector<const RewriteRule*> todo;
    for (const auto& r : db.rules)
        if (family.empty() || r.family == family) todo.push_back(&r);
    std::vector<RuleReport> out(todo.size());
    std::atomic<size_t> next{0};
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.push_back(std::async(std::launch::async, [&] {
            for (size_t i; (i = next++) < todo.size();) out[i] = validate_rule(*todo[i], false);
        }));
    for (auto& f : pool) f.get();
    return out;
}

Comparison check_equiv(const Term& a, const Term& b, PhaseMode mode) {
    Term ta = a->ty ? a : typecheck(a);
    Term tb;
    try {
        tb = typecheck(strip_types(b), ta->ty);
    } catch (const UnificationFailure& e) {
        throw TypeError(std::string("terms have different types: ") + e.what(), b);
    }
    return equal_matrices(eval(ta), eval(tb), mode);
}

}  // namespace sqrtpi::rewrite
