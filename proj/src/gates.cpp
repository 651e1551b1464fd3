#include "sqrtpi/gates.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>

namespace sqrtpi::gates {

namespace {

const std::map<std::string, std::string>& nullary_table() {
    static const std::map<std::string, std::string> table = {
        {"unite+r", "swap+ ; unite+l"},
        {"uniti+r", "uniti+l ; swap+"},
        {"unite*r", "swap* ; unite*l"},
        {"uniti*r", "uniti*l ; swap*"},
        {"absorbr", "swap* ; absorbl"},
        {"factorzl", "factorzr ; swap*"},
        {"deltal", "swap* ; dist ; (swap* + swap*)"},
        {"factorl", "(swap* + swap*) ; factor ; swap*"},
        {"midswap", "assocr+ ; (id + assocl+) ; (id + (swap+ + id)) ; (id + assocr+) ; assocl+"},
        {"mat", "dist ; (unite*l + unite*l)"},
        {"matinv", "(uniti*l + uniti*l) ; factor"},
        {"i", "w ; w"},
        {"neg1", "w ; w ; w ; w"},
        {"negi", "w ; w ; w ; w ; w ; w"},
        {"x", "swap+ : 2 <-> 2"},
        {"z", "p(neg1)"},
        {"s", "p(i)"},
        {"sdg", "p(wi ; wi)"},
        {"t", "p(w)"},
        {"tdg", "p(wi)"},
        {"sx", "v"},
        {"sxdg", "vi"},
        {"vdg", "vi"},
        {"h", "scale(w, x ; s ; v ; s ; x)"},
        {"k", "scale(wi, h)"},
        {"swap", "swap* : 2 * 2 <-> 2 * 2"},
        {"cx", "ctrl(x)"},
        {"cz", "ctrl(z)"},
        {"ch", "ctrl(h)"},
        {"cs", "ctrl(s)"},
        {"ct", "ctrl(t)"},
        {"csx", "ctrl(v)"},
        {"csxdg", "ctrl(vi)"},
        {"ccx", "ctrl(cx)"},
        {"ncx", "nctrl(x)"},
        {"nch", "nctrl(h)"},
    };
    return table;
}

// templates with term parameters ?a ?b ...
struct Template {
    std::vector<std::string> params;
    std::string body;
};

const std::map<std::string, Template>& template_table() {
    static const std::map<std::string, Template> table = {
        {"p", {{"s"}, "(id : 1 <-> 1) + ?s"}},
        {"scale", {{"s", "c"}, "uniti*l ; (?s * ?c) ; unite*l"}},
        {"scaler", {{"c", "s"}, "uniti*r ; (?c * ?s) ; unite*r"}},
        {"ctrl", {{"m"}, "mat ; (id + ?m) ; matinv"}},
        {"nctrl", {{"m"}, "mat ; (?m + id) ; matinv"}},
        {"pictrl", {{"m"}, "dist ; (id + (id * ?m)) ; factor"}},
    };
    return table;
}

const std::map<std::string, int>& int_macros() {
    static const std::map<std::string, int> table = {{"di", 2}, {"dx", 3}, {"dk", 3}};
    return table;
}

// parsed bodies are cached; terms are immutable so sharing is safe
Term parsed(const std::string& text) {
    static const std::map<std::string, Term> cache = [] {
        std::map<std::string, Term> c;
        for (const auto& [name, body] : nullary_table()) c.emplace(body, parse(body));
        for (const auto& [name, tpl] : template_table()) c.emplace(tpl.body, parse(tpl.body));
        return c;
    }();
    auto it = cache.find(text);
    return it != cache.end() ? it->second : parse(text);
}

Term subst(const Term& t, const std::map<std::string, Term>& env) {
    switch (t->kind) {
        case NodeKind::Meta: {
            auto it = env.find(t->name);
            return it == env.end() ? t : it->second;
        }
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod: {
            auto out = std::make_shared<Node>(*t);
            out->a = subst(t->a, env);
            out->b = subst(t->b, env);
            return out;
        }
        case NodeKind::Macro: {
            auto out = std::make_shared<Node>(*t);
            for (auto& a : out->args)
                if (a.term) a.term = subst(a.term, env);
            return out;
        }
        default:
            return t;
    }
}

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

const Term& term_param(const Node& m, size_t i) {
    if (i >= m.args.size() || !m.args[i].term) bad("macro " + m.name + ": argument " + std::to_string(i + 1) + " must be a term");
    return m.args[i].term;
}

int int_param(const Node& m, size_t i) {
    if (i >= m.args.size() || !m.args[i].is_int) bad("macro " + m.name + ": argument " + std::to_string(i + 1) + " must be an integer");
    if (!m.args[i].var.empty()) bad("macro " + m.name + ": unresolved integer variable " + m.args[i].var);
    return static_cast<int>(m.args[i].value);
}

Term i_term() { return parse("w ; w"); }

// op on component j (1-based) of unit_sum_type(n)
Term lift1(const Term& op, int n, int j) {
    if (n == 1) return op;
    if (j == 1) return make_sum(op, make_prim(Prim::Id));
    return make_sum(make_prim(Prim::Id), lift1(op, n - 1, j - 1));
}

// op : 1+1 <-> 1+1 on components p, p+1
Term lift2adj(const Term& op, int n, int p) {
    if (p == 1) {
        if (n == 2) return op;
        return seq_chain({make_prim(Prim::AssoclP), make_sum(op, make_prim(Prim::Id)), make_prim(Prim::AssocrP)});
    }
    return make_sum(make_prim(Prim::Id), lift2adj(op, n - 1, p - 1));
}

void check_component(int n, int j) {
    if (n < 1) bad("dimension must be at least 1");
    if (j < 1 || j > n) bad("component " + std::to_string(j) + " out of range 1.." + std::to_string(n));
}

Term lift_pair(const Term& op, int n, int j, int k) {
    check_component(n, j);
    check_component(n, k);
    if (j == k) bad("components must differ");
    int q = std::min(j, k);
    std::vector<int> arr(n + 1);
    for (int r = 1; r <= n; ++r) arr[r] = r;
    Term swp = annotate(make_prim(Prim::SwapP), two_type(), two_type());
    std::vector<Term> perm;
    auto bring = [&](int label, int target) {
        int pos = static_cast<int>(std::find(arr.begin() + 1, arr.end(), label) - arr.begin());
        while (pos > target) {
            perm.push_back(lift2adj(swp, n, pos - 1));
            std::swap(arr[pos - 1], arr[pos]);
            --pos;
        }
    };
    bring(j, q);
    bring(k, q + 1);
    Term core = lift2adj(op, n, q);
    if (perm.empty()) return core;
    std::vector<Term> parts = perm;
    parts.push_back(core);
    for (auto it = perm.rbegin(); it != perm.rend(); ++it) parts.push_back(*it);
    return seq_chain(parts);
}

Term ann_unit_sum(const Term& t, int n) { return annotate(t, unit_sum_type(n), unit_sum_type(n)); }

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const std::map<std::string, std::string>& dual_table() {
    static const std::map<std::string, std::string> table = [] {
        std::map<std::string, std::string> t;
        auto pair = [&](const char* a, const char* b) {
            t[a] = b;
            t[b] = a;
        };
        for (const char* self : {"x", "z", "h", "swap", "cx", "cz", "ch", "ccx", "ncx", "nch", "midswap", "neg1"}) t[self] = self;
        pair("mat", "matinv");
        pair("s", "sdg");
        pair("t", "tdg");
        pair("sx", "sxdg");
        pair("csx", "csxdg");
        pair("i", "negi");
        pair("deltal", "factorl");
        pair("unite+r", "uniti+r");
        pair("unite*r", "uniti*r");
        pair("absorbr", "factorzl");
        return t;
    }();
    return table;
}

}  // namespace

bool is_macro(const std::string& name) {
    return nullary_table().count(name) || template_table().count(name) || int_macros().count(name) || name == "inv";
}

std::vector<std::string> macro_names() {
    std::vector<std::string> out;
    for (const auto& [n, _] : nullary_table()) out.push_back(n);
    for (const auto& [n, _] : template_table()) out.push_back(n);
    for (const auto& [n, _] : int_macros()) out.push_back(n);
    out.push_back("inv");
    std::sort(out.begin(), out.end());
    return out;
}

Term expand_once(const Node& m) {
    auto arity = [&](size_t n) {
        if (m.args.size() != n)
            bad("macro " + m.name + " takes " + std::to_string(n) + " argument(s), got " + std::to_string(m.args.size()));
    };
    if (auto it = nullary_table().find(m.name); it != nullary_table().end()) {
        arity(0);
        return parsed(it->second);
    }
    if (auto it = template_table().find(m.name); it != template_table().end()) {
        arity(it->second.params.size());
        std::map<std::string, Term> env;
        for (size_t i = 0; i < it->second.params.size(); ++i) env[it->second.params[i]] = term_param(m, i);
        return subst(parsed(it->second.body), env);
    }
    if (m.name == "inv") {
        arity(1);
        const Term& c = term_param(m, 0);
        if (c->kind == NodeKind::Meta) bad("cannot expand inv of metavariable ?" + c->name);
        if (c->kind == NodeKind::Macro) {
            Term r = invert_macro(*c);
            if (r->kind == NodeKind::Macro && r->name == "inv") return invert(expand_once(*c));
            return r;
        }
        return invert(c);
    }
    if (m.name == "di") {
        arity(2);
        return d_phase(int_param(m, 0), int_param(m, 1));
    }
    if (m.name == "dx") {
        arity(3);
        return d_x(int_param(m, 0), int_param(m, 1), int_param(m, 2));
    }
    if (m.name == "dk") {
        arity(3);
        return d_k(int_param(m, 0), int_param(m, 1), int_param(m, 2));
    }
    bad("unknown macro " + m.name);
}

Term invert_macro(const Node& m) {
    if (m.name == "inv" && m.args.size() == 1 && m.args[0].term) return m.args[0].term;
    if (m.args.empty()) {
        if (auto it = dual_table().find(m.name); it != dual_table().end()) return make_macro(it->second, {}, m.loc);
    }
    static const char* const componentwise[] = {"p", "ctrl", "nctrl", "pictrl", "scale", "scaler"};
    bool cw = std::any_of(std::begin(componentwise), std::end(componentwise), [&](const char* n) { return m.name == n; });
    if (cw) {
        auto args = m.args;
        for (auto& a : args)
            if (a.term) a.term = invert(a.term);
        return make_macro(m.name, std::move(args), m.loc);
    }
    if (m.name == "dx") return make_macro(m.name, m.args, m.loc);
    auto self = std::make_shared<Node>(m);
    self->ann.reset();
    self->ty.reset();
    self->expansion.reset();
    return make_macro("inv", {term_arg(self)}, m.loc);
}

Term scalar_mul(const Term& s, const Term& c) {
    return seq_chain({make_prim(Prim::UnitiTl), make_prod(s, c), make_prim(Prim::UniteTl)});
}

Term mat(const Type& a) {
    return annotate(parse("dist ; (unite*l + unite*l)"), prod_type(two_type(), a), sum_type(a, a));
}

Term mat_inverse(const Type& a) {
    return annotate(parse("(uniti*l + uniti*l) ; factor"), sum_type(a, a), prod_type(two_type(), a));
}

Term ctrl(const Term& m) { return make_macro("ctrl", {term_arg(m)}); }
Term nctrl(const Term& m) { return make_macro("nctrl", {term_arg(m)}); }
Term phase_gate(const Term& s) { return make_macro("p", {term_arg(s)}); }

Term omega_term(int k) {
    if (k < 0) throw std::invalid_argument("omega_term: negative exponent");
    if (k == 0) return annotate(make_prim(Prim::Id), one_type(), one_type());
    return power(make_prim(Prim::W), k);
}

Term named_gate(const std::string& name) {
    std::string n = lower(name);
    if (!nullary_table().count(n)) {
        if (n == "v" || n == "vi" || n == "w" || n == "wi") return make_prim(*prim_from_name(n));
        throw std::invalid_argument("unknown gate " + name);
    }
    return expand_macros(make_macro(n));
}

Term d_phase(int n, int j) {
    check_component(n, j);
    return ann_unit_sum(lift1(i_term(), n, j), n);
}

Term d_x(int n, int j, int k) {
    if (n < 2) bad("dx needs at least 2 components");
    return ann_unit_sum(lift_pair(annotate(make_prim(Prim::SwapP), two_type(), two_type()), n, j, k), n);
}

Term d_k(int n, int j, int k) {
    if (n < 2) bad("dk needs at least 2 components");
    return ann_unit_sum(lift_pair(make_macro("k"), n, j, k), n);
}

}  // namespace sqrtpi::gates
