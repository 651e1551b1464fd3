#include <sstream>

#include "sqrtpi/lang.hpp"

namespace sqrtpi {

namespace {

Type make_type(TypeKind k, Type a = nullptr, Type b = nullptr) {
    auto n = std::make_shared<TypeNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

const Type kZero = make_type(TypeKind::Zero);
const Type kOne = make_type(TypeKind::One);

}  // namespace

Type zero_type() { return kZero; }
Type one_type() { return kOne; }
Type two_type() { return sum_type(kOne, kOne); }
Type sum_type(Type a, Type b) { return make_type(TypeKind::Sum, std::move(a), std::move(b)); }
Type prod_type(Type a, Type b) { return make_type(TypeKind::Prod, std::move(a), std::move(b)); }

Type var_type(int id, std::string name) {
    auto n = std::make_shared<TypeNode>();
    n->kind = TypeKind::Var;
    n->var = id;
    n->name = std::move(name);
    return n;
}

bool type_equal(const Type& a, const Type& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case TypeKind::Zero:
        case TypeKind::One:
            return true;
        case TypeKind::Var:
            return a->var == b->var && a->name == b->name;
        default:
            return type_equal(a->a, b->a) && type_equal(a->b, b->b);
    }
}

bool is_ground(const Type& t) {
    switch (t->kind) {
        case TypeKind::Zero:
        case TypeKind::One:
            return true;
        case TypeKind::Var:
            return false;
        default:
            return is_ground(t->a) && is_ground(t->b);
    }
}

long dimension(const Type& t) {
    switch (t->kind) {
        case TypeKind::Zero:
            return 0;
        case TypeKind::One:
            return 1;
        case TypeKind::Sum:
            return dimension(t->a) + dimension(t->b);
        case TypeKind::Prod:
            return dimension(t->a) * dimension(t->b);
        case TypeKind::Var:
            break;
    }
    throw std::logic_error("dimension of a non-ground type");
}

namespace {

bool is_two(const Type& t) {
    return t->kind == TypeKind::Sum && t->a->kind == TypeKind::One && t->b->kind == TypeKind::One;
}

void print_type(std::ostream& out, const Type& t, int ctx) {
    switch (t->kind) {
        case TypeKind::Zero:
            out << "0";
            return;
        case TypeKind::One:
            out << "1";
            return;
        case TypeKind::Var:
            out << "'" << (t->name.empty() ? "t" + std::to_string(t->var) : t->name);
            return;
        case TypeKind::Sum:
            if (is_two(t)) {
                out << "2";
                return;
            }
            if (ctx > 1) out << "(";
            print_type(out, t->a, 1);
            out << " + ";
            print_type(out, t->b, 2);
            if (ctx > 1) out << ")";
            return;
        case TypeKind::Prod:
            if (ctx > 2) out << "(";
            print_type(out, t->a, 2);
            out << " * ";
            print_type(out, t->b, 3);
            if (ctx > 2) out << ")";
            return;
    }
}

}  // namespace

std::string type_to_string(const Type& t) {
    std::ostringstream out;
    print_type(out, t, 0);
    return out.str();
}

std::string type_pair_to_string(const TypePair& p) {
    return type_to_string(p.src) + " <-> " + type_to_string(p.dst);
}

Type qubit_type(int n) {
    if (n <= 0) throw std::invalid_argument("qubit_type needs n >= 1");
    Type t = two_type();
    for (int i = 1; i < n; ++i) t = prod_type(two_type(), t);
    return t;
}

Type unit_sum_type(int n) {
    if (n <= 0) throw std::invalid_argument("unit_sum_type needs n >= 1");
    Type t = one_type();
    for (int i = 1; i < n; ++i) t = sum_type(one_type(), t);
    return t;
}

// ---------------------------------------------------------------------------

namespace {

struct PrimInfo {
    Prim p;
    const char* name;
    Prim dual;
};

const PrimInfo kPrims[] = {
    {Prim::Id, "id", Prim::Id},
    {Prim::SwapP, "swap+", Prim::SwapP},
    {Prim::AssocrP, "assocr+", Prim::AssoclP},
    {Prim::AssoclP, "assocl+", Prim::AssocrP},
    {Prim::UnitePl, "unite+l", Prim::UnitiPl},
    {Prim::UnitiPl, "uniti+l", Prim::UnitePl},
    {Prim::Absorbl, "absorbl", Prim::Factorzr},
    {Prim::Factorzr, "factorzr", Prim::Absorbl},
    {Prim::SwapT, "swap*", Prim::SwapT},
    {Prim::AssocrT, "assocr*", Prim::AssoclT},
    {Prim::AssoclT, "assocl*", Prim::AssocrT},
    {Prim::UniteTl, "unite*l", Prim::UnitiTl},
    {Prim::UnitiTl, "uniti*l", Prim::UniteTl},
    {Prim::Dist, "dist", Prim::Factor},
    {Prim::Factor, "factor", Prim::Dist},
    {Prim::V, "v", Prim::Vi},
    {Prim::Vi, "vi", Prim::V},
    {Prim::W, "w", Prim::Wi},
    {Prim::Wi, "wi", Prim::W},
};

}  // namespace

const char* prim_name(Prim p) { return kPrims[static_cast<int>(p)].name; }

std::optional<Prim> prim_from_name(const std::string& s) {
    for (const auto& i : kPrims)
        if (s == i.name) return i.p;
    return std::nullopt;
}

Prim prim_dual(Prim p) { return kPrims[static_cast<int>(p)].dual; }

namespace {

std::shared_ptr<Node> new_node(NodeKind k, Loc loc) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->loc = loc;
    return n;
}

}  // namespace

Term make_prim(Prim p, Loc loc) {
    auto n = new_node(NodeKind::Prim, loc);
    n->prim = p;
    return n;
}

Term make_seq(Term a, Term b, Loc loc) {
    auto n = new_node(NodeKind::Seq, loc);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Term make_sum(Term a, Term b, Loc loc) {
    auto n = new_node(NodeKind::Sum, loc);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Term make_prod(Term a, Term b, Loc loc) {
    auto n = new_node(NodeKind::Prod, loc);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Term make_macro(std::string name, std::vector<MacroArg> args, Loc loc) {
    auto n = new_node(NodeKind::Macro, loc);
    n->name = std::move(name);
    n->args = std::move(args);
    return n;
}

Term make_meta(std::string name, Loc loc) {
    auto n = new_node(NodeKind::Meta, loc);
    n->name = std::move(name);
    return n;
}

Term annotate(const Term& t, TypePair p) {
    auto n = std::make_shared<Node>(*t);
    n->ann = std::move(p);
    return n;
}

Term annotate(const Term& t, Type src, Type dst) { return annotate(t, TypePair{std::move(src), std::move(dst)}); }

MacroArg term_arg(Term t) {
    MacroArg a;
    a.term = std::move(t);
    return a;
}

MacroArg int_arg(long v) {
    MacroArg a;
    a.is_int = true;
    a.value = v;
    return a;
}

Term seq_chain(const std::vector<Term>& parts) {
    if (parts.empty()) throw std::invalid_argument("empty sequence");
    Term t = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) t = make_seq(parts[i], t, parts[i]->loc);
    return t;
}

namespace {

void flatten_into(const Term& t, std::vector<Term>& out) {
    if (t->kind == NodeKind::Seq && !t->ann) {
        flatten_into(t->a, out);
        flatten_into(t->b, out);
    } else {
        out.push_back(t);
    }
}

}  // namespace

std::vector<Term> flatten_seq(const Term& t) {
    std::vector<Term> out;
    flatten_into(t, out);
    return out;
}

Term normalize_seq(const Term& t) {
    switch (t->kind) {
        case NodeKind::Prim:
        case NodeKind::Meta:
            return t;
        case NodeKind::Seq: {
            if (t->ann) {
                auto bare = std::make_shared<Node>(*t);
                bare->ann.reset();
                bare->ty.reset();
                auto r = std::make_shared<Node>(*normalize_seq(bare));
                r->ann = t->ann;
                r->ty = t->ty;
                r->loc = t->loc;
                return r;
            }
            std::vector<Term> parts;
            for (const auto& p : flatten_seq(t)) parts.push_back(normalize_seq(p));
            return seq_chain(parts);
        }
        case NodeKind::Sum:
        case NodeKind::Prod: {
            Term a = normalize_seq(t->a), b = normalize_seq(t->b);
            if (a == t->a && b == t->b) return t;
            auto n = std::make_shared<Node>(*t);
            n->a = a;
            n->b = b;
            n->expansion = nullptr;
            return n;
        }
        case NodeKind::Macro: {
            auto n = std::make_shared<Node>(*t);
            bool changed = false;
            for (auto& arg : n->args)
                if (arg.term) {
                    Term r = normalize_seq(arg.term);
                    changed |= r != arg.term;
                    arg.term = r;
                }
            if (!changed) return t;
            n->expansion = nullptr;
            return n;
        }
    }
    return t;
}

Term power(const Term& t, int n) {
    if (n < 1) throw std::invalid_argument("power needs n >= 1");
    std::vector<Term> parts(static_cast<size_t>(n), t);
    return seq_chain(parts);
}

namespace {

bool ann_equal(const std::optional<TypePair>& a, const std::optional<TypePair>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return type_equal(a->src, b->src) && type_equal(a->dst, b->dst);
}

}  // namespace

bool syntax_equal(const Term& a, const Term& b, bool compare_annotations) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (compare_annotations && !ann_equal(a->ann, b->ann)) return false;
    switch (a->kind) {
        case NodeKind::Prim:
            return a->prim == b->prim;
        case NodeKind::Meta:
            return a->name == b->name;
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod:
            return syntax_equal(a->a, b->a, compare_annotations) && syntax_equal(a->b, b->b, compare_annotations);
        case NodeKind::Macro:
            if (a->name != b->name || a->args.size() != b->args.size()) return false;
            for (size_t i = 0; i < a->args.size(); ++i) {
                const auto &x = a->args[i], &y = b->args[i];
                if (x.is_int != y.is_int) return false;
                if (x.is_int) {
                    if (x.var != y.var || (x.var.empty() && x.value != y.value)) return false;
                } else if (!syntax_equal(x.term, y.term, compare_annotations)) {
                    return false;
                }
            }
            return true;
    }
    return false;
}

size_t term_size(const Term& t) {
    switch (t->kind) {
        case NodeKind::Prim:
        case NodeKind::Meta:
            return 1;
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod:
            return 1 + term_size(t->a) + term_size(t->b);
        case NodeKind::Macro: {
            size_t s = 1;
            for (const auto& arg : t->args) s += arg.term ? term_size(arg.term) : 1;
            return s;
        }
    }
    return 1;
}

Term strip_types(const Term& t) {
    auto n = std::make_shared<Node>(*t);
    n->ty.reset();
    n->expansion = nullptr;
    if (n->a) n->a = strip_types(n->a);
    if (n->b) n->b = strip_types(n->b);
    for (auto& arg : n->args)
        if (arg.term) arg.term = strip_types(arg.term);
    return n;
}

// ---------------------------------------------------------------- printing

namespace {

void print_term(std::ostream& out, const Term& t, int ctx);

void print_bare(std::ostream& out, const Term& t, int ctx) {
    switch (t->kind) {
        case NodeKind::Prim:
            out << prim_name(t->prim);
            return;
        case NodeKind::Meta:
            out << "?" << t->name;
            return;
        case NodeKind::Macro:
            out << t->name;
            if (!t->args.empty()) {
                out << "(";
                for (size_t i = 0; i < t->args.size(); ++i) {
                    if (i) out << ", ";
                    const auto& a = t->args[i];
                    if (a.is_int)
                        out << (a.var.empty() ? std::to_string(a.value) : a.var);
                    else
                        print_term(out, a.term, -1);
                }
                out << ")";
            }
            return;
        case NodeKind::Seq:
            if (ctx > 0) out << "(";
            print_term(out, t->a, 1);
            out << " ; ";
            print_term(out, t->b, 0);
            if (ctx > 0) out << ")";
            return;
        case NodeKind::Sum:
            if (ctx > 1) out << "(";
            print_term(out, t->a, 1);
            out << " + ";
            print_term(out, t->b, 2);
            if (ctx > 1) out << ")";
            return;
        case NodeKind::Prod:
            if (ctx > 2) out << "(";
            print_term(out, t->a, 2);
            out << " * ";
            print_term(out, t->b, 3);
            if (ctx > 2) out << ")";
            return;
    }
}

void print_term(std::ostream& out, const Term& t, int ctx) {
    if (t->ann) {
        if (ctx >= 0) out << "(";
        print_bare(out, t, 0);
        out << " : " << type_pair_to_string(*t->ann);
        if (ctx >= 0) out << ")";
        return;
    }
    print_bare(out, t, ctx);
}

}  // namespace

std::string pretty(const Term& t) {
    std::ostringstream out;
    print_term(out, t, -1);
    return out.str();
}

}  // namespace sqrtpi
