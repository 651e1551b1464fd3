#include <functional>
#include <map>

#include "sqrtpi/gates.hpp"
#include "sqrtpi/lang.hpp"

namespace sqrtpi {

namespace {

std::string where(const Term& n) {
    std::string s = pretty(n);
    if (s.size() > 80) s = s.substr(0, 77) + "...";
    std::string loc = n->loc.line > 0 ? " at " + std::to_string(n->loc.line) + ":" + std::to_string(n->loc.col) : "";
    return "'" + s + "'" + loc;
}

class Checker {
public:
    struct Info {
        Type s, d;
        std::vector<Info> kids;
        Term expansion;  // untyped expansion for macros
    };

    Info infer(const Term& n) {
        Info info;
        switch (n->kind) {
            case NodeKind::Prim:
                prim_scheme(n->prim, info);
                break;
            case NodeKind::Seq: {
                info.kids.push_back(infer(n->a));
                info.kids.push_back(infer(n->b));
                unify(info.kids[0].d, info.kids[1].s, n);
                info.s = info.kids[0].s;
                info.d = info.kids[1].d;
                break;
            }
            case NodeKind::Sum:
            case NodeKind::Prod: {
                info.kids.push_back(infer(n->a));
                info.kids.push_back(infer(n->b));
                auto mk = n->kind == NodeKind::Sum ? sum_type : prod_type;
                info.s = mk(info.kids[0].s, info.kids[1].s);
                info.d = mk(info.kids[0].d, info.kids[1].d);
                break;
            }
            case NodeKind::Macro: {
                Term e;
                try {
                    e = gates::expand_once(*n);
                } catch (const std::invalid_argument& ex) {
                    throw TypeError(std::string(ex.what()) + " in " + where(n), n);
                }
                if (++depth_ > 200) throw TypeError("macro expansion too deep in " + where(n), n);
                info.kids.push_back(infer(e));
                --depth_;
                info.expansion = e;
                info.s = info.kids[0].s;
                info.d = info.kids[0].d;
                break;
            }
            case NodeKind::Meta:
                throw TypeError("metavariable ?" + n->name + " cannot be type checked", n);
        }
        if (n->ty) {
            unify(info.s, n->ty->src, n);
            unify(info.d, n->ty->dst, n);
        }
        if (n->ann) {
            unify(info.s, local(n->ann->src), n);
            unify(info.d, local(n->ann->dst), n);
        }
        return info;
    }

    void constrain(const Info& info, const TypePair& expected, const Term& root) {
        unify(info.s, local(expected.src), root);
        unify(info.d, local(expected.dst), root);
    }

    Term build(const Term& n, const Info& info) {
        auto out = std::make_shared<Node>(*n);
        out->ty = TypePair{ground(info.s, n), ground(info.d, n)};
        switch (n->kind) {
            case NodeKind::Seq:
            case NodeKind::Sum:
            case NodeKind::Prod:
                out->a = build(n->a, info.kids[0]);
                out->b = build(n->b, info.kids[1]);
                break;
            case NodeKind::Macro:
                out->expansion = build(info.expansion, info.kids[0]);
                break;
            default:
                break;
        }
        return out;
    }

private:
    std::vector<Type> subst_;
    std::map<std::string, Type> named_;
    int depth_ = 0;

    Type fresh() {
        subst_.push_back(nullptr);
        return var_type(static_cast<int>(subst_.size()) - 1);
    }

    // user-written type variables are shared by name across the term
    Type local(const Type& t) {
        switch (t->kind) {
            case TypeKind::Var: {
                if (t->var >= 0) return t;
                auto it = named_.find(t->name);
                if (it != named_.end()) return it->second;
                Type v = fresh();
                named_.emplace(t->name, v);
                return v;
            }
            case TypeKind::Sum:
                return sum_type(local(t->a), local(t->b));
            case TypeKind::Prod:
                return prod_type(local(t->a), local(t->b));
            default:
                return t;
        }
    }

    Type walk(Type t) const {
        while (t->kind == TypeKind::Var && t->var >= 0 && subst_[t->var]) t = subst_[t->var];
        return t;
    }

    Type resolve(const Type& t) const {
        Type w = walk(t);
        switch (w->kind) {
            case TypeKind::Sum:
                return sum_type(resolve(w->a), resolve(w->b));
            case TypeKind::Prod:
                return prod_type(resolve(w->a), resolve(w->b));
            default:
                return w;
        }
    }

    bool occurs(int v, const Type& t) const {
        Type w = walk(t);
        if (w->kind == TypeKind::Var) return w->var == v;
        if (w->kind == TypeKind::Sum || w->kind == TypeKind::Prod) return occurs(v, w->a) || occurs(v, w->b);
        return false;
    }

    void unify(const Type& x, const Type& y, const Term& node) {
        Type a = walk(x), b = walk(y);
        if (a == b) return;
        if (a->kind == TypeKind::Var && b->kind == TypeKind::Var && a->var == b->var) return;
        if (a->kind == TypeKind::Var) {
            if (occurs(a->var, b)) clash(a, b, node, "occurs check");
            subst_[a->var] = b;
            return;
        }
        if (b->kind == TypeKind::Var) {
            unify(b, a, node);
            return;
        }
        if (a->kind != b->kind) clash(a, b, node, "constructor clash");
        if (a->kind == TypeKind::Sum || a->kind == TypeKind::Prod) {
            unify(a->a, b->a, node);
            unify(a->b, b->b, node);
        }
    }

    [[noreturn]] void clash(const Type& a, const Type& b, const Term& node, const char* why) {
        Type ra = resolve(a), rb = resolve(b);
        throw UnificationFailure("cannot unify " + type_to_string(ra) + " with " + type_to_string(rb) + " (" + why +
                                     ") in " + where(node),
                                 ra, rb, node);
    }

    Type ground(const Type& t, const Term& node) const {
        Type r = resolve(t);
        if (!is_ground(r))
            throw UnresolvedMetavariable("type of " + where(node) + " stays polymorphic (" + type_to_string(r) +
                                             "); supply an annotation or expected type",
                                         node);
        return r;
    }

    void prim_scheme(Prim p, Info& info) {
        Type a = fresh(), b = fresh(), c = fresh();
        Type two = two_type(), one = one_type(), zero = zero_type();
        switch (p) {
            case Prim::Id:
                info.s = a, info.d = a;
                break;
            case Prim::SwapP:
                info.s = sum_type(a, b), info.d = sum_type(b, a);
                break;
            case Prim::AssocrP:
                info.s = sum_type(sum_type(a, b), c), info.d = sum_type(a, sum_type(b, c));
                break;
            case Prim::AssoclP:
                info.s = sum_type(a, sum_type(b, c)), info.d = sum_type(sum_type(a, b), c);
                break;
            case Prim::UnitePl:
                info.s = sum_type(zero, a), info.d = a;
                break;
            case Prim::UnitiPl:
                info.s = a, info.d = sum_type(zero, a);
                break;
            case Prim::Absorbl:
                info.s = prod_type(a, zero), info.d = zero;
                break;
            case Prim::Factorzr:
                info.s = zero, info.d = prod_type(a, zero);
                break;
            case Prim::SwapT:
                info.s = prod_type(a, b), info.d = prod_type(b, a);
                break;
            case Prim::AssocrT:
                info.s = prod_type(prod_type(a, b), c), info.d = prod_type(a, prod_type(b, c));
                break;
            case Prim::AssoclT:
                info.s = prod_type(a, prod_type(b, c)), info.d = prod_type(prod_type(a, b), c);
                break;
            case Prim::UniteTl:
                info.s = prod_type(one, a), info.d = a;
                break;
            case Prim::UnitiTl:
                info.s = a, info.d = prod_type(one, a);
                break;
            case Prim::Dist:
                info.s = prod_type(sum_type(a, b), c), info.d = sum_type(prod_type(a, c), prod_type(b, c));
                break;
            case Prim::Factor:
                info.s = sum_type(prod_type(a, c), prod_type(b, c)), info.d = prod_type(sum_type(a, b), c);
                break;
            case Prim::V:
            case Prim::Vi:
                info.s = two, info.d = two;
                break;
            case Prim::W:
            case Prim::Wi:
                info.s = one, info.d = one;
                break;
        }
    }
};

}  // namespace

Term typecheck(const Term& t, std::optional<TypePair> expected) {
    Checker c;
    auto info = c.infer(t);
    if (expected) c.constrain(info, *expected, t);
    return c.build(t, info);
}

Term invert(const Term& t) {
    std::shared_ptr<Node> out;
    switch (t->kind) {
        case NodeKind::Prim:
            out = std::make_shared<Node>(*t);
            out->prim = prim_dual(t->prim);
            break;
        case NodeKind::Seq:
            out = std::make_shared<Node>(*t);
            out->a = invert(t->b);
            out->b = invert(t->a);
            break;
        case NodeKind::Sum:
        case NodeKind::Prod:
            out = std::make_shared<Node>(*t);
            out->a = invert(t->a);
            out->b = invert(t->b);
            break;
        case NodeKind::Meta:
            out = std::const_pointer_cast<Node>(make_macro("inv", {term_arg(t)}, t->loc));
            out->ann = t->ann;
            out->ty = t->ty;
            break;
        case NodeKind::Macro: {
            Term r = gates::invert_macro(*t);
            out = std::make_shared<Node>(*r);
            out->ann = t->ann;
            out->ty = t->ty;
            out->loc = t->loc;
            out->expansion = t->expansion ? invert(t->expansion) : nullptr;
            break;
        }
    }
    if (out->ann) out->ann = TypePair{out->ann->dst, out->ann->src};
    if (out->ty) out->ty = TypePair{out->ty->dst, out->ty->src};
    return out;
}

Term expand_macros(const Term& t) {
    switch (t->kind) {
        case NodeKind::Prim:
        case NodeKind::Meta:
            return t;
        case NodeKind::Seq:
        case NodeKind::Sum:
        case NodeKind::Prod: {
            auto out = std::make_shared<Node>(*t);
            out->a = expand_macros(t->a);
            out->b = expand_macros(t->b);
            return out;
        }
        case NodeKind::Macro: {
            Term e = expand_macros(t->expansion ? t->expansion : gates::expand_once(*t));
            if (t->ann) {
                auto out = std::make_shared<Node>(*e);
                if (out->ann) return annotate(make_seq(e, make_prim(Prim::Id)), *t->ann);
                out->ann = t->ann;
                return out;
            }
            return e;
        }
    }
    return t;
}

}  // namespace sqrtpi
