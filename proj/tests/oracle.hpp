#pragma once

// Reference semantics used only by the tests. Numbers are kept as
// (a + b*sqrt2) + i*(c + d*sqrt2) over the rationals, and the classical
// combinators are evaluated on explicit values rather than on index maps.

#include <gmpxx.h>

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "sqrtpi/lang.hpp"
#include "sqrtpi/semantics.hpp"

namespace oracle {

struct Num {
    mpq_class a = 0, b = 0, c = 0, d = 0;

    friend Num operator+(const Num& x, const Num& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
    friend Num operator-(const Num& x, const Num& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
    friend Num operator*(const Num& x, const Num& y) {
        // real parts (x.a + x.b r), (y.a + y.b r) with r^2 = 2
        auto rmul = [](const mpq_class& p, const mpq_class& q, const mpq_class& s, const mpq_class& t) {
            return std::pair<mpq_class, mpq_class>{p * s + 2 * q * t, p * t + q * s};
        };
        auto [re1, re1r] = rmul(x.a, x.b, y.a, y.b);
        auto [re2, re2r] = rmul(x.c, x.d, y.c, y.d);
        auto [im1, im1r] = rmul(x.a, x.b, y.c, y.d);
        auto [im2, im2r] = rmul(x.c, x.d, y.a, y.b);
        return {re1 - re2, re1r - re2r, im1 + im2, im1r + im2r};
    }
    friend bool operator==(const Num& x, const Num& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }
    Num conj() const { return {a, b, -c, -d}; }
    bool zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
};

inline Num integer(long v) { return {v, 0, 0, 0}; }
inline Num gaussian(mpq_class re, mpq_class im) { return {re, 0, im, 0}; }
inline Num omega() { return {0, mpq_class(1, 2), 0, mpq_class(1, 2)}; }
inline Num omega_pow(int k) {
    Num r = integer(1);
    for (int i = 0; i < ((k % 8) + 8) % 8; ++i) r = r * omega();
    return r;
}

inline mpq_class to_q(const sqrtpi::Dyadic& d) {
    mpz_class den = 1;
    den <<= d.log2_denominator();
    return mpq_class(d.numerator(), den);
}

inline Num from_lib(const sqrtpi::DyadicCyclotomic& x) {
    Num r;
    for (int k = 0; k < 4; ++k) r = r + Num{to_q(x.coeff(k)), 0, 0, 0} * omega_pow(k);
    return r;
}

using Mat = std::vector<std::vector<Num>>;

inline Mat zeros(size_t r, size_t c) { return Mat(r, std::vector<Num>(c)); }
inline size_t rows(const Mat& m) { return m.size(); }
inline size_t cols(const Mat& m, size_t fallback = 0) { return m.empty() ? fallback : m[0].size(); }

inline Mat identity(size_t n) {
    Mat m = zeros(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = integer(1);
    return m;
}

inline Mat from_lib(const sqrtpi::ExactMatrix& m) {
    Mat r = zeros(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r[i][j] = from_lib(m(i, j));
    return r;
}

inline Mat from_rows(std::vector<std::vector<Num>> v) { return v; }

inline Mat mul(const Mat& x, const Mat& y) {
    size_t n = x.size(), k = y.size(), m = y.empty() ? 0 : y[0].size();
    Mat r = zeros(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t l = 0; l < k; ++l) r[i][j] = r[i][j] + x[i][l] * y[l][j];
    return r;
}

inline Mat kron(const Mat& x, const Mat& y) {
    size_t xr = x.size(), xc = xr ? x[0].size() : 0, yr = y.size(), yc = yr ? y[0].size() : 0;
    Mat r = zeros(xr * yr, xc * yc);
    for (size_t i = 0; i < xr; ++i)
        for (size_t j = 0; j < xc; ++j)
            for (size_t k = 0; k < yr; ++k)
                for (size_t l = 0; l < yc; ++l) r[i * yr + k][j * yc + l] = x[i][j] * y[k][l];
    return r;
}

inline Mat dsum(const Mat& x, const Mat& y) {
    size_t xr = x.size(), xc = xr ? x[0].size() : 0, yr = y.size(), yc = yr ? y[0].size() : 0;
    Mat r = zeros(xr + yr, xc + yc);
    for (size_t i = 0; i < xr; ++i)
        for (size_t j = 0; j < xc; ++j) r[i][j] = x[i][j];
    for (size_t i = 0; i < yr; ++i)
        for (size_t j = 0; j < yc; ++j) r[xr + i][xc + j] = y[i][j];
    return r;
}

inline Mat adjoint(const Mat& x) {
    size_t n = x.size(), m = n ? x[0].size() : 0;
    Mat r = zeros(m, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) r[j][i] = x[i][j].conj();
    return r;
}

inline Mat scale(const Mat& x, const Num& s) {
    Mat r = x;
    for (auto& row : r)
        for (auto& e : row) e = e * s;
    return r;
}

inline bool equal(const Mat& x, const Mat& y) { return x == y; }

// Textbook gates.
inline Mat H() {
    Num r{0, mpq_class(1, 2), 0, 0};  // 1/sqrt2
    Num m{0, mpq_class(-1, 2), 0, 0};
    return {{r, r}, {r, m}};
}
inline Mat X() { return {{integer(0), integer(1)}, {integer(1), integer(0)}}; }
inline Mat diag(std::vector<Num> d) {
    Mat m = zeros(d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return m;
}
inline Mat phase(int k) { return diag({integer(1), omega_pow(k)}); }
inline Mat V() { return mul(mul(H(), diag({integer(-1), gaussian(0, 1)})), H()); }
inline Mat controlled(const Mat& u) { return dsum(identity(u.size()), u); }

// ---------------------------------------------------------------- values of finite types

struct Val {
    enum Kind { Unit, Inl, Inr, Pair } kind;
    std::shared_ptr<const Val> x, y;
};
using Value = std::shared_ptr<const Val>;

inline Value unit() { return std::make_shared<Val>(Val{Val::Unit, nullptr, nullptr}); }
inline Value inl(Value v) { return std::make_shared<Val>(Val{Val::Inl, v, nullptr}); }
inline Value inr(Value v) { return std::make_shared<Val>(Val{Val::Inr, v, nullptr}); }
inline Value pair(Value a, Value b) { return std::make_shared<Val>(Val{Val::Pair, a, b}); }

// Enumeration order: all left injections before right ones, pairs with the
// first component most significant.
inline std::vector<Value> values(const sqrtpi::Type& t) {
    using sqrtpi::TypeKind;
    switch (t->kind) {
        case TypeKind::Zero:
            return {};
        case TypeKind::One:
            return {unit()};
        case TypeKind::Sum: {
            std::vector<Value> out;
            for (auto& v : values(t->a)) out.push_back(inl(v));
            for (auto& v : values(t->b)) out.push_back(inr(v));
            return out;
        }
        case TypeKind::Prod: {
            std::vector<Value> out;
            auto bs = values(t->b);
            for (auto& a : values(t->a))
                for (auto& b : bs) out.push_back(pair(a, b));
            return out;
        }
        default:
            throw std::logic_error("values of a type variable");
    }
}

inline size_t count(const sqrtpi::Type& t) { return values(t).size(); }

inline size_t index_of(const sqrtpi::Type& t, const Value& v) {
    using sqrtpi::TypeKind;
    switch (t->kind) {
        case TypeKind::One:
            return 0;
        case TypeKind::Sum:
            return v->kind == Val::Inl ? index_of(t->a, v->x) : count(t->a) + index_of(t->b, v->x);
        case TypeKind::Prod:
            return index_of(t->a, v->x) * count(t->b) + index_of(t->b, v->y);
        default:
            throw std::logic_error("index_of: bad type");
    }
}

inline Value apply_prim(sqrtpi::Prim p, const Value& v) {
    using sqrtpi::Prim;
    switch (p) {
        case Prim::Id:
            return v;
        case Prim::SwapP:
            return v->kind == Val::Inl ? inr(v->x) : inl(v->x);
        case Prim::AssocrP:  // (a + b) + c -> a + (b + c)
            if (v->kind == Val::Inl) return v->x->kind == Val::Inl ? inl(v->x->x) : inr(inl(v->x->x));
            return inr(inr(v->x));
        case Prim::AssoclP:  // a + (b + c) -> (a + b) + c
            if (v->kind == Val::Inl) return inl(inl(v->x));
            return v->x->kind == Val::Inl ? inl(inr(v->x->x)) : inr(v->x->x);
        case Prim::UnitePl:
            return v->x;
        case Prim::UnitiPl:
            return inr(v);
        case Prim::SwapT:
            return pair(v->y, v->x);
        case Prim::AssocrT:
            return pair(v->x->x, pair(v->x->y, v->y));
        case Prim::AssoclT:
            return pair(pair(v->x, v->y->x), v->y->y);
        case Prim::UniteTl:
            return v->y;
        case Prim::UnitiTl:
            return pair(unit(), v);
        case Prim::Dist:  // (a + b) * c -> a * c + b * c
            return v->x->kind == Val::Inl ? inl(pair(v->x->x, v->y)) : inr(pair(v->x->x, v->y));
        case Prim::Factor:
            return v->kind == Val::Inl ? pair(inl(v->x->x), v->x->y) : pair(inr(v->x->x), v->x->y);
        default:
            throw std::logic_error("apply_prim: not a bijection on values");
    }
}

// Independent fold over a typed term.
inline Mat denote(const sqrtpi::Term& t) {
    using sqrtpi::NodeKind;
    using sqrtpi::Prim;
    switch (t->kind) {
        case NodeKind::Prim: {
            switch (t->prim) {
                case Prim::V:
                    return V();
                case Prim::Vi:
                    return adjoint(V());
                case Prim::W:
                    return {{omega()}};
                case Prim::Wi:
                    return {{omega_pow(7)}};
                case Prim::Absorbl:
                case Prim::Factorzr:
                    return zeros(count(t->ty->dst), count(t->ty->src));
                default: {
                    auto src = values(t->ty->src);
                    Mat m = zeros(count(t->ty->dst), src.size());
                    for (size_t j = 0; j < src.size(); ++j) m[index_of(t->ty->dst, apply_prim(t->prim, src[j]))][j] = integer(1);
                    return m;
                }
            }
        }
        case NodeKind::Seq: {
            Mat a = denote(t->a), b = denote(t->b);
            if (a.empty() || b.empty()) return zeros(count(t->ty->dst), count(t->ty->src));
            return mul(b, a);
        }
        case NodeKind::Sum: {
            Mat a = denote(t->a), b = denote(t->b);
            Mat r = zeros(count(t->ty->dst), count(t->ty->src));
            size_t ar = count(t->a->ty->dst), ac = count(t->a->ty->src);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j];
            for (size_t i = 0; i < b.size(); ++i)
                for (size_t j = 0; j < b[i].size(); ++j) r[ar + i][ac + j] = b[i][j];
            return r;
        }
        case NodeKind::Prod: {
            Mat a = denote(t->a), b = denote(t->b);
            if (a.empty() || b.empty()) return zeros(count(t->ty->dst), count(t->ty->src));
            return kron(a, b);
        }
        case NodeKind::Macro:
            return denote(t->expansion);
        default:
            throw std::logic_error("denote: metavariable");
    }
}

// ---------------------------------------------------------------- random well-typed terms

// Random terms are built from a chosen source type; each generator returns
// the term together with its target type.
class TermGen {
public:
    explicit TermGen(unsigned seed) : rng_(seed) {}

    struct Out {
        sqrtpi::Term term;
        sqrtpi::Type dst;
    };

    sqrtpi::Type random_type(int budget = 16) {
        using namespace sqrtpi;
        static const char* const pool[] = {"1",           "2",         "1 + 2",     "2 * 2",       "2 + 2",
                                           "(1 + 1) + 1", "2 * (1 + 2)", "2 * (2 * 2)", "(2 + 1) * 2", "1 * 2",
                                           "(2 * 2) + 2", "1 + (2 * 2)"};
        while (true) {
            Type t = parse_type(pool[pick(std::size(pool))]);
            if (dimension(t) <= budget) return t;
        }
    }

    Out gen(const sqrtpi::Type& t, int depth) {
        using namespace sqrtpi;
        std::vector<std::function<std::optional<Out>()>> options;
        options.push_back([&]() -> std::optional<Out> { return Out{make_prim(Prim::Id), t}; });
        if (depth > 0) {
            options.push_back([&]() -> std::optional<Out> {
                Out a = gen(t, depth - 1);
                Out b = gen(a.dst, depth - 1);
                return Out{make_seq(a.term, b.term), b.dst};
            });
        }
        switch (t->kind) {
            case TypeKind::One:
                options.push_back([&]() -> std::optional<Out> { return Out{make_prim(Prim::W), t}; });
                options.push_back([&]() -> std::optional<Out> { return Out{make_prim(Prim::Wi), t}; });
                options.push_back([&]() -> std::optional<Out> {
                    return Out{make_prim(Prim::UnitiTl), prod_type(one_type(), t)};
                });
                break;
            case TypeKind::Sum:
                if (depth > 0)
                    options.push_back([&]() -> std::optional<Out> {
                        Out a = gen(t->a, depth - 1), b = gen(t->b, depth - 1);
                        return Out{make_sum(a.term, b.term), sum_type(a.dst, b.dst)};
                    });
                options.push_back([&]() -> std::optional<Out> { return Out{make_prim(Prim::SwapP), sum_type(t->b, t->a)}; });
                if (t->a->kind == TypeKind::Sum)
                    options.push_back([&]() -> std::optional<Out> {
                        return Out{make_prim(Prim::AssocrP), sum_type(t->a->a, sum_type(t->a->b, t->b))};
                    });
                if (t->b->kind == TypeKind::Sum)
                    options.push_back([&]() -> std::optional<Out> {
                        return Out{make_prim(Prim::AssoclP), sum_type(sum_type(t->a, t->b->a), t->b->b)};
                    });
                if (t->a->kind == TypeKind::Prod && t->b->kind == TypeKind::Prod && type_equal(t->a->b, t->b->b))
                    options.push_back([&]() -> std::optional<Out> {
                        return Out{make_prim(Prim::Factor), prod_type(sum_type(t->a->a, t->b->a), t->a->b)};
                    });
                if (type_equal(t, two_type())) {
                    for (const char* g : {"v", "vi", "x", "h", "s", "t", "z", "k", "sdg", "tdg"})
                        options.push_back([&, g]() -> std::optional<Out> { return Out{parse(g), t}; });
                    options.push_back([&]() -> std::optional<Out> {
                        Out s = gen(one_type(), depth > 0 ? depth - 1 : 0);
                        if (!type_equal(s.dst, one_type())) return std::nullopt;
                        return Out{make_macro("p", {term_arg(s.term)}), t};
                    });
                }
                break;
            case TypeKind::Prod:
                if (depth > 0)
                    options.push_back([&]() -> std::optional<Out> {
                        Out a = gen(t->a, depth - 1), b = gen(t->b, depth - 1);
                        return Out{make_prod(a.term, b.term), prod_type(a.dst, b.dst)};
                    });
                options.push_back([&]() -> std::optional<Out> { return Out{make_prim(Prim::SwapT), prod_type(t->b, t->a)}; });
                if (t->a->kind == TypeKind::Prod)
                    options.push_back([&]() -> std::optional<Out> {
                        return Out{make_prim(Prim::AssocrT), prod_type(t->a->a, prod_type(t->a->b, t->b))};
                    });
                if (t->b->kind == TypeKind::Prod)
                    options.push_back([&]() -> std::optional<Out> {
                        return Out{make_prim(Prim::AssoclT), prod_type(prod_type(t->a, t->b->a), t->b->b)};
                    });
                if (t->a->kind == TypeKind::One)
                    options.push_back([&]() -> std::optional<Out> { return Out{make_prim(Prim::UniteTl), t->b}; });
                if (t->a->kind == TypeKind::Sum)
                    options.push_back([&]() -> std::optional<Out> {
                        return Out{make_prim(Prim::Dist), sum_type(prod_type(t->a->a, t->b), prod_type(t->a->b, t->b))};
                    });
                if (type_equal(t, qubit_type(2))) {
                    for (const char* g : {"cx", "cz", "swap", "ch", "csx", "ncx"})
                        options.push_back([&, g]() -> std::optional<Out> { return Out{parse(g), t}; });
                    options.push_back([&]() -> std::optional<Out> {
                        Out u = gen(two_type(), depth > 0 ? depth - 1 : 0);
                        if (!type_equal(u.dst, two_type())) return std::nullopt;
                        return Out{make_macro("ctrl", {term_arg(u.term)}), t};
                    });
                    options.push_back([&]() -> std::optional<Out> {
                        Out s = gen(one_type(), depth > 0 ? depth - 1 : 0);
                        if (!type_equal(s.dst, one_type())) return std::nullopt;
                        return Out{make_macro("scale", {term_arg(s.term), term_arg(parse("cz"))}), t};
                    });
                }
                if (type_equal(t, qubit_type(3)))
                    options.push_back([&]() -> std::optional<Out> { return Out{parse("ccx"), t}; });
                break;
            default:
                break;
        }
        for (int attempt = 0; attempt < 16; ++attempt)
            if (auto r = options[pick(options.size())]()) return *r;
        return Out{make_prim(Prim::Id), t};
    }

    // A typed random term whose source is a random type.
    sqrtpi::Term typed(int depth) {
        sqrtpi::Type t = random_type();
        Out o = gen(t, depth);
        return sqrtpi::typecheck(o.term, sqrtpi::TypePair{t, o.dst});
    }

    size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }

private:
    std::mt19937 rng_;
};

}  // namespace oracle
