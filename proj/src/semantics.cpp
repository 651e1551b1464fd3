#include "sqrtpi/semantics.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace sqrtpi {

ExactMatrix::ExactMatrix(size_t rows, size_t cols, std::vector<DyadicCyclotomic> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
}

ExactMatrix ExactMatrix::identity(size_t n) {
    ExactMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = DyadicCyclotomic(1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<DyadicCyclotomic>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    ExactMatrix m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged rows");
        for (size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

ExactMatrix ExactMatrix::from_json(const nlohmann::json& j) {
    size_t r = j.at("rows").get<size_t>(), c = j.at("cols").get<size_t>();
    std::vector<DyadicCyclotomic> e;
    for (const auto& x : j.at("entries")) e.push_back(DyadicCyclotomic::from_json(x));
    return ExactMatrix(r, c, std::move(e));
}

ExactMatrix ExactMatrix::scaled(const DyadicCyclotomic& s) const {
    ExactMatrix m = *this;
    for (auto& x : m.e_) x = x * s;
    return m;
}

bool ExactMatrix::is_unitary() const {
    return rows_ == cols_ && compose(*this, adjoint(*this)) == identity(rows_);
}

nlohmann::json ExactMatrix::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& x : e_) entries.push_back(x.to_json());
    return {{"rows", rows_}, {"cols", cols_}, {"entries", entries}};
}

namespace {

DyadicCyclotomic pow2(unsigned long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
    return DyadicCyclotomic(Dyadic(p, 0), Dyadic(), Dyadic(), Dyadic());
}

bool gaussian_integer(const DyadicCyclotomic& x) {
    return x.is_gaussian() && x.coeff(0).log2_denominator() == 0 && x.coeff(2).log2_denominator() == 0;
}

std::string gaussian_text(const DyadicCyclotomic& x) {
    mpz_class a = x.coeff(0).numerator(), b = x.coeff(2).numerator();
    if (sgn(b) == 0) return a.get_str();
    mpz_class mag = abs(b);
    std::string im = (mag == 1 ? std::string() : mag.get_str()) + "i";
    if (sgn(a) == 0) return (sgn(b) < 0 ? "-" : "") + im;
    return a.get_str() + (sgn(b) < 0 ? "-" : "+") + im;
}

std::string grid(size_t rows, size_t cols, const std::vector<std::string>& cells) {
    if (rows == 0 || cols == 0) return "[] (" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
    std::vector<size_t> width(cols, 0);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) width[j] = std::max(width[j], cells[i * cols + j].size());
    std::ostringstream out;
    for (size_t i = 0; i < rows; ++i) {
        out << "[";
        for (size_t j = 0; j < cols; ++j) {
            const std::string& s = cells[i * cols + j];
            out << ' ' << std::string(width[j] - s.size(), ' ') << s;
        }
        out << " ]";
        if (i + 1 < rows) out << '\n';
    }
    return out.str();
}

}  // namespace

std::string ExactMatrix::to_string() const {
    unsigned long maxk = 0;
    for (const auto& x : e_) maxk = std::max(maxk, x.max_log2_denominator());
    const DyadicCyclotomic root2 = DyadicCyclotomic::sqrt2();
    for (unsigned long e = 0; e <= 2 * maxk + 1; ++e) {
        unsigned long k = e / 2, m = e % 2;
        DyadicCyclotomic f = pow2(k);
        if (m) f = f * root2;
        std::vector<std::string> cells;
        bool ok = true;
        for (const auto& x : e_) {
            DyadicCyclotomic y = x * f;
            if (!gaussian_integer(y)) {
                ok = false;
                break;
            }
            cells.push_back(gaussian_text(y));
        }
        if (!ok) continue;
        std::string prefix;
        if (e > 0) {
            std::string den = k ? pow2(k).coeff(0).numerator().get_str() : "";
            prefix = "(1/" + den + (m ? "√2" : "") + ")\n";
        }
        return prefix + grid(rows_, cols_, cells);
    }
    // entries leave the Gaussian subring: print over a common power of two
    DyadicCyclotomic f = pow2(maxk);
    std::vector<std::string> cells;
    for (const auto& x : e_) cells.push_back((x * f).to_string());
    std::string prefix = maxk ? "(1/" + f.coeff(0).numerator().get_str() + ")\n" : "";
    return prefix + grid(rows_, cols_, cells);
}

std::string ExactMatrix::to_float_string(int digits) const {
    std::vector<std::string> cells;
    for (const auto& x : e_) {
        auto z = x.to_complex();
        double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
        double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.*f%+.*fi", digits, re, digits, im);
        cells.emplace_back(buf);
    }
    return "(approximate)\n" + grid(rows_, cols_, cells);
}

ExactMatrix compose(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("compose: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    ExactMatrix m(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t l = 0; l < a.cols(); ++l) {
            const auto& x = a(i, l);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                const auto& y = b(l, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    return m;
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i1 = 0; i1 < a.rows(); ++i1)
        for (size_t j1 = 0; j1 < a.cols(); ++j1) {
            const auto& x = a(i1, j1);
            if (x.is_zero()) continue;
            for (size_t i2 = 0; i2 < b.rows(); ++i2)
                for (size_t j2 = 0; j2 < b.cols(); ++j2)
                    if (!b(i2, j2).is_zero()) m(i1 * b.rows() + i2, j1 * b.cols() + j2) = x * b(i2, j2);
        }
    return m;
}

ExactMatrix adjoint(const ExactMatrix& a) {
    ExactMatrix m(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m(j, i) = a(i, j).conjugate();
    return m;
}

namespace {

ExactMatrix v_matrix() {
    // (1/2) [[-1+i, -1-i], [-1-i, -1+i]]
    DyadicCyclotomic a = (DyadicCyclotomic(-1) + DyadicCyclotomic::omega_pow(2)).halved();
    DyadicCyclotomic b = (DyadicCyclotomic(-1) - DyadicCyclotomic::omega_pow(2)).halved();
    return ExactMatrix::from_rows({{a, b}, {b, a}});
}

ExactMatrix permutation(size_t n, const std::function<size_t(size_t)>& f) {
    ExactMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(f(i), i) = DyadicCyclotomic(1);
    return m;
}

}  // namespace

ExactMatrix prim_matrix(Prim p, const Type& src) {
    size_t d = static_cast<size_t>(dimension(src));
    switch (p) {
        case Prim::SwapP: {
            size_t da = dimension(src->a), db = dimension(src->b);
            return permutation(d, [=](size_t i) { return i < da ? db + i : i - da; });
        }
        case Prim::SwapT: {
            size_t d1 = dimension(src->a), d2 = dimension(src->b);
            return permutation(d, [=](size_t i) { return (i % d2) * d1 + i / d2; });
        }
        case Prim::V:
            return v_matrix();
        case Prim::Vi: {
            ExactMatrix v = v_matrix();
            return compose(v, compose(v, v));
        }
        case Prim::W:
            return ExactMatrix(1, 1, {DyadicCyclotomic::omega_pow(1)});
        case Prim::Wi:
            return ExactMatrix(1, 1, {DyadicCyclotomic::omega_pow(7)});
        case Prim::Absorbl:
            return ExactMatrix(0, d);
        case Prim::Factorzr:
            return ExactMatrix(static_cast<size_t>(dimension(prod_type(src, zero_type()))), 0);
        default:
            // id, associators, unitors, dist and factor are identities under the index conventions
            return ExactMatrix::identity(d);
    }
}

namespace {

class Evaluator {
public:
    ExactMatrix run(const Term& t) {
        auto it = memo_.find(t.get());
        if (it != memo_.end()) return it->second;
        ExactMatrix m = compute(t);
        memo_.emplace(t.get(), m);
        return m;
    }

private:
    std::unordered_map<const Node*, ExactMatrix> memo_;

    ExactMatrix compute(const Term& t) {
        if (!t->ty) throw TypeError("eval needs a type checked term", t);
        switch (t->kind) {
            case NodeKind::Prim:
                return prim_matrix(t->prim, t->ty->src);
            case NodeKind::Seq:
                return compose(run(t->b), run(t->a));
            case NodeKind::Sum:
                return direct_sum(run(t->a), run(t->b));
            case NodeKind::Prod:
                return kronecker(run(t->a), run(t->b));
            case NodeKind::Macro:
                if (!t->expansion) throw TypeError("macro " + t->name + " has no typed expansion", t);
                return run(t->expansion);
            case NodeKind::Meta:
                break;
        }
        throw TypeError("cannot evaluate metavariable ?" + t->name, t);
    }
};

}  // namespace

ExactMatrix eval(const Term& t) {
    Term typed = t->ty ? t : typecheck(t);
    return Evaluator().run(typed);
}

std::string Comparison::describe() const {
    switch (verdict) {
        case Verdict::Equal:
            return "equal";
        case Verdict::EqualWithPhase:
            return "equal_with_phase " + std::to_string(phase);
        case Verdict::NotEqual:
            break;
    }
    return "not_equal";
}

Comparison equal_matrices(const ExactMatrix& a, const ExactMatrix& b, PhaseMode mode) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("cannot compare " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " with " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Comparison c;
    for (size_t i = 0; i < a.rows() && !c.first_difference; ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) {
                c.first_difference = std::make_pair(i, j);
                break;
            }
    if (!c.first_difference) {
        c.verdict = Verdict::Equal;
        return c;
    }
    if (mode == PhaseMode::UpToOmegaPower) {
        for (int k = 1; k < 8; ++k)
            if (a == b.scaled(DyadicCyclotomic::omega_pow(k))) {
                c.verdict = Verdict::EqualWithPhase;
                c.phase = k;
                return c;
            }
    }
    return c;
}

}  // namespace sqrtpi
