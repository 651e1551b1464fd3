#include "sqrtpi/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqrtpi {

Dyadic::Dyadic(mpz_class num, unsigned long k) : num_(std::move(num)), k_(k) { normalize(); }

void Dyadic::normalize() {
    if (sgn(num_) == 0) {
        k_ = 0;
        return;
    }
    if (k_ == 0) return;
    unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
    unsigned long s = tz < k_ ? tz : k_;
    if (s > 0) {
        mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), s);
        k_ -= s;
    }
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.num_ = -num_;
    r.k_ = k_;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    mpz_class n;
    unsigned long k;
    if (a.k_ == b.k_) {
        n = a.num_ + b.num_;
        k = a.k_;
    } else if (a.k_ > b.k_) {
        mpz_mul_2exp(n.get_mpz_t(), b.num_.get_mpz_t(), a.k_ - b.k_);
        n += a.num_;
        k = a.k_;
    } else {
        mpz_mul_2exp(n.get_mpz_t(), a.num_.get_mpz_t(), b.k_ - a.k_);
        n += b.num_;
        k = b.k_;
    }
    return Dyadic(std::move(n), k);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    return Dyadic(a.num_ * b.num_, a.k_ + b.k_);
}

double Dyadic::to_double() const { return std::ldexp(num_.get_d(), -static_cast<int>(k_)); }

std::string Dyadic::to_string() const {
    std::string s = num_.get_str();
    if (k_ == 0) return s;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k_);
    return s + "/" + den.get_str();
}

// ---------------------------------------------------------------------------

DyadicCyclotomic DyadicCyclotomic::omega_pow(long n) {
    long m = ((n % 8) + 8) % 8;
    DyadicCyclotomic r;
    if (m < 4)
        r.c_[m] = Dyadic(1);
    else
        r.c_[m - 4] = Dyadic(-1);
    return r;
}

DyadicCyclotomic DyadicCyclotomic::sqrt2() { return omega_pow(1) - omega_pow(3); }

DyadicCyclotomic DyadicCyclotomic::inv_sqrt2() { return sqrt2().halved(); }

bool DyadicCyclotomic::is_zero() const {
    return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

bool DyadicCyclotomic::is_one() const {
    return c_[0] == Dyadic(1) && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

unsigned long DyadicCyclotomic::max_log2_denominator() const {
    unsigned long k = 0;
    for (const auto& d : c_) k = std::max(k, d.log2_denominator());
    return k;
}

DyadicCyclotomic DyadicCyclotomic::conjugate() const { return {c_[0], -c_[3], -c_[2], -c_[1]}; }

DyadicCyclotomic DyadicCyclotomic::times_omega_pow(long n) const {
    long m = ((n % 8) + 8) % 8;
    DyadicCyclotomic r = *this;
    for (long s = 0; s < m; ++s) r = DyadicCyclotomic(-r.c_[3], r.c_[0], r.c_[1], r.c_[2]);
    return r;
}

DyadicCyclotomic DyadicCyclotomic::halved(unsigned long n) const {
    return {c_[0].halved(n), c_[1].halved(n), c_[2].halved(n), c_[3].halved(n)};
}

DyadicCyclotomic DyadicCyclotomic::operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

DyadicCyclotomic operator+(const DyadicCyclotomic& a, const DyadicCyclotomic& b) {
    return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
}

DyadicCyclotomic operator-(const DyadicCyclotomic& a, const DyadicCyclotomic& b) { return a + (-b); }

DyadicCyclotomic& DyadicCyclotomic::operator+=(const DyadicCyclotomic& b) {
    for (int i = 0; i < 4; ++i)
        if (!b.c_[i].is_zero()) c_[i] = c_[i] + b.c_[i];
    return *this;
}

DyadicCyclotomic operator*(const DyadicCyclotomic& a, const DyadicCyclotomic& b) {
    DyadicCyclotomic r;
    for (int i = 0; i < 4; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j < 4; ++j) {
            if (b.c_[j].is_zero()) continue;
            Dyadic p = a.c_[i] * b.c_[j];
            int e = i + j;
            if (e < 4)
                r.c_[e] = r.c_[e] + p;
            else
                r.c_[e - 4] = r.c_[e - 4] - p;
        }
    }
    return r;
}

std::complex<double> DyadicCyclotomic::to_complex() const {
    const double h = std::sqrt(0.5);
    std::complex<double> w(h, h);
    std::complex<double> acc = 0, p = 1;
    for (int i = 0; i < 4; ++i) {
        acc += c_[i].to_double() * p;
        p *= w;
    }
    return acc;
}

std::string DyadicCyclotomic::to_string() const {
    if (is_zero()) return "0";
    unsigned long K = max_log2_denominator();
    std::ostringstream out;
    int terms = 0;
    for (int i = 0; i < 4; ++i) {
        const Dyadic& d = c_[i];
        if (d.is_zero()) continue;
        mpz_class n;
        mpz_mul_2exp(n.get_mpz_t(), d.numerator().get_mpz_t(), K - d.log2_denominator());
        bool neg = sgn(n) < 0;
        if (neg) n = -n;
        if (terms == 0)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        std::string mono = i == 0 ? "" : (i == 1 ? "w" : "w^" + std::to_string(i));
        if (mono.empty())
            out << n.get_str();
        else if (n == 1)
            out << mono;
        else
            out << n.get_str() << "*" << mono;
        ++terms;
    }
    std::string body = out.str();
    if (K == 0) return body;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, K);
    if (terms == 1) return body + "/" + den.get_str();
    return "(" + body + ")/" + den.get_str();
}

nlohmann::json DyadicCyclotomic::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : c_) {
        if (d.numerator().fits_slong_p())
            arr.push_back(d.numerator().get_si());
        else
            arr.push_back(d.numerator().get_str());
        arr.push_back(d.log2_denominator());
    }
    return {{"c", arr}};
}

DyadicCyclotomic DyadicCyclotomic::from_json(const nlohmann::json& j) {
    const auto& arr = j.at("c");
    if (!arr.is_array() || arr.size() != 8) throw std::invalid_argument("expected {\"c\":[n0,k0,...,n3,k3]}");
    DyadicCyclotomic r;
    for (int i = 0; i < 4; ++i) {
        const auto& n = arr[2 * i];
        mpz_class num = n.is_string() ? mpz_class(n.get<std::string>()) : mpz_class(n.get<long>());
        long k = arr[2 * i + 1].get<long>();
        if (k < 0) throw std::invalid_argument("negative log2 denominator");
        r.c_[i] = Dyadic(num, static_cast<unsigned long>(k));
    }
    return r;
}

namespace {

// Small recursive-descent reader for the text form.
class TextReader {
public:
    explicit TextReader(const std::string& s) : s_(s) {}

    DyadicCyclotomic run() {
        DyadicCyclotomic v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("cannot read ring element \"" + s_ + "\" at offset " + std::to_string(pos_) +
                                    ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    DyadicCyclotomic expr() {
        DyadicCyclotomic v;
        bool neg = eat('-');
        if (!neg) eat('+');
        v = term();
        if (neg) v = -v;
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    DyadicCyclotomic term() {
        DyadicCyclotomic v = power();
        for (;;) {
            if (eat('*')) {
                v = v * power();
            } else if (eat('/')) {
                skip();
                mpz_class d = integer();
                if (d <= 0) fail("division by a non-positive integer");
                unsigned long k = mpz_scan1(d.get_mpz_t(), 0);
                mpz_class rest;
                mpz_tdiv_q_2exp(rest.get_mpz_t(), d.get_mpz_t(), k);
                if (rest != 1) fail("only powers of two may divide");
                v = v.halved(k);
            } else {
                skip();
                // implicit product such as "3w"
                if (pos_ < s_.size() && (s_[pos_] == 'w' || s_[pos_] == 'i' || s_[pos_] == '('))
                    v = v * power();
                else
                    return v;
            }
        }
    }

    DyadicCyclotomic power() {
        DyadicCyclotomic base = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            mpz_class e = integer();
            if (!e.fits_slong_p()) fail("exponent too large");
            long n = e.get_si();
            if (neg) n = -n;
            if (base == DyadicCyclotomic::omega_pow(1)) return DyadicCyclotomic::omega_pow(n);
            if (base == DyadicCyclotomic::omega_pow(2)) return DyadicCyclotomic::omega_pow(2 * n);
            if (n < 0) fail("negative exponent of a general element");
            DyadicCyclotomic r(1);
            for (long k = 0; k < n; ++k) r = r * base;
            return r;
        }
        return base;
    }

    DyadicCyclotomic atom() {
        skip();
        if (eat('(')) {
            DyadicCyclotomic v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos_ < s_.size() && s_[pos_] == 'w') {
            ++pos_;
            return DyadicCyclotomic::omega_pow(1);
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return DyadicCyclotomic::omega_pow(2);
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            DyadicCyclotomic r;
            r = DyadicCyclotomic(Dyadic(integer(), 0), 0, 0, 0);
            return r;
        }
        fail("expected a number, 'w', 'i' or '('");
    }

    mpz_class integer() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return mpz_class(s_.substr(start, pos_ - start));
    }
};

}  // namespace

DyadicCyclotomic DyadicCyclotomic::parse(const std::string& text) { return TextReader(text).run(); }

DyadicCyclotomic add(const DyadicCyclotomic& a, const DyadicCyclotomic& b) { return a + b; }
DyadicCyclotomic mul(const DyadicCyclotomic& a, const DyadicCyclotomic& b) { return a * b; }
DyadicCyclotomic conjugate(const DyadicCyclotomic& a) { return a.conjugate(); }
DyadicCyclotomic omega_pow(long n) { return DyadicCyclotomic::omega_pow(n); }
bool equals(const DyadicCyclotomic& a, const DyadicCyclotomic& b) { return a == b; }

}  // namespace sqrtpi
