#pragma once

#include <array>
#include <complex>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

namespace sqrtpi {

// numerator / 2^k, kept with k = 0 or an odd numerator.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long v) : num_(v) {}
    Dyadic(mpz_class num, unsigned long k);

    const mpz_class& numerator() const { return num_; }
    unsigned long log2_denominator() const { return k_; }
    bool is_zero() const { return sgn(num_) == 0; }

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.k_ == b.k_ && a.num_ == b.num_;
    }

    // exact division by 2^n
    Dyadic halved(unsigned long n = 1) const { return Dyadic(num_, k_ + n); }
    double to_double() const;
    std::string to_string() const;

private:
    void normalize();
    mpz_class num_ = 0;
    unsigned long k_ = 0;
};

// c0 + c1 w + c2 w^2 + c3 w^3 with w^4 = -1.
class DyadicCyclotomic {
public:
    DyadicCyclotomic() = default;
    DyadicCyclotomic(long v) { c_[0] = Dyadic(v); }
    DyadicCyclotomic(Dyadic c0, Dyadic c1, Dyadic c2, Dyadic c3) : c_{c0, c1, c2, c3} {}

    static DyadicCyclotomic omega_pow(long n);
    static DyadicCyclotomic sqrt2();
    static DyadicCyclotomic inv_sqrt2();
    // Parses the text form, e.g. "(1 - w^2)/2", "i", "-3*w^3/4".
    static DyadicCyclotomic parse(const std::string& text);
    static DyadicCyclotomic from_json(const nlohmann::json& j);

    const Dyadic& coeff(int i) const { return c_[i]; }
    const std::array<Dyadic, 4>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    // true when c1 = c3 = 0, i.e. the value lies in Z[1/2, i]
    bool is_gaussian() const { return c_[1].is_zero() && c_[3].is_zero(); }
    unsigned long max_log2_denominator() const;

    DyadicCyclotomic conjugate() const;
    DyadicCyclotomic times_omega_pow(long n) const;
    DyadicCyclotomic halved(unsigned long n = 1) const;
    DyadicCyclotomic operator-() const;
    friend DyadicCyclotomic operator+(const DyadicCyclotomic& a, const DyadicCyclotomic& b);
    friend DyadicCyclotomic operator-(const DyadicCyclotomic& a, const DyadicCyclotomic& b);
    friend DyadicCyclotomic operator*(const DyadicCyclotomic& a, const DyadicCyclotomic& b);
    DyadicCyclotomic& operator+=(const DyadicCyclotomic& b);
    friend bool operator==(const DyadicCyclotomic& a, const DyadicCyclotomic& b) { return a.c_ == b.c_; }

    std::complex<double> to_complex() const;
    std::string to_string() const;
    nlohmann::json to_json() const;

private:
    std::array<Dyadic, 4> c_{};
};

DyadicCyclotomic add(const DyadicCyclotomic& a, const DyadicCyclotomic& b);
DyadicCyclotomic mul(const DyadicCyclotomic& a, const DyadicCyclotomic& b);
DyadicCyclotomic conjugate(const DyadicCyclotomic& a);
DyadicCyclotomic omega_pow(long n);
bool equals(const DyadicCyclotomic& a, const DyadicCyclotomic& b);

}  // namespace sqrtpi
