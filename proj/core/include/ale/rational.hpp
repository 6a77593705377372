#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals and Gaussian rationals.
 *
 * Rational wraps a GMP rational kept in canonical form (denominator > 0,
 * gcd(|numerator|, denominator) = 1). GaussianRational is the field
 * Q(i) = { re + im*i } built from two Rationals; conjugation is an
 * involution and division is exact via the norm re^2 + im^2.
 *
 * Every operation here is exact. Floating point enters only through the
 * explicit to_double() conversions used by the numeric sphere modules.
 */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ale {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(static_cast<long>(n)) {}

    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Parses "a", "-a", or "a/b" in base 10.
    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0)
            throw std::domain_error("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(PreCanonical{}, std::move(q));
    }

    const mpz_class& numerator() const { return q_.get_num(); }
    const mpz_class& denominator() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(PreCanonical{}, -q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const { return q_.get_d(); }

    std::string str() const { return q_.get_str(); }

private:
    struct PreCanonical {};
    Rational(PreCanonical, mpq_class q) : q_(std::move(q)) {}

    mpq_class q_;  // invariant: canonical (GMP keeps results of mpq ops canonical)
};

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long n) : re(n) {}
    GaussianRational(int n) : re(long(n)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.norm();
        if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        GaussianRational num = a * b.conj();
        return {num.re / n, num.im / n};
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::string str() const {
        if (im.is_zero()) return re.str();
        if (re.is_zero()) return im.str() + "*i";
        return re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "*i";
    }
};

}  // namespace ale
