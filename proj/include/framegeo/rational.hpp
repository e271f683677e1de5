#ifndef FRAMEGEO_RATIONAL_HPP
#define FRAMEGEO_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "framegeo/errors.hpp"

namespace framegeo {

/// Exact rational scalar backed by GMP. Always kept canonical
/// (coprime numerator/denominator, positive denominator). Division by
/// zero raises DivisionByZeroAtPoint instead of aborting like raw mpq.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long long n) : q_(static_cast<long>(n)) {}
    Rational(int n) : q_(n) {}
    Rational(long long num, long long den) {
        if (den == 0) throw DivisionByZeroAtPoint("rational with zero denominator");
        q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x) {
        Rational r;
        r.q_ = mpq_class(x);
        r.q_.canonicalize();
        return r;
    }

    /// Parse "p", "p/q", or a decimal string such as "1.25" or "3e-2", exactly.
    static Rational from_string(const std::string& s);

    double to_double() const { return q_.get_d(); }
    std::string to_string() const { return q_.get_str(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw DivisionByZeroAtPoint("exact division by zero");
        return Rational(mpq_class(q_ / o.q_));
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    friend Rational abs(const Rational& r) { return Rational(mpq_class(abs(r.q_))); }

  private:
    mpq_class q_;
};

Rational abs(const Rational& r);  // the hidden friend, made visible to qualified lookup

inline Rational Rational::from_string(const std::string& s) {
    // "p/q" with both sides integers
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num = from_string(s.substr(0, slash));
        Rational den = from_string(s.substr(slash + 1));
        return num / den;
    }
    // decimal with optional fraction part and exponent: [-]digits[.digits][e[-]digits]
    std::string digits;
    long exp10 = 0;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) digits += s[i];
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            digits += s[i];
            --exp10;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            eneg = s[i] == '-';
            ++i;
        }
        long e = 0;
        std::size_t estart = i;
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) e = e * 10 + (s[i] - '0');
        if (i == estart) throw DomainError("malformed exponent in numeric literal: " + s);
        exp10 += eneg ? -e : e;
    }
    if (digits.empty() || i != s.size())
        throw DomainError("malformed numeric literal: " + s);
    mpz_class mant(digits, 10);
    if (neg) mant = -mant;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(mant, pow10) : mpq_class(mant * pow10, 1);
    return Rational(q);
}

}  // namespace framegeo

#endif
