#ifndef FRAMEGEO_SCALAR_HPP
#define FRAMEGEO_SCALAR_HPP

#include <cmath>
#include <cstdio>
#include <string>

#include "framegeo/errors.hpp"
#include "framegeo/rational.hpp"

namespace framegeo {

/// Pluggable scalar for the jet kernel. Two realizations: float64 and
/// exact Rational. Exact mode refuses transcendental functions instead
/// of approximating them, so polynomial/rational inputs run end to end
/// with zero rounding.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double from_int(long long n) { return static_cast<double>(n); }
    static double from_ratio(long long n, long long d) {
        return static_cast<double>(n) / static_cast<double>(d);
    }
    static double from_literal(const std::string& s) { return std::stod(s); }
    static double to_double(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static double abs(double x) { return std::fabs(x); }
    // 17 significant digits round-trip any IEEE double exactly.
    static std::string to_string(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    static double exp(double x) { return std::exp(x); }
    static double ln(double x) {
        if (x <= 0.0) throw DomainError("ln of non-positive value");
        return std::log(x);
    }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double sqrt(double x) {
        if (x <= 0.0) throw DomainError("sqrt of non-positive value");
        return std::sqrt(x);
    }
};

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static Rational from_int(long long n) { return Rational(n); }
    static Rational from_ratio(long long n, long long d) { return Rational(n, d); }
    static Rational from_literal(const std::string& s) { return Rational::from_string(s); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational abs(const Rational& x) { return framegeo::abs(x); }
    static std::string to_string(const Rational& x) { return x.to_string(); }

    [[noreturn]] static Rational refuse(const char* fn) {
        throw DomainError(std::string(fn) +
                          " is not available in exact rational mode; use float mode");
    }
    static Rational exp(const Rational&) { refuse("exp"); }
    static Rational ln(const Rational&) { refuse("ln"); }
    static Rational sin(const Rational&) { refuse("sin"); }
    static Rational cos(const Rational&) { refuse("cos"); }
    static Rational sqrt(const Rational&) { refuse("sqrt"); }
};

}  // namespace framegeo

#endif
