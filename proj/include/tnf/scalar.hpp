#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>
#include <type_traits>

namespace tnf {

using Rational = mpq_class;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/**
 * Arithmetic policy for the two numeric backends.
 *
 * Rational is exact and has no transcendental functions; double carries a
 * small snapping tolerance used wherever two computed values are compared.
 */
template <class S>
struct Num;

template <>
struct Num<double> {
    static constexpr bool exact = false;
    static double eps() { return 1e-12; }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static const char* name() { return "float"; }
};

template <>
struct Num<Rational> {
    static constexpr bool exact = true;
    static Rational eps() { return Rational(0); }
    static Rational from_rational(const Rational& q) { return q; }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational exp(const Rational&) {
        throw DomainError("exponential is not available in the exact backend");
    }
    static Rational log(const Rational&) {
        throw DomainError("logarithm is not available in the exact backend");
    }
    static const char* name() { return "exact"; }
};

// Tolerant comparisons. With the exact backend eps is zero and these reduce
// to the plain operators.
template <class S> using Same = std::type_identity_t<S>;

template <class S> bool approx_eq(const S& a, const Same<S>& b) {
    S d = a - b;
    if (d < 0) d = -d;
    return d <= Num<S>::eps();
}
template <class S> bool approx_le(const S& a, const Same<S>& b) { return a <= b + Num<S>::eps(); }
template <class S> bool approx_lt(const S& a, const Same<S>& b) { return a < b - Num<S>::eps(); }

template <class S> S smin(const S& a, const Same<S>& b) { return b < a ? b : a; }
template <class S> S smax(const S& a, const Same<S>& b) { return a < b ? b : a; }

// Canonical p/q; the two-argument mpq constructor does not reduce.
inline Rational rat(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

template <class S> double to_double(const S& x) { return Num<S>::to_double(x); }

template <class S> S from_double(double x);

// Shortest round-trip decimal text of a double.
inline std::string shortest_decimal(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Parses "123", "-0.25", "1e-05", "2.5E3" or "p/q" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (text.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational '" + text + "'");
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return q;
    }
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
    std::string digits;
    long exp10 = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) --exp10;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            ++i;
            break;
        } else {
            throw std::invalid_argument("bad number '" + text + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad number '" + text + "'");
    if (i < text.size() || (i == text.size() && (text.back() == 'e' || text.back() == 'E'))) {
        long e = 0;
        if (i < text.size() && text[i] == '+') ++i;
        auto r = std::from_chars(text.data() + i, text.data() + text.size(), e);
        if (r.ec != std::errc() || r.ptr != text.data() + text.size())
            throw std::invalid_argument("bad exponent in '" + text + "'");
        exp10 += e;
    }
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

// The rational a user most likely meant by a double: its shortest decimal.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite number");
    return parse_rational(shortest_decimal(x));
}

template <> inline double from_double<double>(double x) { return x; }
template <> inline Rational from_double<Rational>(double x) { return rational_from_double(x); }

template <class S> std::string to_string(const S& x) { return shortest_decimal(to_double(x)); }
template <> inline std::string to_string<Rational>(const Rational& x) { return x.get_str(); }

} // namespace tnf
