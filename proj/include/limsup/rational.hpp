#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace limsup {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every measure, endpoint and
/// construction constant in the library is one of these; nothing is ever
/// rounded.
class Rational {
public:
    Rational() = default;
    Rational(int v) : value_(v) {}
    Rational(long v) : value_(v) {}
    Rational(long long v) : value_(static_cast<long>(v)) {}
    Rational(unsigned v) : value_(v) {}
    Rational(unsigned long v) : value_(v) {}
    Rational(const BigInt& v) : value_(v) {}
    /// Unevaluated GMP integer expressions such as `a * b` or `x << k`.
    template <class Expr>
    Rational(const __gmp_expr<mpz_t, Expr>& e) : value_(BigInt(e)) {}

    /// Throws std::domain_error on a zero denominator.
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p/q" or "p" (optional leading '-'). Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    static Rational pow10(long exponent);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational pow(unsigned exponent) const;
    Rational abs() const;
    Rational reciprocal() const;

    /// Canonical "p/q" form; integers are written "p/1".
    std::string str() const;

    /// Approximate base-10 logarithm of |x|; for human-readable summaries only.
    double log10_abs() const;
    double to_double() const { return value_.get_d(); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a);

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}

    mpq_class value_{0};
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

BigInt factorial(unsigned n);
BigInt pow10_int(unsigned long exponent);

} // namespace limsup

template <>
struct std::hash<limsup::Rational> {
    std::size_t operator()(const limsup::Rational& r) const noexcept
    {
        return std::hash<std::string>{}(r.str());
    }
};
