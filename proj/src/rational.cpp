#include "limsup/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace limsup {

Rational::Rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

namespace {

bool is_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!is_digits(s))
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    BigInt v(std::string(s), 10);
    return negative ? BigInt(-v) : v;
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational Rational::pow10(long exponent)
{
    const BigInt p = pow10_int(static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(BigInt(1), p) : Rational(p);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    value_ /= o.value_;
    return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

Rational Rational::pow(unsigned exponent) const
{
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    // Powers of a reduced fraction stay reduced.
    mpq_class r;
    mpq_set_num(r.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(r.get_mpq_t(), den.get_mpz_t());
    return Rational(std::move(r));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const
{
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(mpq_class(1) / value_);
}

std::string Rational::str() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

double Rational::log10_abs() const
{
    if (is_zero()) return -HUGE_VAL;
    // mpz_get_d_2exp keeps the exponent separately, so huge values do not overflow.
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, value_.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, value_.get_den_mpz_t());
    return std::log10(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::log10(2.0);
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

BigInt factorial(unsigned n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt pow10_int(unsigned long exponent)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
    return r;
}

} // namespace limsup
