#include "hsdim/rational.hpp"

#include <cmath>

namespace hsdim {

BigInt floor_rat(const Rational& q) {
    BigInt n = num(q), d = den(q);
    BigInt quo = n / d;  // truncates toward zero
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

BigInt ceil_rat(const Rational& q) {
    BigInt n = num(q), d = den(q);
    BigInt quo = n / d;
    if (n > 0 && quo * d != n) ++quo;
    return quo;
}

BigInt pow_int(const BigInt& base, std::uint64_t exp) {
    BigInt acc{1}, b = base;
    while (exp) {
        if (exp & 1) acc *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return acc;
}

Rational pow_rat(const Rational& base, std::int64_t exp) {
    if (exp == 0) return Rational{1};
    if (exp < 0) {
        if (base == 0) throw std::domain_error("pow_rat: zero base with negative exponent");
        Rational inv{den(base), num(base)};
        return pow_rat(inv, -exp);
    }
    BigInt n = pow_int(num(base), static_cast<std::uint64_t>(exp));
    BigInt d = pow_int(den(base), static_cast<std::uint64_t>(exp));
    return Rational{n, d};
}

BigInt ceil_sqrt_ratio(const Rational& a, const Rational& b) {
    if (a <= 0) throw std::domain_error("ceil_sqrt_ratio: a must be positive");
    if (b <= 0) return 0;
    // Bracket with a floating guess, then fix up exactly.
    double guess = std::sqrt(to_double(b / a));
    BigInt m = static_cast<std::int64_t>(guess);
    if (m < 0) m = 0;
    while (Rational(m * m) * a >= b && m > 0) --m;
    while (Rational(m * m) * a < b) ++m;
    return m;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational{BigInt{text}};
        BigInt n{text.substr(0, slash)};
        BigInt d{text.substr(slash + 1)};
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational{n, d};
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: bad rational literal '" + text + "'");
    }
}

std::string format_rational(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

double log_big(const BigInt& n) {
    if (n <= 0) throw std::domain_error("log_big: positive argument required");
    std::size_t bits = boost::multiprecision::msb(n) + 1;
    if (bits <= 53) return std::log(n.convert_to<double>());
    std::size_t shift = bits - 53;
    BigInt top = n >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log10_big(const BigInt& n) { return log_big(n) / std::log(10.0); }

double log_rat(const Rational& q) {
    if (q <= 0) throw std::domain_error("log_rat: positive argument required");
    return log_big(num(q)) - log_big(den(q));
}

}  // namespace hsdim
