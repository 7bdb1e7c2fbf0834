#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsdim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Largest integer <= q.
BigInt floor_rat(const Rational& q);
// Smallest integer >= q.
BigInt ceil_rat(const Rational& q);

BigInt pow_int(const BigInt& base, std::uint64_t exp);
// base^exp for integer exp (negative allowed, base != 0 then).
Rational pow_rat(const Rational& base, std::int64_t exp);

// Smallest non-negative integer m with m^2 * a >= b (a > 0, b >= 0).
// Decides m >= sqrt(b/a) without leaving the rationals.
BigInt ceil_sqrt_ratio(const Rational& a, const Rational& b);

// "p/q" (or plain "p") with arbitrary precision; round-trips losslessly.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

double to_double(const Rational& q);
// log(n) for positive big integers that may not fit in a double.
double log_big(const BigInt& n);
double log10_big(const BigInt& n);
// log of a positive rational.
double log_rat(const Rational& q);

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resource guard tripped (exact-cover cap, cell materialization cap, grid depth).
struct CapExceeded : EngineError {
    using EngineError::EngineError;
};

}  // namespace hsdim
