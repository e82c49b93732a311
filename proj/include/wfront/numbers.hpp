#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "wfront/common.hpp"

namespace wfront {

using BigInt = boost::multiprecision::cpp_int;
// cpp_rational keeps gcd(|num|, den) = 1 and den >= 1 as internal invariants,
// which matches the Rational contract exactly.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(const BigInt& z) { return z.is_zero(); }

inline BigInt big_pow(const BigInt& b, unsigned e) {
  BigInt r = 1, x = b;
  for (unsigned k = e; k; k >>= 1) {
    if (k & 1) r *= x;
    if (k > 1) x *= x;
  }
  return r;
}

inline Rational rat_pow(const Rational& b, unsigned e) {
  return Rational(big_pow(num(b), e), big_pow(den(b), e));
}

inline std::string to_string(const BigInt& z) { return z.str(); }

// Canonical scalar text: plain integer when den = 1, else num/den.
inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

// Parses "p", "-p", "p/q" (q > 0 after normalization). Throws on junk.
inline Rational parse_rational(const std::string& s) {
  check(!s.empty(), "parse_rational: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
    check(!d.is_zero(), "parse_rational: zero denominator");
    return Rational(n, d);
  } catch (const std::exception& e) {
    throw Error("parse_rational: cannot parse '" + s + "': " + e.what());
  }
}

// Floor of sqrt for nonnegative BigInt (used for exact rational sqrt tests).
inline BigInt isqrt(const BigInt& n) {
  check(n >= 0, "isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

// Exact square root of a nonnegative rational if it exists.
inline bool exact_sqrt(const Rational& q, Rational* out) {
  if (q < 0) return false;
  BigInt sn = isqrt(num(q)), sd = isqrt(den(q));
  if (sn * sn != num(q) || sd * sd != den(q)) return false;
  *out = Rational(sn, sd);
  return true;
}

}  // namespace wfront
