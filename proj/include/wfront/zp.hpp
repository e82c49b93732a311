#pragma once

#include <cstdint>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/numbers.hpp"

namespace wfront {

// Deterministic trial-division primality (arguments stay below 2^32 here,
// so the sqrt loop is cheap).
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  for (uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Prime-field element with the modulus carried alongside the value. This is
// the convenience type used by certificates and generic code; the modular
// resultant kernel uses raw uint64 arrays with a Montgomery context instead.
struct Zp {
  uint64_t v = 0;
  uint64_t p = 0;

  Zp() = default;
  Zp(uint64_t value, uint64_t prime) : v(value % prime), p(prime) {
    // Primality is verified by trial division for small moduli only; the
    // large primes used by the modular engine come from a vetted generator.
    if (prime < (1u << 20)) check(is_prime_u64(prime), "Zp: modulus not prime");
  }
  static Zp from_int(const BigInt& z, uint64_t prime) {
    BigInt r = z % BigInt(prime);
    if (r < 0) r += prime;
    return Zp(r.convert_to<uint64_t>(), prime);
  }
  static Zp from_rational(const Rational& q, uint64_t prime) {
    Zp n = from_int(num(q), prime), d = from_int(den(q), prime);
    check(d.v != 0, "Zp: denominator vanishes mod p");
    return n * d.inv();
  }

  bool compatible(const Zp& o) const { return p == o.p || v == 0 || o.v == 0; }
  uint64_t modulus(const Zp& o) const { return p ? p : o.p; }

  friend Zp operator+(const Zp& a, const Zp& b) {
    check(a.compatible(b), "Zp: modulus mismatch");
    uint64_t p = a.p ? a.p : b.p;
    if (p == 0) return Zp();
    uint64_t s = a.v + b.v;
    return Zp(s >= p ? s - p : s, p);
  }
  friend Zp operator-(const Zp& a, const Zp& b) {
    check(a.compatible(b), "Zp: modulus mismatch");
    uint64_t p = a.p ? a.p : b.p;
    if (p == 0) return Zp();
    return Zp(a.v >= b.v ? a.v - b.v : a.v + p - b.v, p);
  }
  friend Zp operator*(const Zp& a, const Zp& b) {
    check(a.compatible(b), "Zp: modulus mismatch");
    uint64_t p = a.p ? a.p : b.p;
    if (p == 0) return Zp();
    return Zp((uint64_t)((unsigned __int128)a.v * b.v % p), p);
  }
  Zp operator-() const { return p && v ? Zp(p - v, p) : *this; }
  friend bool operator==(const Zp& a, const Zp& b) { return a.v == b.v && (a.v == 0 || a.p == b.p); }
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

  Zp pow(uint64_t e) const {
    check(p != 0, "Zp: pow on moduless zero");
    Zp r(1, p), x = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * x;
      x = x * x;
    }
    return r;
  }
  Zp inv() const {
    check(p != 0 && v != 0, "Zp: inverse of zero");
    return pow(p - 2);
  }
};

inline bool is_zero(const Zp& z) { return z.v == 0; }
inline std::string to_string(const Zp& z) { return std::to_string(z.v); }

// Montgomery arithmetic for a fixed odd prime p < 2^63. All kernel loops in
// the modular engine run in this domain: one mulmod is a few multiplies and
// shifts instead of a hardware division.
struct MontCtx {
  uint64_t p = 0;
  uint64_t pinv = 0;  // -p^{-1} mod 2^64
  uint64_t r2 = 0;    // (2^64)^2 mod p

  explicit MontCtx(uint64_t prime) : p(prime) {
    check(prime % 2 == 1, "MontCtx: even modulus");
    uint64_t inv = prime;  // Newton iteration for p^{-1} mod 2^64.
    for (int i = 0; i < 5; ++i) inv *= 2 - prime * inv;
    pinv = ~inv + 1;
    unsigned __int128 r = (unsigned __int128)1 << 64;
    r %= prime;
    r2 = (uint64_t)((unsigned __int128)r * r % prime);
  }

  uint64_t redc(unsigned __int128 t) const {
    uint64_t m = (uint64_t)t * pinv;
    unsigned __int128 s = t + (unsigned __int128)m * p;
    uint64_t r = (uint64_t)(s >> 64);
    return r >= p ? r - p : r;
  }
  uint64_t to_mont(uint64_t x) const { return redc((unsigned __int128)(x % p) * r2); }
  uint64_t from_mont(uint64_t x) const { return redc(x); }
  uint64_t mul(uint64_t a, uint64_t b) const { return redc((unsigned __int128)a * b); }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t one() const { return to_mont(1); }
  uint64_t pow(uint64_t b, uint64_t e) const {
    uint64_t r = one();
    for (; e; e >>= 1) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
    }
    return r;
  }
  uint64_t inv(uint64_t b) const {
    check(b != 0, "MontCtx: inverse of zero");
    return pow(b, p - 2);
  }
};

// Descending sequence of primes starting just below 2^31 (the modular
// engine's default pool).
inline std::vector<uint64_t> primes_below_2_31(size_t count, uint64_t skip_from = 0) {
  std::vector<uint64_t> out;
  uint64_t c = skip_from ? skip_from - 1 : (1ull << 31) - 1;
  while (out.size() < count && c > 3) {
    if (is_prime_u64(c)) out.push_back(c);
    --c;
  }
  check(out.size() == count, "prime pool exhausted");
  return out;
}

}  // namespace wfront
