#pragma once

#include <cstdint>
#include <vector>

#include "wfront/common.hpp"

namespace wfront {

// Exponent vector; one slot per declared variable of the owning polynomial.
struct Monomial {
  std::vector<uint32_t> e;

  Monomial() = default;
  explicit Monomial(size_t arity) : e(arity, 0) {}
  explicit Monomial(std::vector<uint32_t> exps) : e(std::move(exps)) {}

  size_t arity() const { return e.size(); }
  bool is_constant() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  unsigned total_degree() const {
    unsigned t = 0;
    for (auto x : e) t += x;
    return t;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

  Monomial operator*(const Monomial& o) const {
    check(arity() == o.arity(), "Monomial: arity mismatch");
    Monomial r(*this);
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
  }
  bool divides(const Monomial& o) const {
    check(arity() == o.arity(), "Monomial: arity mismatch");
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  // o / this, assuming divides(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (size_t i = 0; i < e.size(); ++i) {
      check(r.e[i] >= e[i], "Monomial: quotient not defined");
      r.e[i] -= e[i];
    }
    return r;
  }
};

// Canonical order: descending pure lexicographic with the first declared
// variable most significant. Serialization lists terms in this order; the
// leading monomial for exact division is the lex-greatest.
inline bool lex_greater(const Monomial& a, const Monomial& b) {
  check(a.arity() == b.arity(), "Monomial: arity mismatch");
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  }
  return false;
}

struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_greater(a, b); }
};

struct MonoHash {
  size_t operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ull;
    for (auto x : m.e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

}  // namespace wfront
