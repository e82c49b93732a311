#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/monomial.hpp"
#include "wfront/numbers.hpp"
#include "wfront/zp.hpp"

namespace wfront {

// ---- scalar (coefficient ring) helpers -------------------------------------

inline bool k_is_zero(const Rational& x) { return x.is_zero(); }
inline bool k_is_zero(const BigInt& x) { return x.is_zero(); }
inline bool k_is_zero(const Zp& x) { return x.v == 0; }

inline Rational k_one(const Rational*) { return Rational(1); }
inline BigInt k_one(const BigInt*) { return BigInt(1); }

inline Rational k_div(const Rational& a, const Rational& b) {
  check(!b.is_zero(), "division by zero");
  return a / b;
}
inline BigInt k_div(const BigInt& a, const BigInt& b) {
  check(!b.is_zero(), "division by zero");
  BigInt q = a / b;
  if (q * b != a) throw NotDivisible("integer coefficient division is not exact");
  return q;
}
inline Zp k_div(const Zp& a, const Zp& b) { return a * b.inv(); }

inline std::string k_to_string(const Rational& x) { return to_string(x); }
inline std::string k_to_string(const BigInt& x) { return to_string(x); }
inline std::string k_to_string(const Zp& x) { return to_string(x); }

inline Rational k_mul_uint(const Rational& c, uint32_t n) { return c * Rational(n); }
inline BigInt k_mul_uint(const BigInt& c, uint32_t n) { return c * BigInt(n); }
inline Zp k_mul_uint(const Zp& c, uint32_t n) { return c.p ? c * Zp(n, c.p) : Zp(); }

// Zero carrying the same shape (variable list, modulus) as the sample value.
inline Rational k_zero_like(const Rational&) { return Rational(0); }
inline BigInt k_zero_like(const BigInt&) { return BigInt(0); }
inline Zp k_zero_like(const Zp& a) {
  Zp r = a;
  r.v = 0;
  return r;
}

// ---- sparse multivariate polynomial ----------------------------------------

// Terms are kept sorted in canonical (descending lex) order with no zero
// coefficients; every public operation restores this invariant.
template <class K>
struct MPoly {
  std::vector<std::string> vars;
  std::vector<std::pair<Monomial, K>> terms;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vs) : vars(std::move(vs)) {}

  static MPoly zero(std::vector<std::string> vs) { return MPoly(std::move(vs)); }
  static MPoly constant(std::vector<std::string> vs, K c) {
    MPoly r(std::move(vs));
    if (!k_is_zero(c)) r.terms.emplace_back(Monomial(r.vars.size()), std::move(c));
    return r;
  }
  static MPoly variable(std::vector<std::string> vs, size_t idx, K one) {
    MPoly r(std::move(vs));
    check(idx < r.vars.size(), "MPoly: variable index out of range");
    Monomial m(r.vars.size());
    m.e[idx] = 1;
    r.terms.emplace_back(std::move(m), std::move(one));
    return r;
  }

  size_t arity() const { return vars.size(); }
  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].first.is_constant()); }
  size_t term_count() const { return terms.size(); }

  const Monomial& leading_monomial() const {
    check(!terms.empty(), "MPoly: leading term of zero");
    return terms.front().first;
  }
  const K& leading_coeff() const {
    check(!terms.empty(), "MPoly: leading term of zero");
    return terms.front().second;
  }
  K constant_term() const {
    if (terms.empty()) return K{};
    const auto& back = terms.back();
    return back.first.is_constant() ? back.second : K{};
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& t : terms) d = std::max(d, t.first.total_degree());
    return d;
  }
  unsigned degree_in(size_t var) const {
    unsigned d = 0;
    for (auto& t : terms) d = std::max(d, t.first.e[var]);
    return d;
  }

  size_t var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return i;
    throw Error("MPoly: unknown variable " + name);
  }

  void require_same_vars(const MPoly& o) const {
    check(vars == o.vars, "MPoly: variable list mismatch");
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.vars == b.vars && a.terms == b.terms;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
};

namespace detail {
// Rebuilds the sorted unique representation from an accumulation map.
template <class K>
MPoly<K> from_map(std::vector<std::string> vars, std::map<Monomial, K, MonoGreater>&& acc) {
  MPoly<K> r(std::move(vars));
  r.terms.reserve(acc.size());
  for (auto& kv : acc) {
    if (!k_is_zero(kv.second)) r.terms.emplace_back(kv.first, std::move(kv.second));
  }
  return r;
}
}  // namespace detail

template <class K>
MPoly<K> mp_add(const MPoly<K>& f, const MPoly<K>& g) {
  f.require_same_vars(g);
  MPoly<K> r(f.vars);
  r.terms.reserve(f.terms.size() + g.terms.size());
  size_t i = 0, j = 0;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size() ||
        (i < f.terms.size() && lex_greater(f.terms[i].first, g.terms[j].first))) {
      r.terms.push_back(f.terms[i++]);
    } else if (i == f.terms.size() || lex_greater(g.terms[j].first, f.terms[i].first)) {
      r.terms.push_back(g.terms[j++]);
    } else {
      K s = f.terms[i].second + g.terms[j].second;
      if (!k_is_zero(s)) r.terms.emplace_back(f.terms[i].first, std::move(s));
      ++i, ++j;
    }
  }
  return r;
}

template <class K>
MPoly<K> mp_neg(const MPoly<K>& f) {
  MPoly<K> r(f.vars);
  r.terms.reserve(f.terms.size());
  for (auto& t : f.terms) r.terms.emplace_back(t.first, -t.second);
  return r;
}

template <class K>
MPoly<K> mp_sub(const MPoly<K>& f, const MPoly<K>& g) {
  return mp_add(f, mp_neg(g));
}

template <class K>
MPoly<K> mp_mul(const MPoly<K>& f, const MPoly<K>& g) {
  f.require_same_vars(g);
  std::map<Monomial, K, MonoGreater> acc;
  for (auto& a : f.terms) {
    for (auto& b : g.terms) {
      Monomial m = a.first * b.first;
      K c = a.second * b.second;
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(std::move(m), std::move(c));
      } else {
        it->second = it->second + c;
        if (k_is_zero(it->second)) acc.erase(it);
      }
    }
  }
  return detail::from_map(f.vars, std::move(acc));
}

template <class K>
MPoly<K> mp_scale(const MPoly<K>& f, const K& c) {
  MPoly<K> r(f.vars);
  if (k_is_zero(c)) return r;
  r.terms.reserve(f.terms.size());
  for (auto& t : f.terms) {
    K x = t.second * c;
    if (!k_is_zero(x)) r.terms.emplace_back(t.first, std::move(x));
  }
  return r;
}

template <class K>
MPoly<K> mp_pow(const MPoly<K>& f, unsigned e) {
  MPoly<K> r = MPoly<K>::constant(f.vars, k_one((K*)nullptr));
  MPoly<K> x = f;
  for (unsigned k = e; k; k >>= 1) {
    if (k & 1) r = mp_mul(r, x);
    if (k > 1) x = mp_mul(x, x);
  }
  return r;
}

template <class K>
MPoly<K> mp_derivative(const MPoly<K>& f, size_t var) {
  check(var < f.arity(), "mp_derivative: variable out of range");
  MPoly<K> r(f.vars);
  r.terms.reserve(f.terms.size());
  for (auto& t : f.terms) {
    uint32_t e = t.first.e[var];
    if (e == 0) continue;
    Monomial m = t.first;
    m.e[var] = e - 1;
    K c = k_mul_uint(t.second, e);
    if (!k_is_zero(c)) r.terms.emplace_back(std::move(m), std::move(c));
  }
  // Term order is preserved by lowering one exponent uniformly only within
  // a fixed variable; re-sort defensively (cheap, keeps the invariant).
  std::sort(r.terms.begin(), r.terms.end(),
            [](auto& a, auto& b) { return lex_greater(a.first, b.first); });
  return r;
}

// Multivariate division by g's leading monomial under the canonical order.
// Exact by contract; throws NotDivisible otherwise.
template <class K>
MPoly<K> mp_exact_div(const MPoly<K>& f, const MPoly<K>& g) {
  f.require_same_vars(g);
  check(!g.is_zero(), "mp_exact_div: division by zero polynomial");
  std::map<Monomial, K, MonoGreater> rem;
  for (auto& t : f.terms) rem.emplace(t.first, t.second);
  const Monomial& glm = g.leading_monomial();
  const K& glc = g.leading_coeff();
  std::map<Monomial, K, MonoGreater> quot;
  while (!rem.empty()) {
    auto lead = rem.begin();
    if (!glm.divides(lead->first))
      throw NotDivisible("mp_exact_div: leading monomial not divisible");
    Monomial qm = glm.quotient_of(lead->first);
    K qc = k_div(lead->second, glc);
    quot.emplace(qm, qc);
    // rem -= (qc * qm) * g
    for (auto& t : g.terms) {
      Monomial m = qm * t.first;
      K c = qc * t.second;
      auto it = rem.find(m);
      if (it == rem.end()) {
        rem.emplace(std::move(m), -c);
      } else {
        it->second = it->second - c;
        if (k_is_zero(it->second)) rem.erase(it);
      }
    }
  }
  return detail::from_map(f.vars, std::move(quot));
}

template <class K>
bool mp_divides(const MPoly<K>& g, const MPoly<K>& f) {
  try {
    mp_exact_div(f, g);
    return true;
  } catch (const NotDivisible&) {
    return false;
  }
}

// Generic evaluation with per-variable power caching. Lift maps coefficients
// into the target ring S; point supplies one S per variable.
template <class K, class S, class Lift>
S mp_eval_with(const MPoly<K>& f, const std::vector<S>& point, const S& zero, const S& one,
               Lift lift) {
  check(point.size() == f.arity(), "mp_eval: arity mismatch");
  std::vector<std::vector<S>> powers(f.arity());
  for (size_t v = 0; v < f.arity(); ++v) powers[v].push_back(one);
  S acc = zero;
  for (auto& t : f.terms) {
    S term = lift(t.second);
    for (size_t v = 0; v < f.arity(); ++v) {
      uint32_t e = t.first.e[v];
      if (e == 0) continue;
      auto& pw = powers[v];
      while (pw.size() <= e) pw.push_back(pw.back() * point[v]);
      term = term * pw[e];
    }
    acc = acc + term;
  }
  return acc;
}

inline Rational mp_eval(const MPoly<Rational>& f, const std::vector<Rational>& point) {
  return mp_eval_with(f, point, Rational(0), Rational(1),
                      [](const Rational& c) { return c; });
}

inline Zp mp_eval_mod(const MPoly<Rational>& f, const std::vector<BigInt>& point, uint64_t p) {
  std::vector<Zp> pt;
  pt.reserve(point.size());
  for (auto& x : point) pt.push_back(Zp::from_int(x, p));
  return mp_eval_with(f, pt, Zp(0, p), Zp(1, p),
                      [p](const Rational& c) { return Zp::from_rational(c, p); });
}

// Substitute polynomials for all variables simultaneously (composition).
template <class K>
MPoly<K> mp_compose(const MPoly<K>& f, const std::vector<MPoly<K>>& images) {
  check(images.size() == f.arity(), "mp_compose: arity mismatch");
  check(!images.empty() || f.arity() == 0, "mp_compose: empty image list");
  std::vector<std::string> tvars = images.empty() ? f.vars : images[0].vars;
  for (auto& im : images) check(im.vars == tvars, "mp_compose: image variable mismatch");
  MPoly<K> zero = MPoly<K>::zero(tvars);
  MPoly<K> one = MPoly<K>::constant(tvars, k_one((K*)nullptr));
  std::vector<std::vector<MPoly<K>>> powers(f.arity());
  for (size_t v = 0; v < f.arity(); ++v) powers[v].push_back(one);
  MPoly<K> acc = zero;
  for (auto& t : f.terms) {
    MPoly<K> term = MPoly<K>::constant(tvars, t.second);
    for (size_t v = 0; v < f.arity(); ++v) {
      uint32_t e = t.first.e[v];
      if (e == 0) continue;
      auto& pw = powers[v];
      while (pw.size() <= e) pw.push_back(mp_mul(pw.back(), images[v]));
      term = mp_mul(term, pw[e]);
    }
    acc = mp_add(acc, term);
  }
  return acc;
}

// Substitute a single variable by a scalar; the variable list is unchanged
// (the slot simply no longer occurs).
template <class K>
MPoly<K> mp_specialize(const MPoly<K>& f, size_t var, const K& value) {
  check(var < f.arity(), "mp_specialize: variable out of range");
  std::map<Monomial, K, MonoGreater> acc;
  std::vector<K> powers{k_one((K*)nullptr)};
  for (auto& t : f.terms) {
    uint32_t e = t.first.e[var];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Monomial m = t.first;
    m.e[var] = 0;
    K c = t.second * powers[e];
    if (k_is_zero(c)) continue;
    auto it = acc.find(m);
    if (it == acc.end()) {
      acc.emplace(std::move(m), std::move(c));
    } else {
      it->second = it->second + c;
      if (k_is_zero(it->second)) acc.erase(it);
    }
  }
  return detail::from_map(f.vars, std::move(acc));
}

// Weighted degree: Homogeneous(d) iff every term has weighted degree d.
struct WeightSystem {
  std::vector<long> w;
};

template <class K>
std::optional<long> mp_weighted_degree(const MPoly<K>& f, const WeightSystem& ws) {
  check(!f.is_zero(), "mp_weighted_degree: zero polynomial has no degree");
  check(ws.w.size() == f.arity(), "mp_weighted_degree: weight arity mismatch");
  for (auto wi : ws.w) check(wi >= 1, "mp_weighted_degree: weights must be positive");
  std::optional<long> d;
  for (auto& t : f.terms) {
    long td = 0;
    for (size_t v = 0; v < f.arity(); ++v) td += (long)t.first.e[v] * ws.w[v];
    if (!d) {
      d = td;
    } else if (*d != td) {
      return std::nullopt;
    }
  }
  return d;
}

// gcd of all integer numerators over lcm of denominators; f / content has
// coprime integer coefficients with positive leading sign if normalize_sign.
inline Rational mp_integer_content(const MPoly<Rational>& f, bool normalize_sign = false) {
  if (f.is_zero()) return Rational(0);
  BigInt g = 0, l = 1;
  for (auto& t : f.terms) {
    g = boost::multiprecision::gcd(g, num(t.second));
    l = boost::multiprecision::lcm(l, den(t.second));
  }
  Rational c(g, l);
  if (normalize_sign && f.leading_coeff() < 0) c = -c;
  return c;
}

// Rename/extend the variable list: target vars must contain every var of f
// that actually occurs. Terms keep coefficients; exponents are re-slotted.
template <class K>
MPoly<K> mp_change_vars(const MPoly<K>& f, const std::vector<std::string>& new_vars) {
  std::vector<long> slot(f.arity(), -1);
  for (size_t i = 0; i < f.arity(); ++i) {
    for (size_t j = 0; j < new_vars.size(); ++j) {
      if (f.vars[i] == new_vars[j]) {
        slot[i] = (long)j;
        break;
      }
    }
  }
  MPoly<K> r(new_vars);
  std::map<Monomial, K, MonoGreater> acc;
  for (auto& t : f.terms) {
    Monomial m(new_vars.size());
    for (size_t i = 0; i < f.arity(); ++i) {
      if (t.first.e[i] == 0) continue;
      check(slot[i] >= 0, "mp_change_vars: variable " + f.vars[i] + " missing from target");
      m.e[(size_t)slot[i]] += t.first.e[i];
    }
    auto it = acc.find(m);
    if (it == acc.end()) {
      acc.emplace(std::move(m), t.second);
    } else {
      it->second = it->second + t.second;
      if (k_is_zero(it->second)) acc.erase(it);
    }
  }
  return detail::from_map(std::move(r.vars), std::move(acc));
}

// Coefficient-wise ring change (e.g. Rational -> Zp reduction).
template <class K2, class K, class Fn>
MPoly<K2> mp_map_coeffs(const MPoly<K>& f, Fn fn) {
  MPoly<K2> r(f.vars);
  r.terms.reserve(f.terms.size());
  for (auto& t : f.terms) {
    K2 c = fn(t.second);
    if (!k_is_zero(c)) r.terms.emplace_back(t.first, std::move(c));
  }
  return r;
}

// MPoly itself acts as a coefficient ring (UPoly / matrix entries).
template <class K>
bool k_is_zero(const MPoly<K>& f) {
  return f.is_zero();
}
template <class K>
MPoly<K> k_zero_like(const MPoly<K>& f) {
  return MPoly<K>::zero(f.vars);
}
template <class K>
MPoly<K> k_div(const MPoly<K>& a, const MPoly<K>& b) {
  return mp_exact_div(a, b);
}
template <class K>
MPoly<K> k_mul_uint(const MPoly<K>& f, uint32_t n) {
  MPoly<K> r(f.vars);
  r.terms.reserve(f.terms.size());
  for (auto& t : f.terms) {
    K c = k_mul_uint(t.second, n);
    if (!k_is_zero(c)) r.terms.emplace_back(t.first, std::move(c));
  }
  return r;
}

// Ring operators so MPoly slots into generic UPoly/matrix code.
template <class K>
MPoly<K> operator+(const MPoly<K>& a, const MPoly<K>& b) {
  return mp_add(a, b);
}
template <class K>
MPoly<K> operator-(const MPoly<K>& a, const MPoly<K>& b) {
  return mp_sub(a, b);
}
template <class K>
MPoly<K> operator*(const MPoly<K>& a, const MPoly<K>& b) {
  return mp_mul(a, b);
}
template <class K>
MPoly<K> operator-(const MPoly<K>& a) {
  return mp_neg(a);
}

}  // namespace wfront
