#pragma once

#include <string>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/mpoly.hpp"

namespace wfront {

// Dense univariate polynomial over a coefficient ring K, carrying a DECLARED
// formal degree: the leading coefficient may be zero (or, for parametric K,
// the zero polynomial). Resultants and subresultants are taken at the formal
// degree, matching the Sylvester-matrix convention in which specializations
// that kill the leading coefficient still use the declared layout.
template <class K>
struct UPoly {
  std::string var;
  std::vector<K> c;  // c[0] + c[1]*var + ... + c[declared_degree]*var^d

  UPoly() = default;
  UPoly(std::string v, std::vector<K> coeffs) : var(std::move(v)), c(std::move(coeffs)) {
    check(!c.empty(), "UPoly: empty coefficient list");
  }

  long declared_degree() const {
    check(!c.empty(), "UPoly: empty coefficient list");
    return static_cast<long>(c.size()) - 1;
  }
  // Largest index with nonzero coefficient; -1 for the zero polynomial.
  long actual_degree() const {
    for (long i = (long)c.size() - 1; i >= 0; --i)
      if (!k_is_zero(c[(size_t)i])) return i;
    return -1;
  }
  bool is_zero() const { return actual_degree() < 0; }
  const K& leading() const { return c.back(); }  // formal leading coefficient

  const K& coeff(size_t i) const {
    static const K kzero{};
    return i < c.size() ? c[i] : kzero;
  }

  // Drop vanishing top coefficients (declared degree becomes actual degree).
  UPoly trimmed() const {
    long d = actual_degree();
    if (d < 0) return UPoly(var, {k_zero_like(c[0])});
    return UPoly(var, std::vector<K>(c.begin(), c.begin() + d + 1));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.var != b.var) return false;
    size_t n = std::max(a.c.size(), b.c.size());
    for (size_t i = 0; i < n; ++i) {
      const bool ia = i < a.c.size();
      const bool ib = i < b.c.size();
      if (ia && ib) {
        if (!(a.c[i] == b.c[i])) return false;
      } else if (ia) {
        if (!k_is_zero(a.c[i])) return false;
      } else {
        if (!k_is_zero(b.c[i])) return false;
      }
    }
    return true;
  }
};

template <class K>
UPoly<K> up_add(const UPoly<K>& a, const UPoly<K>& b) {
  check(a.var == b.var, "UPoly: main variable mismatch");
  std::vector<K> c;
  c.reserve(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < std::max(a.c.size(), b.c.size()); ++i) {
    if (i < a.c.size() && i < b.c.size())
      c.push_back(a.c[i] + b.c[i]);
    else if (i < a.c.size())
      c.push_back(a.c[i]);
    else
      c.push_back(b.c[i]);
  }
  return UPoly<K>(a.var, std::move(c));
}

template <class K>
UPoly<K> up_neg(const UPoly<K>& a) {
  std::vector<K> c(a.c.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -a.c[i];
  return UPoly<K>(a.var, std::move(c));
}

template <class K>
UPoly<K> up_sub(const UPoly<K>& a, const UPoly<K>& b) {
  return up_add(a, up_neg(b));
}

template <class K>
UPoly<K> up_mul(const UPoly<K>& a, const UPoly<K>& b) {
  check(a.var == b.var, "UPoly: main variable mismatch");
  std::vector<K> c(a.c.size() + b.c.size() - 1, k_zero_like(a.c[0]));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (k_is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] = c[i + j] + a.c[i] * b.c[j];
  }
  return UPoly<K>(a.var, std::move(c));
}

template <class K>
UPoly<K> up_scale(const UPoly<K>& a, const K& s) {
  std::vector<K> c(a.c.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.c[i] * s;
  return UPoly<K>(a.var, std::move(c));
}

template <class K>
UPoly<K> up_shift(const UPoly<K>& a, size_t k) {  // multiply by var^k
  std::vector<K> c(a.c.size() + k, k_zero_like(a.c[0]));
  for (size_t i = 0; i < a.c.size(); ++i) c[i + k] = a.c[i];
  return UPoly<K>(a.var, std::move(c));
}

template <class K>
UPoly<K> up_derivative(const UPoly<K>& a) {
  if (a.c.size() == 1) return UPoly<K>(a.var, {k_zero_like(a.c[0])});
  std::vector<K> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = k_mul_uint(a.c[i], (uint32_t)i);
  return UPoly<K>(a.var, std::move(c));
}

// Horner evaluation at an S-point; Lift maps K coefficients into S.
template <class K, class S, class Lift>
S up_eval_with(const UPoly<K>& a, const S& x, Lift lift) {
  S acc = lift(a.c.back());
  for (long i = (long)a.c.size() - 2; i >= 0; --i) acc = acc * x + lift(a.c[(size_t)i]);
  return acc;
}

inline Rational up_eval(const UPoly<Rational>& a, const Rational& x) {
  return up_eval_with(a, x, [](const Rational& c) { return c; });
}

// Collect an MPoly in one of its variables; coefficients keep the full
// variable list (the main slot is zeroed).
template <class K>
UPoly<MPoly<K>> up_from_mpoly(const MPoly<K>& f, const std::string& main_var) {
  size_t v = f.var_index(main_var);
  size_t d = f.is_zero() ? 0 : f.degree_in(v);
  std::vector<MPoly<K>> c(d + 1, MPoly<K>::zero(f.vars));
  for (auto& t : f.terms) {
    Monomial m = t.first;
    uint32_t e = m.e[v];
    m.e[v] = 0;
    c[e].terms.emplace_back(std::move(m), t.second);
  }
  for (auto& ci : c) {
    std::sort(ci.terms.begin(), ci.terms.end(),
              [](auto& a, auto& b) { return lex_greater(a.first, b.first); });
  }
  return UPoly<MPoly<K>>(main_var, std::move(c));
}

template <class K>
MPoly<K> up_to_mpoly(const UPoly<MPoly<K>>& a) {
  check(!a.c.empty(), "UPoly: empty");
  const auto& vars = a.c[0].vars;
  size_t v = a.c[0].var_index(a.var);
  MPoly<K> acc = MPoly<K>::zero(vars);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    MPoly<K> part(vars);
    part.terms.reserve(a.c[i].term_count());
    for (auto& t : a.c[i].terms) {
      Monomial m = t.first;
      check(m.e[v] == 0, "UPoly: coefficient uses the main variable");
      m.e[v] = (uint32_t)i;
      part.terms.emplace_back(std::move(m), t.second);
    }
    std::sort(part.terms.begin(), part.terms.end(),
              [](auto& x, auto& y) { return lex_greater(x.first, y.first); });
    acc = mp_add(acc, part);
  }
  return acc;
}

// Evaluate at the fraction num/den with the denominator cleared:
// den^d * f(num/den) where d is the declared degree. Exact over any
// commutative coefficient ring; vanishing is equivalent to num/den being
// a root whenever den is not a zero divisor.
template <class K>
K up_eval_homog(const UPoly<K>& f, const K& num, const K& den) {
  K acc = f.c.back();
  K dp = den;
  for (long i = (long)f.c.size() - 2; i >= 0; --i) {
    acc = acc * num + f.c[(size_t)i] * dp;
    if (i > 0) dp = dp * den;
  }
  return acc;
}

// Specialize every parameter of a parametric UPoly at a rational point.
inline UPoly<Rational> up_specialize(const UPoly<MPoly<Rational>>& a,
                                     const std::vector<Rational>& point) {
  std::vector<Rational> c(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = mp_eval(a.c[i], point);
  return UPoly<Rational>(a.var, std::move(c));
}

}  // namespace wfront
