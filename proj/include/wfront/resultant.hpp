#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/matrix.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/upoly.hpp"

namespace wfront {

template <class K>
K k_pow_ring(const K& base, long e, const K& one) {
  check(e >= 0, "k_pow_ring: negative exponent");
  K acc = one;
  K b = base;
  long n = e;
  while (n > 0) {
    if (n & 1) acc = acc * b;
    b = b * b;
    n >>= 1;
  }
  return acc;
}

template <class K>
UPoly<K> up_exact_div_scalar(const UPoly<K>& a, const K& s) {
  std::vector<K> c;
  c.reserve(a.c.size());
  for (const auto& ci : a.c) c.push_back(k_div(ci, s));
  return UPoly<K>(a.var, std::move(c));
}

// Sylvester matrix at declared degrees n = deg a, m = deg b: (n+m) square,
// first m rows carry a's coefficients (descending, shifted), last n rows b's.
// Declared degrees are honored even when leading coefficients vanish, so the
// determinant realizes the reduction Res(a,b) = lc(a)^k * Res(a, b_trimmed)
// automatically.
template <class K>
Matrix<K> sylvester(const UPoly<K>& a, const UPoly<K>& b, const K& zero) {
  const long n = a.declared_degree();
  const long m = b.declared_degree();
  check(n >= 1 && m >= 1, "sylvester: both declared degrees must be >= 1");
  Matrix<K> s(static_cast<size_t>(n + m), zero);
  for (long r = 0; r < m; ++r)
    for (long j = 0; j <= n; ++j) s.at(r, r + j) = a.coeff(n - j);
  for (long r = 0; r < n; ++r)
    for (long j = 0; j <= m; ++j) s.at(m + r, r + j) = b.coeff(m - j);
  return s;
}

// Principal subresultant coefficient psc_j: determinant of the leading
// (n+m-2j) square block formed by the first (m-j) a-rows and (n-j) b-rows.
// psc_0 is the resultant; j may run to min(n,m), where the matrix can be
// empty (det 1 by convention).
template <class K>
K psc(const UPoly<K>& a, const UPoly<K>& b, long j, const K& zero, const K& one) {
  const long n = a.declared_degree();
  const long m = b.declared_degree();
  check(n >= 1 && m >= 1, "psc: both declared degrees must be >= 1");
  check(j >= 0 && j <= std::min(n, m), "psc: index out of range");
  const long rows_a = m - j;
  const long rows_b = n - j;
  const long size = n + m - 2 * j;
  Matrix<K> s(static_cast<size_t>(size), zero);
  for (long r = 0; r < rows_a; ++r)
    for (long c = 0; c <= n && r + c < size; ++c) s.at(r, r + c) = a.coeff(n - c);
  for (long r = 0; r < rows_b; ++r)
    for (long c = 0; c <= m && r + c < size; ++c) s.at(rows_a + r, r + c) = b.coeff(m - c);
  return bareiss_det(std::move(s), one);
}

template <class K>
K psc1(const UPoly<K>& a, const UPoly<K>& b, const K& zero, const K& one) {
  return psc(a, b, 1, zero, one);
}

// Chain psc_0..psc_min(n,m); gcd degree >= k iff psc_0..psc_{k-1} all vanish.
template <class K>
std::vector<K> subresultant_chain(const UPoly<K>& a, const UPoly<K>& b, const K& zero,
                                  const K& one) {
  const long top = std::min(a.declared_degree(), b.declared_degree());
  std::vector<K> chain;
  chain.reserve(static_cast<size_t>(top) + 1);
  for (long j = 0; j <= top; ++j) chain.push_back(psc(a, b, j, zero, one));
  return chain;
}

template <class K>
K resultant_bareiss(const UPoly<K>& a, const UPoly<K>& b, const K& zero, const K& one) {
  return bareiss_det(sylvester(a, b, zero), one);
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed without
// divisions. Degrees here are actual; b must be nonzero. If the remainder
// hits zero early the tail scalings by lc(b) are skipped.
template <class K>
UPoly<K> prem(const UPoly<K>& a, const UPoly<K>& b) {
  UPoly<K> bt = b.trimmed();
  check(!bt.is_zero(), "prem: division by zero polynomial");
  UPoly<K> r = a.trimmed();
  const long d = bt.actual_degree();
  if (r.is_zero() || r.actual_degree() < d) return r;
  const K& c = bt.leading();
  const long steps = r.actual_degree() - d;
  for (long i = steps; i >= 0; --i) {
    K top = r.coeff(d + i);
    r = up_scale(r, c);
    if (!k_is_zero(top)) r = up_sub(r, up_scale(up_shift(bt, i), top));
    r = r.trimmed();
    if (r.is_zero()) break;
  }
  check(r.is_zero() || r.actual_degree() < d, "prem: reduction failed");
  return r;
}

namespace detail {

// Laurent monomial in ring elements: factors with integer exponents.
template <class K>
struct FactorStack {
  std::vector<std::pair<K, long>> items;

  void push(const K& base, long exp) {
    if (exp == 0) return;
    for (auto& it : items) {
      if (it.first == base) {
        it.second += exp;
        return;
      }
    }
    items.emplace_back(base, exp);
  }
};

}  // namespace detail

// Resultant via a subresultant polynomial remainder sequence. The PRS keeps
// intermediate polynomials small through exact divisions by g*h^d; the exact
// resultant is recovered from the pseudo-division ledger
//   Res(F1,F2) = (-1)^(n1*n2) * lc(F2)^(n1 - deg R - (d+1)*n2) * div^(n2)
//                * Res(F2, F3),  R = prem(F1,F2), F3 = R/div,
// accumulated as a Laurent monomial and settled by one exact division.
template <class K>
K resultant_prs(const UPoly<K>& a_in, const UPoly<K>& b_in, const K& zero, const K& one) {
  check(a_in.declared_degree() >= 1 && b_in.declared_degree() >= 1,
        "resultant: both declared degrees must be >= 1");

  detail::FactorStack<K> factors;
  bool negate = false;
  auto swap_sign = [&negate](long da, long db) {
    if ((da % 2) && (db % 2)) negate = !negate;
  };

  // Reduce declared degrees to actual ones: trimming b costs lc(a)^k; a is
  // brought into the b slot by a swap with sign (-1)^(deg a * deg b).
  UPoly<K> a = a_in;
  UPoly<K> b = b_in;
  for (;;) {
    if (b.actual_degree() < b.declared_degree()) {
      if (b.actual_degree() < 0) return zero;  // zero row in the matrix
      if (a.actual_degree() < a.declared_degree()) return zero;  // zero column
      factors.push(a.leading(), b.declared_degree() - b.actual_degree());
      b = b.trimmed();
      continue;
    }
    if (a.actual_degree() < a.declared_degree()) {
      if (a.actual_degree() < 0) return zero;
      swap_sign(a.declared_degree(), b.declared_degree());
      std::swap(a, b);
      continue;
    }
    break;
  }

  UPoly<K> f1 = a.trimmed();
  UPoly<K> f2 = b.trimmed();
  if (f1.actual_degree() < f2.actual_degree()) {
    swap_sign(f1.actual_degree(), f2.actual_degree());
    std::swap(f1, f2);
  }
  if (f2.actual_degree() == 0) {
    factors.push(f2.leading(), f1.actual_degree());
  } else {
    K g = one;
    K h = one;
    for (;;) {
      const long n1 = f1.actual_degree();
      const long n2 = f2.actual_degree();
      const long d = n1 - n2;
      UPoly<K> r = prem(f1, f2);
      if (r.is_zero()) return zero;  // positive-degree common factor
      K divisor = g * k_pow_ring(h, d, one);
      UPoly<K> f3 = up_exact_div_scalar(r, divisor);
      swap_sign(n1, n2);
      factors.push(f2.leading(), n1 - r.actual_degree() - (d + 1) * n2);
      factors.push(divisor, n2);
      g = f2.leading();
      if (d == 1)
        h = g;
      else if (d > 1)
        h = k_div(k_pow_ring(g, d, one), k_pow_ring(h, d - 1, one));
      f1 = std::move(f2);
      f2 = std::move(f3);
      if (f2.actual_degree() == 0) {
        factors.push(f2.leading(), f1.actual_degree());
        break;
      }
    }
  }

  K num = one;
  K den = one;
  for (const auto& [base, exp] : factors.items) {
    if (exp > 0)
      num = num * k_pow_ring(base, exp, one);
    else if (exp < 0)
      den = den * k_pow_ring(base, -exp, one);
  }
  K res = k_div(num, den);
  return negate ? -res : res;
}

enum class ResultantStrategy { Auto, Bareiss, PRS, Modular };

inline ResultantStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return ResultantStrategy::Auto;
  if (s == "bareiss") return ResultantStrategy::Bareiss;
  if (s == "prs") return ResultantStrategy::PRS;
  if (s == "modular") return ResultantStrategy::Modular;
  throw Error("unknown strategy: " + s);
}

// Exact dispatch; the modular strategy lives in modres.hpp and is selected a
// level up so this header stays scalar-kernel free.
template <class K>
K resultant(const UPoly<K>& a, const UPoly<K>& b, const K& zero, const K& one,
            ResultantStrategy strategy = ResultantStrategy::Auto) {
  if (strategy == ResultantStrategy::Auto) {
    const long size = a.declared_degree() + b.declared_degree();
    strategy = size <= 14 ? ResultantStrategy::Bareiss : ResultantStrategy::PRS;
  }
  if (strategy == ResultantStrategy::Bareiss) return resultant_bareiss(a, b, zero, one);
  if (strategy == ResultantStrategy::PRS) return resultant_prs(a, b, zero, one);
  throw Error("resultant: modular strategy requires the modular engine");
}

}  // namespace wfront
