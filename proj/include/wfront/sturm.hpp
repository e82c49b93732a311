#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/numbers.hpp"
#include "wfront/upoly.hpp"

namespace wfront {

using QPoly = UPoly<Rational>;

namespace rdet {

inline int sgn(const BigInt& z) { return z.is_zero() ? 0 : (z < 0 ? -1 : 1); }
inline int sgn(const Rational& q) { return q.is_zero() ? 0 : (q < 0 ? -1 : 1); }

inline BigInt rat_floor(const Rational& q) {
  BigInt t = num(q) / den(q);  // truncates toward zero
  if (num(q) < 0 && Rational(t) != q) --t;
  return t;
}

// Ascending integer coefficients, content stripped, sign of the leading
// coefficient preserved. Trailing zeros trimmed; zero polynomial -> {}.
inline std::vector<BigInt> primitive_z(const QPoly& f) {
  long d = f.actual_degree();
  if (d < 0) return {};
  BigInt l = 1;
  for (long i = 0; i <= d; ++i) l = lcm(l, den(f.c[static_cast<size_t>(i)]));
  std::vector<BigInt> z(static_cast<size_t>(d) + 1);
  BigInt g = 0;
  for (long i = 0; i <= d; ++i) {
    const Rational s = f.c[static_cast<size_t>(i)] * Rational(l);
    z[static_cast<size_t>(i)] = num(s);
    g = gcd(g, z[static_cast<size_t>(i)]);
  }
  for (auto& c : z) c /= g;
  return z;
}

inline long deg(const std::vector<BigInt>& f) { return static_cast<long>(f.size()) - 1; }

// Pseudo-remainder scaled by a positive constant: sign-faithful for Sturm
// chains. Returns prem(a, b) normalized so the applied multiplier is lc(b)^2k.
inline std::vector<BigInt> prem_positive(std::vector<BigInt> r, const std::vector<BigInt>& b) {
  const long db = deg(b);
  const BigInt lcb = b.back();
  long passes = 0;
  while (deg(r) >= db) {
    const long i = deg(r) - db;
    const BigInt top = r.back();
    for (auto& c : r) c *= lcb;
    for (long k = 0; k <= db; ++k) r[static_cast<size_t>(i + k)] -= top * b[static_cast<size_t>(k)];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    ++passes;
    if (r.empty()) return r;
  }
  if ((passes & 1) && lcb < 0) {
    for (auto& c : r) c = -c;  // odd power of a negative multiplier
  }
  // Strip positive content.
  BigInt g = 0;
  for (const auto& c : r) g = gcd(g, c);
  if (g > 1)
    for (auto& c : r) c /= g;
  return r;
}

}  // namespace rdet

// Sturm chain of integer polynomials (ascending coefficients). Built from the
// squarefree part so consecutive entries never share a root.
struct SturmChain {
  std::vector<std::vector<BigInt>> chain;

  static int eval_sign(const std::vector<BigInt>& f, const Rational& x) {
    Rational acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * x + Rational(f[i]);
    return rdet::sgn(acc);
  }

  long variations_at(const Rational& x) const {
    long v = 0;
    int prev = 0;
    for (const auto& f : chain) {
      const int s = eval_sign(f, x);
      if (s != 0) {
        if (prev != 0 && s != prev) ++v;
        prev = s;
      }
    }
    return v;
  }

  // toward = +1 for +inf, -1 for -inf.
  long variations_at_infinity(int toward) const {
    long v = 0;
    int prev = 0;
    for (const auto& f : chain) {
      int s = rdet::sgn(f.back());
      if (toward < 0 && (rdet::deg(f) & 1)) s = -s;
      if (s != 0) {
        if (prev != 0 && s != prev) ++v;
        prev = s;
      }
    }
    return v;
  }
};

// Monic gcd over the rationals via a primitive integer remainder sequence.
// Zero polynomials are absorbed; gcd(0, 0) is an error.
inline QPoly up_gcd_monic(const QPoly& a, const QPoly& b) {
  std::vector<BigInt> f = rdet::primitive_z(a), g = rdet::primitive_z(b);
  check(!(f.empty() && g.empty()), "up_gcd_monic: both inputs are zero");
  if (f.empty()) std::swap(f, g);
  while (!g.empty()) {
    if (rdet::deg(f) < rdet::deg(g)) std::swap(f, g);
    f = rdet::prem_positive(std::move(f), g);
    std::swap(f, g);
  }
  const Rational lead(f.back());
  std::vector<Rational> mc;
  mc.reserve(f.size());
  for (const auto& c : f) mc.push_back(Rational(c) / lead);
  return QPoly(a.var, std::move(mc));
}

// Monic squarefree part f / gcd(f, f'). Constants map to 1.
inline QPoly up_squarefree(const QPoly& f) {
  const long d = f.actual_degree();
  check(d >= 0, "up_squarefree: zero polynomial");
  if (d == 0) return QPoly(f.var, {Rational(1)});
  const QPoly g = up_gcd_monic(f, up_derivative(f.trimmed()));
  // Exact division f = q * g (g monic, divides f).
  std::vector<Rational> r(f.c.begin(), f.c.begin() + d + 1);
  const long dg = g.actual_degree();
  std::vector<Rational> q(static_cast<size_t>(d - dg) + 1, Rational(0));
  for (long i = d - dg; i >= 0; --i) {
    const Rational t = r[static_cast<size_t>(i + dg)];
    q[static_cast<size_t>(i)] = t;
    if (t.is_zero()) continue;
    for (long k = 0; k <= dg; ++k) r[static_cast<size_t>(i + k)] -= t * g.c[static_cast<size_t>(k)];
  }
  for (const auto& c : r) check(c.is_zero(), "up_squarefree: gcd fails to divide");
  const Rational lead = q.back();
  for (auto& c : q) c /= lead;
  return QPoly(f.var, std::move(q));
}

inline SturmChain sturm_chain(const QPoly& squarefree) {
  SturmChain sc;
  std::vector<BigInt> f = rdet::primitive_z(squarefree);
  check(!f.empty(), "sturm_chain: zero polynomial");
  sc.chain.push_back(f);
  if (rdet::deg(f) == 0) return sc;
  std::vector<BigInt> fp(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) fp[i - 1] = BigInt(i) * f[i];
  sc.chain.push_back(std::move(fp));
  for (;;) {
    const auto& a = sc.chain[sc.chain.size() - 2];
    const auto& b = sc.chain.back();
    if (rdet::deg(b) <= 0) break;
    std::vector<BigInt> r = rdet::prem_positive(a, b);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    sc.chain.push_back(std::move(r));
  }
  return sc;
}

// Number of distinct real roots of f in the half-open interval (lo, hi];
// an absent endpoint means the corresponding infinity.
inline long sturm_count(const QPoly& f, const std::optional<Rational>& lo = std::nullopt,
                        const std::optional<Rational>& hi = std::nullopt) {
  check(!f.is_zero(), "sturm_count: zero polynomial");
  if (f.actual_degree() == 0) return 0;
  if (lo && hi && *lo >= *hi) return 0;
  const SturmChain sc = sturm_chain(up_squarefree(f));
  const long va = lo ? sc.variations_at(*lo) : sc.variations_at_infinity(-1);
  const long vb = hi ? sc.variations_at(*hi) : sc.variations_at_infinity(+1);
  return va - vb;
}

// Cauchy bound: every real root lies in [-B, B].
inline Rational cauchy_bound(const QPoly& f) {
  const long d = f.actual_degree();
  check(d >= 1, "cauchy_bound: degree must be positive");
  const Rational lead = f.c[static_cast<size_t>(d)];
  Rational m = 0;
  for (long i = 0; i < d; ++i) {
    Rational q = f.c[static_cast<size_t>(i)] / lead;
    if (q < 0) q = -q;
    if (q > m) m = q;
  }
  return m + 1;
}

// Open interval containing exactly one real root; the polynomial is nonzero
// with opposite signs at the endpoints.
struct RootInterval {
  Rational lo, hi;
};

struct RootIsolation {
  QPoly polynomial;  // monic squarefree part the isolation refers to
  std::vector<Rational> rational_roots;       // ascending
  std::vector<RootInterval> intervals;        // ascending, disjoint from roots
  long real_root_count() const {
    return static_cast<long>(rational_roots.size() + intervals.size());
  }
};

// Halves the interval until hi - lo <= eps, preserving the sign invariant.
inline void refine_interval(const QPoly& g, RootInterval& iv, const Rational& eps) {
  const int shi = rdet::sgn(up_eval(g, iv.hi));
  check(shi != 0 && rdet::sgn(up_eval(g, iv.lo)) == -shi,
        "refine_interval: endpoint sign invariant violated");
  while (iv.hi - iv.lo > eps) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int sm = rdet::sgn(up_eval(g, mid));
    check(sm != 0, "refine_interval: midpoint is an undetected rational root");
    if (sm == shi)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
}

// Isolates all real roots of f. Rational roots are reported exactly; the
// remaining roots get sign-definite open intervals.
inline RootIsolation isolate_real_roots(const QPoly& f) {
  RootIsolation out;
  check(!f.is_zero(), "isolate_real_roots: zero polynomial");
  out.polynomial = up_squarefree(f);
  const QPoly& g = out.polynomial;
  const long d = g.actual_degree();
  if (d == 0) return out;
  const SturmChain sc = sturm_chain(g);
  const Rational bound = cauchy_bound(g);
  const std::vector<BigInt> gz = rdet::primitive_z(g);
  const BigInt lead = gz.back();

  struct Seg {
    Rational lo, hi;
    long count;
  };
  std::vector<Seg> stack;
  {
    const long total = sc.variations_at(-bound) - sc.variations_at(bound);
    if (total > 0) stack.push_back({-bound, bound, total});
  }
  std::vector<RootInterval> raw;

  auto emit = [&](Rational lo, Rational hi) {
    // One root in (lo, hi]. Rational candidates rho satisfy lead*rho integer;
    // shrink until at most one such candidate remains, then test it.
    const Rational eps = Rational(1, 2) / Rational(abs(lead));
    while (hi - lo > eps) {
      const Rational mid = (lo + hi) / 2;
      const long right = sc.variations_at(mid) - sc.variations_at(hi);
      if (right > 0)
        lo = mid;
      else
        hi = mid;
    }
    const BigInt cand_num = rdet::rat_floor(hi * Rational(abs(lead)));
    const Rational cand = Rational(cand_num) / Rational(abs(lead));
    if (cand > lo && cand <= hi && up_eval(g, cand).is_zero()) {
      out.rational_roots.push_back(cand);
      return;
    }
    // Root is irrational; make both endpoints sign-definite. The left endpoint
    // may be a root of g (it belongs to the interval to its left).
    for (;;) {
      const int sl = rdet::sgn(up_eval(g, lo));
      const int sh = rdet::sgn(up_eval(g, hi));
      check(sh != 0, "isolate_real_roots: rational root escaped detection");
      if (sl != 0 && sl != sh) break;
      const Rational mid = (lo + hi) / 2;
      const long right = sc.variations_at(mid) - sc.variations_at(hi);
      if (right > 0)
        lo = mid;
      else
        hi = mid;
    }
    raw.push_back({lo, hi});
  };

  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      emit(s.lo, s.hi);
      continue;
    }
    const Rational mid = (s.lo + s.hi) / 2;
    const long right = sc.variations_at(mid) - sc.variations_at(s.hi);
    const long left = s.count - right;
    if (left > 0) stack.push_back({s.lo, mid, left});
    if (right > 0) stack.push_back({mid, s.hi, right});
  }

  std::sort(out.rational_roots.begin(), out.rational_roots.end());
  std::sort(raw.begin(), raw.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  out.intervals = std::move(raw);
  return out;
}

// Simplest rational (minimal denominator, then minimal |numerator|) in the
// closed interval [lo, hi]: a Stern-Brocot descent.
inline Rational stern_brocot_simplest(Rational lo, Rational hi) {
  check(lo <= hi, "stern_brocot_simplest: empty interval");
  if (lo <= 0 && 0 <= hi) return Rational(0);
  if (hi < 0) return -stern_brocot_simplest(-hi, -lo);
  // 0 < lo <= hi: walk the continued fraction of the interval.
  Rational a = lo, b = hi;
  std::vector<BigInt> quotients;
  for (;;) {
    const BigInt fa = num(a) / den(a);  // floor for positive rationals
    if (Rational(fa) == a || fa < num(b) / den(b) || Rational(fa + 1) <= b) {
      // An integer lies in [a, b]: the simplest is the smallest one.
      BigInt take = Rational(fa) == a ? fa : fa + 1;
      Rational r(take);
      for (size_t i = quotients.size(); i-- > 0;) r = Rational(quotients[i]) + 1 / r;
      return r;
    }
    quotients.push_back(fa);
    const Rational na = 1 / (b - Rational(fa));
    const Rational nb = 1 / (a - Rational(fa));
    a = na;
    b = nb;
  }
}

}  // namespace wfront
