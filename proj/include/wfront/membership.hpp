#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfront/charsys.hpp"
#include "wfront/maps.hpp"
#include "wfront/sturm.hpp"
#include "wfront/theta.hpp"

namespace wfront {

// Exact image-membership test. Given a rational target point x the verdict is
// one of:
//   Member              x = h(p) for a real source point p, with a witness;
//   NotMember           the characteristic resultant is nonzero at x, so x is
//                       off the zero set entirely;
//   OnZeroSetNotMember  the characteristic polynomials share a complex root
//                       (equivalently the discriminant vanishes at x) but no
//                       real preimage exists: conjugate-pair and mirror points;
//   BoundaryBranch      x sits on a degenerate stratum where the exact
//                       procedure implemented here does not decide.
enum class MemberVerdict { Member, NotMember, OnZeroSetNotMember, BoundaryBranch };

inline const char* to_string(MemberVerdict v) {
  switch (v) {
    case MemberVerdict::Member:
      return "member";
    case MemberVerdict::NotMember:
      return "not-member";
    case MemberVerdict::OnZeroSetNotMember:
      return "on-zero-set-not-member";
    case MemberVerdict::BoundaryBranch:
      return "boundary-branch";
  }
  return "?";
}

// Preimage description. When `algebraic` is -1 all of `values` are exact and
// eval_map(build_map(type), values) == x has been checked. Otherwise slot
// `algebraic` is the root of `annihilator` (monic, squarefree) isolated by
// `isolating`; slots listed in `derived` are rational functions of that root
// (u = -sign*x1/(2v) for the D family, u = g20/delta at v for the E families)
// and their `values` entries are placeholders, as is the algebraic slot's.
struct Witness {
  std::vector<std::string> source_vars;
  std::vector<Rational> values;
  int algebraic = -1;
  std::optional<QPoly> annihilator;
  std::optional<RootInterval> isolating;
  std::vector<int> derived;
};

struct MemberResult {
  MemberVerdict verdict = MemberVerdict::NotMember;
  std::optional<Witness> witness;
  std::string branch;  // "interior", "delta-root", "v-zero", "fold", ...
  std::string detail;
};

// Quotient and remainder over the rationals, taken at actual degrees.
inline std::pair<QPoly, QPoly> up_divmod(const QPoly& f, const QPoly& g) {
  const long dg = g.actual_degree();
  check(dg >= 0, "up_divmod: division by the zero polynomial");
  QPoly r = f.trimmed();
  if (r.actual_degree() < dg) return {QPoly(f.var, {Rational(0)}), r};
  std::vector<Rational> q(static_cast<size_t>(r.actual_degree() - dg) + 1, Rational(0));
  const Rational lg = g.coeff(static_cast<size_t>(dg));
  while (r.actual_degree() >= dg) {
    const long dr = r.actual_degree();
    const Rational t = r.coeff(static_cast<size_t>(dr)) / lg;
    q[static_cast<size_t>(dr - dg)] = t;
    for (long i = 0; i <= dg; ++i)
      r.c[static_cast<size_t>(dr - dg + i)] -= t * g.coeff(static_cast<size_t>(i));
    r = r.trimmed();
  }
  return {QPoly(f.var, std::move(q)), r};
}

// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& c) {
  check(c >= 0, "rational_sqrt: negative argument");
  const BigInt p = num(c), q = den(c);
  const BigInt sp = boost::multiprecision::sqrt(p), sq = boost::multiprecision::sqrt(q);
  if (sp * sp == p && sq * sq == q) return Rational(sp, sq);
  return std::nullopt;
}

namespace memdet {

// Point aligned with cs.vars: fibre slots (v [, u]) zeroed, then x.
inline std::vector<Rational> char_point(const CharSystem& cs, const std::vector<Rational>& x) {
  const size_t fibre = cs.vars.size() - x.size();
  std::vector<Rational> p(cs.vars.size(), Rational(0));
  for (size_t i = 0; i < x.size(); ++i) p[fibre + i] = x[i];
  return p;
}

inline Witness rational_witness(const MapSpec& ms, std::vector<Rational> src,
                                const std::vector<Rational>& x) {
  const auto image = eval_map(ms, src);
  check(image == x, "membership: witness fails to reproduce the target point");
  Witness w;
  w.source_vars = ms.source_vars;
  w.values = std::move(src);
  return w;
}

// Witness whose slot `alg` is an isolated real root of `ann`; `checks` are
// polynomials the annihilator must divide (so every root of `ann` satisfies
// them), which is what makes the witness sound.
inline Witness algebraic_witness(const MapSpec& ms, std::vector<Rational> values, int alg,
                                 const QPoly& ann, const RootInterval& iv,
                                 std::vector<int> derived, const std::vector<QPoly>& checks) {
  for (const auto& f : checks) {
    const auto qr = up_divmod(f, ann);
    check(qr.second.is_zero(), "membership: annihilator does not divide a required relation");
  }
  check(sturm_count(ann, iv.lo, iv.hi) == 1, "membership: isolating interval is not isolating");
  Witness w;
  w.source_vars = ms.source_vars;
  w.values = std::move(values);
  w.algebraic = alg;
  w.annihilator = ann;
  w.isolating = iv;
  w.derived = std::move(derived);
  return w;
}

inline MemberResult made(MemberVerdict v, std::string branch, std::string detail = {}) {
  MemberResult r;
  r.verdict = v;
  r.branch = std::move(branch);
  r.detail = std::move(detail);
  return r;
}

// ---- A family -------------------------------------------------------------

inline MemberResult member_a(const SingularityType& t, const std::vector<Rational>& x) {
  const CharSystem cs = char_system(t);
  const auto pt = char_point(cs, x);
  const QPoly Ax = up_specialize(cs.A, pt), Bx = up_specialize(cs.B, pt);
  const QPoly g = up_gcd_monic(Ax, Bx);
  if (g.actual_degree() == 0) return made(MemberVerdict::NotMember, "interior");
  const auto iso = isolate_real_roots(g);
  const MapSpec ms = build_map(t);
  std::vector<Rational> tail(x.begin() + 2, x.end());  // pass-through x2..x_{k-1}
  if (!iso.rational_roots.empty()) {
    std::vector<Rational> src = {iso.rational_roots.front()};
    src.insert(src.end(), tail.begin(), tail.end());
    MemberResult r = made(MemberVerdict::Member, "interior");
    r.witness = rational_witness(ms, std::move(src), x);
    return r;
  }
  if (!iso.intervals.empty()) {
    std::vector<Rational> vals = {Rational(0)};
    vals.insert(vals.end(), tail.begin(), tail.end());
    MemberResult r = made(MemberVerdict::Member, "interior");
    r.witness = algebraic_witness(ms, std::move(vals), 0, iso.polynomial, iso.intervals.front(),
                                  {}, {Ax, Bx});
    return r;
  }
  return made(MemberVerdict::OnZeroSetNotMember, "interior",
              "all shared roots of the characteristic pair are non-real");
}

// ---- D family -------------------------------------------------------------

inline MemberResult member_d(const SingularityType& t, const std::vector<Rational>& x) {
  const CharSystem cs = char_system(t);
  const auto pt = char_point(cs, x);
  const QPoly Ax = up_specialize(cs.A, pt), Bx = up_specialize(cs.B, pt);
  const QPoly g = up_gcd_monic(Ax, Bx);
  if (g.actual_degree() == 0) return made(MemberVerdict::NotMember, "v-nonzero");
  const QPoly gsf = up_squarefree(g);
  const auto iso = isolate_real_roots(gsf);
  const MapSpec ms = build_map(t);
  const Rational sigma(t.sign);
  std::vector<Rational> tail(x.begin() + 3, x.end());  // pass-through x3..x_{k-1}

  // Away from v = 0 the fibre coordinate is u = -sigma*x1/(2v).
  for (const auto& v0 : iso.rational_roots) {
    if (v0.is_zero()) continue;
    std::vector<Rational> src = {-sigma * x[1] / (2 * v0), v0};
    src.insert(src.end(), tail.begin(), tail.end());
    MemberResult r = made(MemberVerdict::Member, "v-nonzero");
    r.witness = rational_witness(ms, std::move(src), x);
    return r;
  }

  // v = 0 is a shared root exactly when x0 = x1 = 0; there h(u,0,x') =
  // (0, 0, -sigma u^2, x'), so the branch asks for u^2 = -sigma*x2.
  if (x[0].is_zero() && x[1].is_zero()) {
    const Rational usq = -sigma * x[2];
    if (usq >= 0) {
      MemberResult r = made(MemberVerdict::Member, "v-zero");
      if (const auto u = rational_sqrt(usq)) {
        std::vector<Rational> src = {*u, Rational(0)};
        src.insert(src.end(), tail.begin(), tail.end());
        r.witness = rational_witness(ms, std::move(src), x);
      } else {
        std::vector<Rational> vals = {Rational(0), Rational(0)};
        vals.insert(vals.end(), tail.begin(), tail.end());
        const QPoly ann("u", {-usq, Rational(0), Rational(1)});
        const auto iu = isolate_real_roots(ann);
        check(!iu.intervals.empty(), "membership: square root isolation failed");
        r.witness = algebraic_witness(ms, std::move(vals), 0, ann, iu.intervals.back(), {}, {});
      }
      return r;
    }
  }

  for (const auto& iv : iso.intervals) {
    // Irrational roots are nonzero, so the u-formula applies.
    std::vector<Rational> vals = {Rational(0), Rational(0)};
    vals.insert(vals.end(), tail.begin(), tail.end());
    MemberResult r = made(MemberVerdict::Member, "v-nonzero");
    r.witness = algebraic_witness(ms, std::move(vals), 1, iso.polynomial, iv, {0}, {Ax, Bx});
    return r;
  }
  return made(MemberVerdict::OnZeroSetNotMember, "v-zero",
              "shared roots are non-real or the v = 0 slice needs u^2 < 0");
}

// ---- E families -----------------------------------------------------------

// u-degree decomposition of the source system g0, g1, g2 shared by E6, E7, E8:
//   g0 = 2u^3        + u*w1(v,x) + e0(v,x)
//   g1 = 3u^2                    + c0(v,x)      (so u^2 = -c0/3 on the fibre)
//   g2 =     -delta(v,x)*u       + g20(v,x)     (so u = g20/delta when delta != 0)
struct ESplit {
  MPoly<Rational> w1, e0, c0, g20;
};

inline ESplit e_split(const CharSystem& cs) {
  const auto g0u = up_from_mpoly(cs.g[0], "u");
  const auto g1u = up_from_mpoly(cs.g[1], "u");
  const auto g2u = up_from_mpoly(cs.g[2], "u");
  const auto three = MPoly<Rational>::constant(cs.vars, Rational(3));
  const auto two = MPoly<Rational>::constant(cs.vars, Rational(2));
  check(g0u.actual_degree() == 3 && g0u.coeff(3) == two && g0u.coeff(2).is_zero(),
        "membership: unexpected u-profile of g0");
  check(g1u.actual_degree() == 2 && g1u.coeff(2) == three && g1u.coeff(1).is_zero(),
        "membership: unexpected u-profile of g1");
  check(g2u.actual_degree() == 1 && g2u.coeff(1) == mp_neg(cs.delta),
        "membership: unexpected u-profile of g2");
  return {g0u.coeff(1), g0u.coeff(0), g1u.coeff(0), g2u.coeff(0)};
}

// Specialize an x-parametric coefficient as a univariate in v at (x, v free).
inline QPoly at_x(const MPoly<Rational>& f, const std::vector<Rational>& pt) {
  return up_specialize(up_from_mpoly(f, "v"), pt);
}

// One delta-root candidate: recover u from the odd/even split of g0 under
// u^2 = c. Returns a Member result or nullopt if the candidate dies.
inline std::optional<MemberResult> e_boundary_candidate(
    const ESplit& sp, const MapSpec& ms, const std::vector<Rational>& x,
    const std::vector<Rational>& pt, const Rational& vhat, const QPoly& Ax, const QPoly& Bx) {
  if (!up_eval(Ax, vhat).is_zero() || !up_eval(Bx, vhat).is_zero()) return std::nullopt;
  const Rational c = -up_eval(at_x(sp.c0, pt), vhat) / 3;  // u^2 on the fibre
  if (c < 0) return std::nullopt;
  const Rational qcoef = 2 * c + up_eval(at_x(sp.w1, pt), vhat);
  const Rational rhs = -up_eval(at_x(sp.e0, pt), vhat);
  std::vector<Rational> tail(x.begin() + 3, x.end());
  if (!qcoef.is_zero()) {
    const Rational u = rhs / qcoef;
    if (u * u != c) return std::nullopt;
    std::vector<Rational> src = {u, vhat};
    src.insert(src.end(), tail.begin(), tail.end());
    MemberResult r = made(MemberVerdict::Member, "delta-root");
    r.witness = rational_witness(ms, std::move(src), x);
    return r;
  }
  if (!rhs.is_zero()) return std::nullopt;
  // Odd and even parts of g0 both vanish: u = +-sqrt(c) are both preimages.
  MemberResult r = made(MemberVerdict::Member, "delta-root");
  if (const auto u = rational_sqrt(c)) {
    std::vector<Rational> src = {*u, vhat};
    src.insert(src.end(), tail.begin(), tail.end());
    r.witness = rational_witness(ms, std::move(src), x);
  } else {
    std::vector<Rational> vals = {Rational(0), vhat};
    vals.insert(vals.end(), tail.begin(), tail.end());
    const QPoly ann("u", {-c, Rational(0), Rational(1)});
    const auto iu = isolate_real_roots(ann);
    check(!iu.intervals.empty(), "membership: square root isolation failed");
    r.witness = algebraic_witness(ms, std::move(vals), 0, ann, iu.intervals.back(), {}, {});
  }
  return r;
}

// delta^x == 0 stratum: u^2 is pinned by g1 alone; if u is rational the
// remaining system in v is solved by gcds, otherwise the stratum is reported
// as undecided.
inline MemberResult e_degenerate_delta(const ESplit& sp, const MapSpec& ms,
                                       const std::vector<Rational>& x,
                                       const std::vector<Rational>& pt, const QPoly& gsf,
                                       const QPoly& Ax, const QPoly& Bx) {
  const QPoly c0x = at_x(sp.c0, pt);
  check(c0x.actual_degree() <= 0, "membership: degenerate delta but v-dependent u^2");
  const Rational c = -c0x.coeff(0) / 3;
  if (c < 0)
    return made(MemberVerdict::OnZeroSetNotMember, "degenerate-delta", "fibre needs u^2 < 0");
  const auto u0 = rational_sqrt(c);
  if (!u0)
    return made(MemberVerdict::BoundaryBranch, "degenerate-delta",
                "delta vanishes identically at x and u^2 is not a rational square");
  std::vector<Rational> tail(x.begin() + 3, x.end());
  std::vector<Rational> us = {*u0};
  if (!u0->is_zero()) us.push_back(-*u0);
  for (const auto& u : us) {
    // With u fixed, g0 and g2 become univariate in v alongside A and B.
    const QPoly g0v = up_add(QPoly("v", {2 * u * u * u}),
                             up_add(up_scale(at_x(sp.w1, pt), u), at_x(sp.e0, pt)));
    const QPoly g20v = at_x(sp.g20, pt);
    QPoly G = gsf;
    if (!g0v.is_zero()) G = up_gcd_monic(G, g0v);
    if (!g20v.is_zero()) G = up_gcd_monic(G, g20v);
    if (G.actual_degree() < 1) continue;
    const auto iso = isolate_real_roots(G);
    if (!iso.rational_roots.empty()) {
      std::vector<Rational> src = {u, iso.rational_roots.front()};
      src.insert(src.end(), tail.begin(), tail.end());
      MemberResult r = made(MemberVerdict::Member, "degenerate-delta");
      r.witness = rational_witness(ms, std::move(src), x);
      return r;
    }
    if (!iso.intervals.empty()) {
      std::vector<Rational> vals = {u, Rational(0)};
      vals.insert(vals.end(), tail.begin(), tail.end());
      std::vector<QPoly> checks = {Ax, Bx};
      if (!g0v.is_zero()) checks.push_back(g0v);
      if (!g20v.is_zero()) checks.push_back(g20v);
      MemberResult r = made(MemberVerdict::Member, "degenerate-delta");
      r.witness = algebraic_witness(ms, std::move(vals), 1, iso.polynomial, iso.intervals.front(),
                                    {}, checks);
      return r;
    }
  }
  return made(MemberVerdict::OnZeroSetNotMember, "degenerate-delta",
              "no real source point on the degenerate stratum");
}

inline MemberResult member_e(const SingularityType& t, const std::vector<Rational>& x) {
  const CharSystem cs = char_system(t);
  const auto pt = memdet::char_point(cs, x);
  const QPoly Ax = up_specialize(cs.A, pt), Bx = up_specialize(cs.B, pt);
  const QPoly g = up_gcd_monic(Ax, Bx);
  if (g.actual_degree() == 0) return made(MemberVerdict::NotMember, "interior");
  const QPoly gsf = up_squarefree(g);
  const ESplit sp = e_split(cs);
  const MapSpec ms = build_map(t);
  const QPoly deltax = at_x(cs.delta, pt);
  if (deltax.is_zero()) return e_degenerate_delta(sp, ms, x, pt, gsf, Ax, Bx);

  const QPoly gdelta = up_gcd_monic(gsf, deltax);
  QPoly gmain = gsf;
  if (gdelta.actual_degree() >= 1) {
    auto qr = up_divmod(gsf, gdelta);
    check(qr.second.is_zero(), "membership: delta-split must divide exactly");
    gmain = qr.first;
  }
  std::vector<Rational> tail(x.begin() + 3, x.end());

  // Interior roots: delta(v) != 0, so u = g20/delta is rational in v.
  if (gmain.actual_degree() >= 1) {
    const auto iso = isolate_real_roots(gmain);
    for (const auto& v0 : iso.rational_roots) {
      std::vector<Rational> ptv = pt;
      ptv[0] = v0;
      const Rational u = mp_eval(sp.g20, ptv) / mp_eval(cs.delta, ptv);
      std::vector<Rational> src = {u, v0};
      src.insert(src.end(), tail.begin(), tail.end());
      MemberResult r = made(MemberVerdict::Member, "interior");
      r.witness = rational_witness(ms, std::move(src), x);
      return r;
    }
    if (!iso.intervals.empty()) {
      // The factor is coprime to delta, so u stays defined at the root.
      check(up_gcd_monic(iso.polynomial, deltax).actual_degree() == 0,
            "membership: interior factor shares a root with delta");
      std::vector<Rational> vals = {Rational(0), Rational(0)};
      vals.insert(vals.end(), tail.begin(), tail.end());
      MemberResult r = made(MemberVerdict::Member, "interior");
      r.witness = algebraic_witness(ms, std::move(vals), 1, iso.polynomial, iso.intervals.front(),
                                    {0}, {Ax, Bx});
      return r;
    }
  }

  // Boundary: shared roots on delta = 0. A member forces the remainder line
  // of (u-free part of g2) mod delta to vanish there, which pins v rationally
  // unless the line degenerates.
  if (gdelta.actual_degree() >= 1) {
    const auto qr = up_divmod(at_x(sp.g20, pt), deltax);
    const QPoly& rem = qr.second;
    std::vector<Rational> cands;
    bool pending = false;
    if (!rem.is_zero()) {
      if (rem.actual_degree() == 1) {
        const Rational vhat = -rem.coeff(0) / rem.coeff(1);
        if (up_eval(gdelta, vhat).is_zero()) cands.push_back(vhat);
      }
      // A nonzero constant remainder kills every delta-root candidate.
    } else {
      const auto isoD = isolate_real_roots(gdelta);
      cands = isoD.rational_roots;
      pending = !isoD.intervals.empty();
    }
    for (const auto& vhat : cands)
      if (auto r = e_boundary_candidate(sp, ms, x, pt, vhat, Ax, Bx)) return *r;
    if (pending)
      return made(MemberVerdict::BoundaryBranch, "delta-root",
                  "degenerate boundary line over irrational delta-roots");
  }
  return made(MemberVerdict::OnZeroSetNotMember, "delta-root",
              "no real source point over the shared roots");
}

// ---- fold families ----------------------------------------------------------

// Standard 1-Morin map: y_i = x_i (i < m), y_{m-1+i} = x_i x_m (i <= n-m),
// y_n = x_m^2. Membership reduces to recovering s = x_m consistently.
inline MemberResult member_fold1(const SingularityType& t, const std::vector<Rational>& x) {
  const long m = t.m, n = t.n;
  const MapSpec ms = build_map(t);
  const MPoly<Rational> theta = morin_theta(t).theta;
  const auto on_zero = [&]() {
    return mp_eval(theta, x).is_zero() ? MemberVerdict::OnZeroSetNotMember
                                       : MemberVerdict::NotMember;
  };
  const Rational lambda = x[static_cast<size_t>(n - 1)];
  std::vector<Rational> src(x.begin(), x.begin() + (m - 1));
  src.push_back(Rational(0));
  const auto at = [&](long i) -> const Rational& { return x[static_cast<size_t>(i - 1)]; };

  long driver = 0;
  for (long i = 1; i <= n - m; ++i)
    if (!at(i).is_zero()) {
      driver = i;
      break;
    }
  if (driver != 0) {
    const Rational s = at(m - 1 + driver) / at(driver);
    bool ok = s * s == lambda;
    for (long i = 1; ok && i <= n - m; ++i) ok = at(m - 1 + i) == at(i) * s;
    if (!ok) return made(on_zero(), "fold", "no consistent square root of the last coordinate");
    src.back() = s;
    MemberResult r = made(MemberVerdict::Member, "fold");
    r.witness = rational_witness(ms, std::move(src), x);
    return r;
  }
  // All driving coordinates vanish: the products must too, and x_m = +-sqrt(lambda).
  for (long i = 1; i <= n - m; ++i)
    if (!at(m - 1 + i).is_zero())
      return made(on_zero(), "fold", "product coordinates without driving coordinates");
  if (lambda < 0)
    return made(on_zero(), "fold", "last coordinate negative on the self-intersection line");
  MemberResult r = made(MemberVerdict::Member, "fold");
  if (const auto s = rational_sqrt(lambda)) {
    src.back() = *s;
    r.witness = rational_witness(ms, std::move(src), x);
  } else {
    const QPoly ann("t", {-lambda, Rational(0), Rational(1)});
    const auto iu = isolate_real_roots(ann);
    check(!iu.intervals.empty(), "membership: square root isolation failed");
    r.witness = algebraic_witness(ms, std::move(src), static_cast<int>(m) - 1, ann,
                                  iu.intervals.back(), {}, {});
  }
  return r;
}

// Double fold (4,5): roots t of the characteristic pair a = y2 t^2 + y1 t - y4,
// b = t^3 + y3 t - y5 are exactly the fibre coordinates over y.
inline MemberResult member_fold2(const SingularityType& t, const std::vector<Rational>& x) {
  const MapSpec ms = build_map(t);
  const MorinTheta mt = morin_theta(t);
  const auto on_zero = [&]() {
    return mp_eval(mt.theta, x).is_zero() ? MemberVerdict::OnZeroSetNotMember
                                          : MemberVerdict::NotMember;
  };
  const std::vector<Rational> tv = {Rational(0), x[0], x[1], x[2], x[3], x[4]};
  const QPoly ax = up_specialize(*mt.a, tv), bx = up_specialize(*mt.b, tv);
  const QPoly g = ax.is_zero() ? up_squarefree(bx) : up_gcd_monic(ax, bx);
  if (g.actual_degree() == 0) return made(on_zero(), "fold");
  const auto iso = isolate_real_roots(g);
  std::vector<Rational> src(x.begin(), x.begin() + 3);
  src.push_back(Rational(0));
  if (!iso.rational_roots.empty()) {
    src.back() = iso.rational_roots.front();
    MemberResult r = made(MemberVerdict::Member, "fold");
    r.witness = rational_witness(ms, std::move(src), x);
    return r;
  }
  if (!iso.intervals.empty()) {
    std::vector<QPoly> checks = {bx};
    if (!ax.is_zero()) checks.push_back(ax);
    MemberResult r = made(MemberVerdict::Member, "fold");
    r.witness =
        algebraic_witness(ms, std::move(src), 3, iso.polynomial, iso.intervals.front(), {}, checks);
    return r;
  }
  return made(on_zero(), "fold", "shared roots of the fold pair are non-real");
}

}  // namespace memdet

inline MemberResult member(const SingularityType& t, const std::vector<Rational>& x) {
  using Tag = SingularityType::Tag;
  const MapSpec probe = build_map(t);
  check(x.size() == probe.target_arity(), "member: target point arity mismatch");
  switch (t.tag) {
    case Tag::A:
      return memdet::member_a(t, x);
    case Tag::D:
      return memdet::member_d(t, x);
    case Tag::E6:
    case Tag::E7:
    case Tag::E8:
      return memdet::member_e(t, x);
    case Tag::Morin:
    case Tag::CrossCap:
      if (t.r == 1) return memdet::member_fold1(t, x);
      if (t.m == 4 && t.n == 5) return memdet::member_fold2(t, x);
      throw Unsupported("member: no closed procedure for M" + std::to_string(t.m) + "," +
                        std::to_string(t.n) + "," + std::to_string(t.r));
  }
  throw Error("unreachable");
}

// Number of distinct real preimages of x under the standard map. Throws
// Indeterminate on the degenerate strata member() reports as BoundaryBranch.
inline long preimage_count(const SingularityType& t, const std::vector<Rational>& x) {
  using Tag = SingularityType::Tag;
  const MapSpec probe = build_map(t);
  check(x.size() == probe.target_arity(), "preimage_count: target point arity mismatch");

  if (t.tag == Tag::A) {
    const CharSystem cs = char_system(t);
    const auto pt = memdet::char_point(cs, x);
    const QPoly g = up_gcd_monic(up_specialize(cs.A, pt), up_specialize(cs.B, pt));
    if (g.actual_degree() < 1) return 0;
    return sturm_count(up_squarefree(g));
  }

  if (t.tag == Tag::D) {
    const CharSystem cs = char_system(t);
    const auto pt = memdet::char_point(cs, x);
    const QPoly g = up_gcd_monic(up_specialize(cs.A, pt), up_specialize(cs.B, pt));
    long count = 0;
    if (g.actual_degree() >= 1) {
      const QPoly gsf = up_squarefree(g);
      count = sturm_count(gsf);
      if (up_eval(gsf, Rational(0)).is_zero()) --count;  // v = 0 is not a fold point
    }
    if (x[0].is_zero() && x[1].is_zero()) {
      const Rational usq = Rational(-t.sign) * x[2];
      if (usq > 0) count += 2;
      if (usq.is_zero()) count += 1;
    }
    return count;
  }

  if (t.tag == Tag::E6 || t.tag == Tag::E7 || t.tag == Tag::E8) {
    const CharSystem cs = char_system(t);
    const auto pt = memdet::char_point(cs, x);
    const QPoly Ax = up_specialize(cs.A, pt), Bx = up_specialize(cs.B, pt);
    const QPoly g = up_gcd_monic(Ax, Bx);
    if (g.actual_degree() < 1) return 0;
    const QPoly gsf = up_squarefree(g);
    const memdet::ESplit sp = memdet::e_split(cs);
    const QPoly deltax = memdet::at_x(cs.delta, pt);

    if (deltax.is_zero()) {
      const QPoly c0x = memdet::at_x(sp.c0, pt);
      check(c0x.actual_degree() <= 0, "preimage_count: degenerate delta but v-dependent u^2");
      const Rational c = -c0x.coeff(0) / 3;
      if (c < 0) return 0;
      const auto u0 = rational_sqrt(c);
      if (!u0) throw Indeterminate("preimage_count: degenerate delta with irrational fibre");
      std::vector<Rational> us = {*u0};
      if (!u0->is_zero()) us.push_back(-*u0);
      long count = 0;
      for (const auto& u : us) {
        const QPoly g0v = up_add(QPoly("v", {2 * u * u * u}),
                                 up_add(up_scale(memdet::at_x(sp.w1, pt), u),
                                        memdet::at_x(sp.e0, pt)));
        const QPoly g20v = memdet::at_x(sp.g20, pt);
        QPoly G = gsf;
        if (!g0v.is_zero()) G = up_gcd_monic(G, g0v);
        if (!g20v.is_zero()) G = up_gcd_monic(G, g20v);
        if (G.actual_degree() >= 1) count += sturm_count(G);
      }
      return count;
    }

    const QPoly gdelta = up_gcd_monic(gsf, deltax);
    QPoly gmain = gsf;
    if (gdelta.actual_degree() >= 1) {
      auto qr = up_divmod(gsf, gdelta);
      check(qr.second.is_zero(), "preimage_count: delta-split must divide exactly");
      gmain = qr.first;
    }
    long count = gmain.actual_degree() >= 1 ? sturm_count(gmain) : 0;

    if (gdelta.actual_degree() >= 1) {
      const auto qr = up_divmod(memdet::at_x(sp.g20, pt), deltax);
      const QPoly& rem = qr.second;
      std::vector<Rational> cands;
      if (!rem.is_zero()) {
        if (rem.actual_degree() == 1) {
          const Rational vhat = -rem.coeff(0) / rem.coeff(1);
          if (up_eval(gdelta, vhat).is_zero()) cands.push_back(vhat);
        }
      } else {
        const auto isoD = isolate_real_roots(gdelta);
        if (!isoD.intervals.empty())
          throw Indeterminate("preimage_count: boundary line degenerate over irrational roots");
        cands = isoD.rational_roots;
      }
      for (const auto& vhat : cands) {
        if (!up_eval(Ax, vhat).is_zero() || !up_eval(Bx, vhat).is_zero()) continue;
        const Rational c = -up_eval(memdet::at_x(sp.c0, pt), vhat) / 3;
        if (c < 0) continue;
        const Rational qcoef = 2 * c + up_eval(memdet::at_x(sp.w1, pt), vhat);
        const Rational rhs = -up_eval(memdet::at_x(sp.e0, pt), vhat);
        if (!qcoef.is_zero()) {
          const Rational u = rhs / qcoef;
          if (u * u == c) ++count;
        } else if (rhs.is_zero()) {
          count += c.is_zero() ? 1 : 2;
        }
      }
    }
    return count;
  }

  // Fold families.
  if (t.r == 1) {
    const long m = t.m, n = t.n;
    const auto at = [&](long i) -> const Rational& { return x[static_cast<size_t>(i - 1)]; };
    const Rational lambda = x[static_cast<size_t>(n - 1)];
    long driver = 0;
    for (long i = 1; i <= n - m; ++i)
      if (!at(i).is_zero()) {
        driver = i;
        break;
      }
    if (driver != 0) {
      const Rational s = at(m - 1 + driver) / at(driver);
      bool ok = s * s == lambda;
      for (long i = 1; ok && i <= n - m; ++i) ok = at(m - 1 + i) == at(i) * s;
      return ok ? 1 : 0;
    }
    for (long i = 1; i <= n - m; ++i)
      if (!at(m - 1 + i).is_zero()) return 0;
    if (lambda > 0) return 2;
    return lambda.is_zero() ? 1 : 0;
  }
  if (t.m == 4 && t.n == 5) {
    const MorinTheta mt = morin_theta(t);
    const std::vector<Rational> tv = {Rational(0), x[0], x[1], x[2], x[3], x[4]};
    const QPoly ax = up_specialize(*mt.a, tv), bx = up_specialize(*mt.b, tv);
    const QPoly g = ax.is_zero() ? up_squarefree(bx) : up_gcd_monic(ax, bx);
    if (g.actual_degree() < 1) return 0;
    return sturm_count(up_squarefree(g));
  }
  throw Unsupported("preimage_count: no closed procedure for M" + std::to_string(t.m) + "," +
                    std::to_string(t.n) + "," + std::to_string(t.r));
}

}  // namespace wfront
