#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfront/charsys.hpp"
#include "wfront/maps.hpp"
#include "wfront/modres.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/resultant.hpp"
#include "wfront/upoly.hpp"

namespace wfront {

// How build_theta computes the eliminant pair (R, S).
enum class ThetaStrategy { Auto, Direct, Modular };

inline ThetaStrategy parse_theta_strategy(const std::string& s) {
  if (s == "auto") return ThetaStrategy::Auto;
  if (s == "direct") return ThetaStrategy::Direct;
  if (s == "modular") return ThetaStrategy::Modular;
  throw Error("unknown theta strategy: " + s);
}

struct ThetaOptions {
  ThetaStrategy strategy = ThetaStrategy::Auto;
  ResultantStrategy direct = ResultantStrategy::Auto;      // Direct dispatch
  ModStrategy modular = ModStrategy::EvaluateInterpolate;  // Modular dispatch
  double budget_seconds = std::numeric_limits<double>::infinity();  // per eliminant
  unsigned threads = 0;          // 0: WFRONT_THREADS env var, else 1
  std::string checkpoint_path;   // modular resume file; S run appends ".psc"
  bool with_psc = true;          // also compute S for the E families
  ModularReport* report = nullptr;
};

// The main-analytic polynomial and its construction data, in the target
// frame x0..x_{k-1}. R = Res_v(A, B); S = psc1_v(A, B) for the E families;
// theta = R exactly for A and D (r = 1) and R / r^2 for E.
struct ThetaResult {
  SingularityType type;
  std::vector<std::string> vars;
  std::vector<long> weights;  // grading, aligned with vars
  MPoly<Rational> theta;
  MPoly<Rational> R;
  std::optional<MPoly<Rational>> S;
  MPoly<Rational> r;
  bool divided = false;  // r^2 * theta == R was established by exact division
};

namespace thetadet {

// Weighted degree of the psc_j block determinant: p = deg B - j rows of
// A-shifts, q = deg A - j rows of B-shifts, p*n + q*m - p*q column offsets.
inline long psc_weighted_degree(long alpha, long beta, long n, long m, long wv, long j) {
  const long p = m - j, q = n - j;
  return p * alpha + q * beta - wv * (p * n + q * m - p * q);
}

}  // namespace thetadet

inline ThetaResult build_theta(const SingularityType& t, const ThetaOptions& opt = {}) {
  using Tag = SingularityType::Tag;
  using P = MPoly<Rational>;
  check(t.is_ade(), "build_theta: ADE families only; fold types go through morin_theta");
  const CharSystem cs = char_system(t);
  const bool e_family = !cs.g.empty();

  ThetaStrategy strat = opt.strategy;
  if (strat == ThetaStrategy::Auto) {
    if (t.tag == Tag::E8)
      throw Error(
          "build_theta: E8 needs an explicit strategy (direct runs for hours; "
          "modular needs a budget); its leading terms come from b0_shortcut");
    strat = (t.tag == Tag::A || t.tag == Tag::D) && t.k <= 6 ? ThetaStrategy::Direct
                                                             : ThetaStrategy::Modular;
  }
  if (t.tag == Tag::E8 && strat == ThetaStrategy::Modular)
    check(std::isfinite(opt.budget_seconds),
          "build_theta: the full E8 eliminant requires an explicit budget");

  const P zero = P::zero(cs.vars);
  const P one = P::constant(cs.vars, Rational(1));

  P R;
  std::optional<P> S;
  if (strat == ThetaStrategy::Direct) {
    check(opt.direct != ResultantStrategy::Modular,
          "build_theta: direct strategy cannot dispatch to modular");
    R = resultant(cs.A, cs.B, zero, one, opt.direct);
    if (e_family && opt.with_psc) S = psc1(cs.A, cs.B, zero, one);
  } else {
    ModularOptions mo;
    mo.strategy = opt.modular;
    mo.budget_seconds = opt.budget_seconds;
    mo.weights = cs.weights;
    mo.threads = opt.threads;
    mo.checkpoint_path = opt.checkpoint_path;
    R = resultant_modular(cs.A, cs.B, mo, opt.report);
    if (e_family && opt.with_psc) {
      ModularOptions ms = mo;
      ms.psc_index = 1;
      if (!ms.checkpoint_path.empty()) ms.checkpoint_path += ".psc";
      S = resultant_modular(cs.A, cs.B, ms, nullptr);
    }
  }

  ThetaResult out;
  out.type = t;
  out.vars = std::vector<std::string>(cs.vars.begin() + (e_family ? 2 : 1), cs.vars.end());
  out.weights = std::vector<long>(cs.weights.begin() + (e_family ? 2 : 1), cs.weights.end());
  out.R = mp_change_vars(R, out.vars);
  out.r = mp_change_vars(cs.r, out.vars);
  if (S) out.S = mp_change_vars(*S, out.vars);

  if (e_family) {
    try {
      out.theta = mp_exact_div(out.R, out.r * out.r);
    } catch (const NotDivisible&) {
      throw NotDivisible("build_theta: Res_v(A, B) not divisible by r^2 for " + t.name());
    }
    out.divided = true;
  } else {
    out.theta = out.R;
    out.divided = true;  // r = 1
  }

  // Exact grading of every output.
  const WeightSystem ws_full = cs.weight_system();
  const WeightSystem ws{out.weights};
  const long alpha = *mp_weighted_degree(up_to_mpoly(cs.A), ws_full);
  const long beta = *mp_weighted_degree(up_to_mpoly(cs.B), ws_full);
  const long n = cs.A.declared_degree(), m = cs.B.declared_degree();
  const long wv = cs.weights[0];
  const long deg_R = thetadet::psc_weighted_degree(alpha, beta, n, m, wv, 0);
  check(mp_weighted_degree(out.R, ws) == std::optional<long>(deg_R),
        "build_theta: R has the wrong weighted degree");
  long deg_theta = deg_R;
  if (e_family) deg_theta -= 2 * *mp_weighted_degree(out.r, ws);
  check(mp_weighted_degree(out.theta, ws) == std::optional<long>(deg_theta),
        "build_theta: theta has the wrong weighted degree");
  if (out.S && !out.S->is_zero()) {
    const long deg_S = thetadet::psc_weighted_degree(alpha, beta, n, m, wv, 1);
    check(mp_weighted_degree(*out.S, ws) == std::optional<long>(deg_S),
          "build_theta: S has the wrong weighted degree");
  }
  return out;
}

// Exact x0-leading data from the B0 pair: A is free of x0 and every term of
// B0 carries x0 exactly once, so Res_v(A, B0) and psc1_v(A, B0) coincide
// with their own x0-leading terms, which are scalar multiples of the leading
// terms of R and S.
struct B0Shortcut {
  std::vector<std::string> vars;  // characteristic-system frame
  MPoly<Rational> R0;             // Res_v(A, B0)
  MPoly<Rational> S0;             // psc1_v(A, B0)
};

inline B0Shortcut b0_shortcut(const CharSystem& cs) {
  check(cs.B0.has_value(), "b0_shortcut: the B0 pair exists for the E families only");
  const MPoly<Rational> zero = MPoly<Rational>::zero(cs.vars);
  const MPoly<Rational> one = MPoly<Rational>::constant(cs.vars, Rational(1));
  B0Shortcut out;
  out.vars = cs.vars;
  out.R0 = resultant_bareiss(cs.A, *cs.B0, zero, one);
  out.S0 = psc1(cs.A, *cs.B0, zero, one);
  return out;
}

// Closed-form main-analytic polynomials of the fold families, over the map's
// target coordinates y1..yn.
struct MorinTheta {
  SingularityType type;
  std::vector<std::string> vars;
  MPoly<Rational> theta;
  // Dimension-2 cross cap classic form y2^2 - y1^2*y3; theta is its square.
  std::optional<MPoly<Rational>> classic;
  // Characteristic pair in the fibre coordinate t for the (4, 5) double-fold
  // family: a = y2 t^2 + y1 t - y4, b = t^3 + y3 t - y5. theta = Res_t(a, b)
  // and S = psc1_t(a, b).
  std::optional<UPoly<MPoly<Rational>>> a, b;
  std::optional<MPoly<Rational>> S;
};

inline MorinTheta morin_theta(const SingularityType& t) {
  using Tag = SingularityType::Tag;
  using P = MPoly<Rational>;
  check(t.tag == Tag::Morin || t.tag == Tag::CrossCap,
        "morin_theta: fold families only; ADE types go through build_theta");
  MorinTheta out;
  out.type = t;
  for (long i = 1; i <= t.n; ++i) out.vars.push_back("y" + std::to_string(i));

  if (t.r == 1) {
    // The map is a zero-slot-free suspension of the dimension-q cross cap,
    // q = n - m + 1, so theta is the cross-cap sum of squares
    //   sum_{i=1}^{q-1} (z_{q-1+i}^2 - z_i^2 z_{2q-1})^2
    // read through the bridged target coordinates.
    const MorinCrossCapBridge br = morin_crosscap_bridge(t.m, t.n);
    const long q = br.q;
    auto z = [&](long cc_pos) {  // 1-based cross-cap target position
      return P::variable(out.vars, br.target_perm[static_cast<size_t>(cc_pos - 1)],
                         Rational(1));
    };
    P th = P::zero(out.vars);
    for (long i = 1; i <= q - 1; ++i) {
      const P d = z(q - 1 + i) * z(q - 1 + i) - z(i) * z(i) * z(2 * q - 1);
      th = th + d * d;
    }
    out.theta = th;
    if (q == 2) {
      out.classic = z(2) * z(2) - z(1) * z(1) * z(3);
      check(out.theta == *out.classic * *out.classic,
            "morin_theta: dimension-2 cross cap theta must square the classic form");
    }
    return out;
  }

  if (t.r == 2 && t.m == 4 && t.n == 5) {
    std::vector<std::string> tv = {"t"};
    for (const auto& v : out.vars) tv.push_back(v);
    auto p = [&](const std::string& s) { return mp_parse_text(s, tv); };
    const UPoly<P> a = up_from_mpoly(p("y2*t^2 + y1*t - y4"), "t");
    const UPoly<P> b = up_from_mpoly(p("t^3 + y3*t - y5"), "t");
    const P zero = P::zero(tv);
    const P one = P::constant(tv, Rational(1));
    const P res = resultant_bareiss(a, b, zero, one);
    check(res == p("-y1^2*y3*y4 - y2^2*y3^2*y4 - 2*y2*y3*y4^2 - y4^3 + y1^3*y5"
                   " + y1*y2^2*y3*y5 + 3*y1*y2*y4*y5 + y2^3*y5^2"),
          "morin_theta: (4,5) double-fold eliminant must match its pinned expansion");
    const P s = psc1(a, b, zero, one);
    check(s == p("y2*y4 + y1^2 + y2^2*y3"),
          "morin_theta: (4,5) double-fold subresultant must match its pinned expansion");
    out.theta = mp_change_vars(res, out.vars);
    out.S = mp_change_vars(s, out.vars);
    out.a = a;
    out.b = b;
    return out;
  }

  throw Unsupported("morin_theta: closed forms exist for r = 1 and for the "
                    "(m, n, r) = (4, 5, 2) family only");
}

// Main-analytic polynomial of a suspended fold map: the base theta squared
// plus the squares of the zero-slot target coordinates (named z1, z2, ... by
// suspend).
inline MPoly<Rational> suspend_theta(const MPoly<Rational>& base_theta,
                                     const MapSpec& ms) {
  check(ms.suspended, "suspend_theta: map is not a suspension");
  const MPoly<Rational> th = mp_change_vars(base_theta, ms.target_names);
  MPoly<Rational> out = th * th;
  for (size_t i = 0; i < ms.target_names.size(); ++i) {
    if (ms.target_names[i].rfind("z", 0) != 0) continue;
    const MPoly<Rational> zi = MPoly<Rational>::variable(ms.target_names, i, Rational(1));
    out = out + zi * zi;
  }
  return out;
}

}  // namespace wfront
