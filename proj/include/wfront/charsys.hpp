#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfront/maps.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/resultant.hpp"
#include "wfront/upoly.hpp"

namespace wfront {

// Eliminating u from the cubic system
//   G0 = 2u^3 + c0 + u*v*d,   G1 = -3u^2 + c1,   G2 = c2 - u*d
// (all of c0, c1, c2, d free of u). On a common zero 3u^2 = c1 and u*d = c2,
// so both combinations below vanish:
//   alpha = 3*c2^2 - d^2*c1 = 3*(u*d)^2 - d^2*(3u^2)
//   beta  = 2*c1*c2 + 3*c0*d + 3*v*c2*d
//         = 2*(3u^2)*(u*d) + 3*(-2u^3 - u*v*d)*d + 3*v*(u*d)*d.
// Conversely alpha = 0 with d != 0 pins u = c2/d back onto G1, and beta = 0
// then restores G0, so (alpha, beta) is the eliminated system away from d = 0.
struct EliminationPair {
  MPoly<Rational> alpha, beta;
};

inline EliminationPair elimination_build(const MPoly<Rational>& c0,
                                         const MPoly<Rational>& c1,
                                         const MPoly<Rational>& c2,
                                         const MPoly<Rational>& d,
                                         const std::string& main_var = "v") {
  c0.require_same_vars(c1);
  c0.require_same_vars(c2);
  c0.require_same_vars(d);
  const MPoly<Rational> v =
      MPoly<Rational>::variable(c0.vars, c0.var_index(main_var), Rational(1));
  EliminationPair out;
  out.alpha = mp_scale(c2 * c2, Rational(3)) - d * d * c1;
  out.beta = mp_scale(c1 * c2, Rational(2)) + mp_scale(c0 * d, Rational(3)) +
             mp_scale(v * c2 * d, Rational(3));
  return out;
}

// Boundary system of the E6 family. Where delta_6 = x4 + 2*v*x5 vanishes
// (and x5 != 0), v is pinned at vhat = -x4/(2*x5) and the cleared cubic
// system collapses to two polynomials in u alone:
//   k0 = (2*x5)^4 * g0|v=vhat = 32*x5^4*u^3 + 3*x4^4 + 4*x3*x4^2*x5^2 - 16*x0*x5^4
//   k1 with x5*k1 = (2*x5)^2 * g1|v=vhat, k1 = 12*x5*u^2 + 4*x1*x5 - x4^2.
// Their resultant H = Res_u(k0, k1) cuts out the boundary stratum; it is free
// of u and of x2.
struct E6Boundary {
  std::vector<std::string> vars;  // u, x0..x5
  UPoly<MPoly<Rational>> k0, k1;  // collected in u, degrees 3 and 2
  MPoly<Rational> H;              // Res_u(k0, k1)
};

inline E6Boundary e6_boundary_system() {
  E6Boundary b;
  b.vars = {"u"};
  for (auto& x : mapdet::x_range(0, 5)) b.vars.push_back(x);
  auto p = [&](const std::string& s) { return mp_parse_text(s, b.vars); };

  const MPoly<Rational> k0 =
      p("32*x5^4*u^3 + 3*x4^4 + 4*x3*x4^2*x5^2 - 16*x0*x5^4");
  const MPoly<Rational> k1 = p("12*x5*u^2 + 4*x1*x5 - x4^2");
  b.k0 = up_from_mpoly(k0, "u");
  b.k1 = up_from_mpoly(k1, "u");

  const MPoly<Rational> zero = MPoly<Rational>::zero(b.vars);
  const MPoly<Rational> one = MPoly<Rational>::constant(b.vars, Rational(1));
  b.H = resultant_bareiss(b.k0, b.k1, zero, one);
  check(b.H.degree_in(0) == 0, "e6 boundary: H must not involve u");
  check(b.H.degree_in(b.H.var_index("x2")) == 0,
        "e6 boundary: H must not involve x2");

  // For k0 = a*u^3 + d0, k1 = b*u^2 + e0 the resultant is b^3*d0^2 + a^2*e0^3.
  const MPoly<Rational> d0 = p("3*x4^4 + 4*x3*x4^2*x5^2 - 16*x0*x5^4");
  const MPoly<Rational> e0 = p("4*x1*x5 - x4^2");
  const MPoly<Rational> closed = mp_scale(p("x5^3") * d0 * d0, Rational(1728)) +
                                 mp_scale(p("x5^8") * e0 * e0 * e0, Rational(1024));
  check(b.H == closed, "e6 boundary: resultant closed form");
  return b;
}

// The characteristic pair (A, B) of a singularity family, collected in the
// kernel variable v: a target point x lies on the discriminant exactly when
// A(v, x) and B(v, x) acquire a common root v (for the E families with the
// source coordinate u recoverable from the cubic system g whenever
// delta(v, x) != 0). Everything is quasi-homogeneous for `weights`.
struct CharSystem {
  SingularityType type;
  std::vector<std::string> vars;  // v [, u], x0..x_{k-1}
  std::vector<long> weights;      // grading, aligned with vars

  UPoly<MPoly<Rational>> A, B;               // B = dA/dv for the A and D families
  std::optional<UPoly<MPoly<Rational>>> B0;  // x0-part of B = -3*x0*delta (E only)

  // Branch splitter: where delta != 0 the fibre coordinate is rational in
  // (v, x); constant 1 for type A, the variable v for type D.
  MPoly<Rational> delta;

  // Defining polynomial of the degenerate parameter locus; its square divides
  // Res_v(A, B) for the E families. Constant 1 for types A and D.
  MPoly<Rational> r;

  std::vector<MPoly<Rational>> g;      // cubic source system (E families only)
  std::optional<E6Boundary> boundary;  // E6 only

  WeightSystem weight_system() const { return WeightSystem{weights}; }
};

namespace detail {

// Pinned expansions of the eliminated pair and of r for the E families. The
// constructor recomputes both routes and refuses to hand out a system where
// they disagree.
inline const char* e_alpha_text(SingularityType::Tag tag) {
  switch (tag) {
    case SingularityType::Tag::E6:
      return "48*v^6 + 48*x3*v^4 + 4*x5^3*v^4 + 24*x2*v^3 + 8*x4*x5^2*v^3"
             " + 4*x1*x5^2*v^2 + 5*x4^2*x5*v^2 + 12*x3^2*v^2 + 4*x1*x4*x5*v"
             " + 12*x2*x3*v + x4^3*v + x1*x4^2 + 3*x2^2";
    case SingularityType::Tag::E7:
      return "9*v^7 + 21*x6*v^6 + 15*x5*v^5 + 16*x6^2*v^5 + 9*x1*v^4 + 27*x4^2*v^4"
             " + 22*x5*x6*v^4 + 4*x6^3*v^4 + 12*x1*x6*v^3 + 36*x3*x4*v^3 + 7*x5^2*v^3"
             " + 8*x5*x6^2*v^3 + 6*x1*x5*v^2 + 4*x1*x6^2*v^2 + 18*x2*x4*v^2"
             " + 12*x3^2*v^2 + 5*x5^2*x6*v^2 + 4*x1*x5*x6*v + 12*x2*x3*v + x5^3*v"
             " + x1*x5^2 + 3*x2^2";
    default:
      return "75*v^8 + 9*x7^3*v^7 + 90*x4*v^6 + 21*x6*x7^2*v^6 + 60*x3*v^5"
             " + 15*x5*x7^2*v^5 + 16*x6^2*x7*v^5 + 9*x1*x7^2*v^4 + 30*x2*v^4"
             " + 27*x4^2*v^4 + 22*x5*x6*x7*v^4 + 4*x6^3*v^4 + 12*x1*x6*x7*v^3"
             " + 36*x3*x4*v^3 + 7*x5^2*x7*v^3 + 8*x5*x6^2*v^3 + 6*x1*x5*x7*v^2"
             " + 4*x1*x6^2*v^2 + 18*x2*x4*v^2 + 12*x3^2*v^2 + 5*x5^2*x6*v^2"
             " + 4*x1*x5*x6*v + 12*x2*x3*v + x5^3*v + x1*x5^2 + 3*x2^2";
  }
}

inline const char* e_beta_text(SingularityType::Tag tag) {
  switch (tag) {
    case SingularityType::Tag::E6:
      return "2*x5*v^5 + 5*x4*v^4 + 8*x1*v^3 - 2*x3*x5*v^3 + x3*x4*v^2"
             " - 4*x2*x5*v^2 - 6*x0*x5*v + 4*x1*x3*v - x2*x4*v - 3*x0*x4 + 2*x1*x2";
    case SingularityType::Tag::E7:
      return "-3*x4*v^5 - 5*x3*v^4 - 7*x2*v^3 - 2*x3*x6*v^3 + 3*x4*x5*v^3 - 9*x0*v^2"
             " + 6*x1*x4*v^2 - 4*x2*x6*v^2 + x3*x5*v^2 - 6*x0*x6*v + 4*x1*x3*v"
             " - x2*x5*v - 3*x0*x5 + 2*x1*x2";
    default:
      return "x7*v^7 + 4*x6*v^6 + 7*x5*v^5 - 3*x4*x7*v^5 + 10*x1*v^4 - 5*x3*x7*v^4"
             " - 7*x2*x7*v^3 - 2*x3*x6*v^3 + 3*x4*x5*v^3 - 9*x0*x7*v^2 + 6*x1*x4*v^2"
             " - 4*x2*x6*v^2 + x3*x5*v^2 - 6*x0*x6*v + 4*x1*x3*v - x2*x5*v"
             " - 3*x0*x5 + 2*x1*x2";
  }
}

inline const char* e_r_text(SingularityType::Tag tag) {
  switch (tag) {
    case SingularityType::Tag::E6:
      return "x4^3 + 2*x3*x5^2*x4 - 2*x2*x5^3";
    case SingularityType::Tag::E7:
      return "3*x2^2 - 6*x4*x5*x2 - 4*x3*x6*x2 + 4*x4*x6^2*x2 + 4*x3^2*x5"
             " + 3*x4^2*x5^2 - 4*x3*x4*x6*x5";
    default:
      return "25*x5^4 - 90*x4*x7*x5^3 + 60*x4*x6^2*x5^2 + 81*x4^2*x7^2*x5^2"
             " + 180*x3*x6*x7*x5^2 + 90*x2*x7^2*x5^2 - 80*x3*x6^3*x5"
             " - 240*x2*x6^2*x7*x5 - 108*x3*x4*x6*x7^2*x5 + 108*x3^2*x7^3*x5"
             " - 162*x2*x4*x7^3*x5 + 80*x2*x6^4 + 108*x2*x4*x6^2*x7^2"
             " - 108*x2*x3*x6*x7^3 + 81*x2^2*x7^4";
  }
}

inline const char* e_delta_text(SingularityType::Tag tag) {
  switch (tag) {
    case SingularityType::Tag::E6:
      return "x4 + 2*v*x5";
    case SingularityType::Tag::E7:
      return "3*v^2 + 2*x6*v + x5";
    default:
      return "3*x7*v^2 + 2*x6*v + x5";
  }
}

}  // namespace detail

inline CharSystem char_system(const SingularityType& t) {
  using Tag = SingularityType::Tag;
  using P = MPoly<Rational>;
  CharSystem cs;
  cs.type = t;

  if (t.tag == Tag::A) {
    const long k = t.k;
    cs.vars = {"v"};
    for (auto& x : mapdet::x_range(0, k - 1)) cs.vars.push_back(x);
    cs.weights = {1};
    for (long i = 0; i < k; ++i) cs.weights.push_back(k + 1 - i);

    // A = v^{k+1} + x_{k-1} v^{k-1} + ... + x1 v + x0: the universal monic
    // deformation with the v^k coefficient removed by a shift of v.
    const P zero = P::zero(cs.vars);
    std::vector<P> c(static_cast<size_t>(k + 2), zero);
    for (long i = 0; i < k; ++i)
      c[static_cast<size_t>(i)] =
          P::variable(cs.vars, static_cast<size_t>(1 + i), Rational(1));
    c[static_cast<size_t>(k + 1)] = P::constant(cs.vars, Rational(1));
    cs.A = UPoly<P>("v", std::move(c));
    cs.B = up_derivative(cs.A);
    cs.delta = P::constant(cs.vars, Rational(1));
    cs.r = cs.delta;

    const auto da = mp_weighted_degree(up_to_mpoly(cs.A), cs.weight_system());
    const auto db = mp_weighted_degree(up_to_mpoly(cs.B), cs.weight_system());
    check(da && *da == k + 1 && db && *db == k,
          "char_system: A family pair must be quasi-homogeneous");
    return cs;
  }

  if (t.tag == Tag::D) {
    const long k = t.k;
    cs.vars = {"v"};
    for (auto& x : mapdet::x_range(0, k - 1)) cs.vars.push_back(x);
    cs.weights = {2, 2 * k - 2, k};
    for (long i = 2; i < k; ++i) cs.weights.push_back(2 * (k - i));

    // A = v^k + x_{k-1} v^{k-1} + ... + x2 v^2 + x0 v - (sign/4) x1^2: the
    // fold curve of the D family carries no x1 v term; x1 enters only through
    // the constant coefficient.
    const P zero = P::zero(cs.vars);
    std::vector<P> c(static_cast<size_t>(k + 1), zero);
    c[0] = mapdet::term(cs.vars, Rational(-t.sign, 4), {{2, 2}});
    c[1] = P::variable(cs.vars, 1, Rational(1));
    for (long i = 2; i < k; ++i)
      c[static_cast<size_t>(i)] =
          P::variable(cs.vars, static_cast<size_t>(1 + i), Rational(1));
    c[static_cast<size_t>(k)] = P::constant(cs.vars, Rational(1));
    cs.A = UPoly<P>("v", std::move(c));
    cs.B = up_derivative(cs.A);
    cs.delta = P::variable(cs.vars, 0, Rational(1));
    cs.r = P::constant(cs.vars, Rational(1));

    const auto da = mp_weighted_degree(up_to_mpoly(cs.A), cs.weight_system());
    const auto db = mp_weighted_degree(up_to_mpoly(cs.B), cs.weight_system());
    check(da && *da == 2 * k && db && *db == 2 * k - 2,
          "char_system: D family pair must be quasi-homogeneous");
    return cs;
  }

  if (t.tag == Tag::E6 || t.tag == Tag::E7 || t.tag == Tag::E8) {
    const long k = t.k;
    cs.vars = {"v", "u"};
    for (auto& x : mapdet::x_range(0, k - 1)) cs.vars.push_back(x);
    if (t.tag == Tag::E6) cs.weights = {3, 4, 12, 8, 9, 6, 5, 2};
    if (t.tag == Tag::E7) cs.weights = {2, 3, 9, 6, 7, 5, 3, 4, 2};
    if (t.tag == Tag::E8) cs.weights = {3, 5, 15, 10, 12, 9, 6, 7, 4, 1};
    auto p = [&](const std::string& s) { return mp_parse_text(s, cs.vars); };
    const P zero = P::zero(cs.vars);
    const P one = P::constant(cs.vars, Rational(1));

    // Cubic source system: the graph of the map in the frame where the first
    // three target coordinates are pulled into the equations.
    const MapSpec ms = build_map(t);
    const P h0 = mp_change_vars(ms.components[0], cs.vars);
    const P h1 = mp_change_vars(ms.components[1], cs.vars);
    const P h2 = mp_change_vars(ms.components[2], cs.vars);
    const P x0 = P::variable(cs.vars, 2, Rational(1));
    const P x1 = P::variable(cs.vars, 3, Rational(1));
    const P x2 = P::variable(cs.vars, 4, Rational(1));
    cs.g = {h0 - x0, x1 - h1, h2 - x2};
    cs.delta = p(detail::e_delta_text(t.tag));

    // g0 = 2u^3 + c0 + u*v*delta, g1 = 3u^2 - c1, g2 = c2 - u*delta.
    const P u = P::variable(cs.vars, 1, Rational(1));
    const P v = P::variable(cs.vars, 0, Rational(1));
    const P c0 = cs.g[0] - mapdet::term(cs.vars, Rational(2), {{1, 3}}) -
                 u * v * cs.delta;
    const P c1 = mapdet::term(cs.vars, Rational(3), {{1, 2}}) - cs.g[1];
    const P c2 = cs.g[2] + u * cs.delta;
    check(c0.degree_in(1) == 0 && c1.degree_in(1) == 0 && c2.degree_in(1) == 0,
          "char_system: coefficient data of the cubic system must be free of u");

    // Both routes to the pair: eliminate u, and compare against the pinned
    // classical expansion.
    const EliminationPair ab = elimination_build(c0, c1, c2, cs.delta, "v");
    check(ab.alpha == p(detail::e_alpha_text(t.tag)),
          "char_system: eliminated A must match its pinned expansion");
    check(ab.beta == p(detail::e_beta_text(t.tag)),
          "char_system: eliminated B must match its pinned expansion");
    cs.A = up_from_mpoly(ab.alpha, "v");
    cs.B = up_from_mpoly(ab.beta, "v");
    check(cs.A.declared_degree() == k, "char_system: deg_v A must equal k");

    // B depends linearly on x0, through -3*x0*delta.
    const P b0part = ab.beta - mp_specialize(ab.beta, 2, Rational(0));
    check(b0part == mp_scale(x0 * cs.delta, Rational(-3)),
          "char_system: x0-part of B must be -3*x0*delta");
    cs.B0 = up_from_mpoly(b0part, "v");

    // r from its defining resultant. Row reduction of the Sylvester matrix
    // (g2-rows minus u times the matching delta-shift rows) shows the u-terms
    // of g2 do not contribute: Res_v(g2, delta) = Res_v(c2, delta).
    const UPoly<P> g2v = up_from_mpoly(cs.g[2], "v");
    const UPoly<P> dv = up_from_mpoly(cs.delta, "v");
    const Rational scale = t.tag == Tag::E6   ? Rational(-1, 4)
                           : t.tag == Tag::E7 ? Rational(1, 3)
                                              : Rational(1);
    cs.r = mp_scale(resultant_bareiss(g2v, dv, zero, one), scale);
    check(cs.r.degree_in(1) == 0, "char_system: r must be free of u");
    check(cs.r == p(detail::e_r_text(t.tag)),
          "char_system: r must match its pinned expansion");

    long wa = 0, wb = 0, wr = 0;
    if (t.tag == Tag::E6) wa = 18, wb = 17, wr = 15;
    if (t.tag == Tag::E7) wa = 14, wb = 13, wr = 14;
    if (t.tag == Tag::E8) wa = 24, wb = 22, wr = 28;
    const auto da = mp_weighted_degree(ab.alpha, cs.weight_system());
    const auto db = mp_weighted_degree(ab.beta, cs.weight_system());
    const auto dr = mp_weighted_degree(cs.r, cs.weight_system());
    check(da && *da == wa && db && *db == wb && dr && *dr == wr,
          "char_system: E family data must be quasi-homogeneous");
    for (size_t i = 0; i < 3; ++i) {
      const auto dg = mp_weighted_degree(cs.g[i], cs.weight_system());
      check(dg && *dg == cs.weights[2 + i],
            "char_system: cubic system must be quasi-homogeneous");
    }

    if (t.tag == Tag::E6) cs.boundary = e6_boundary_system();
    return cs;
  }

  throw Error("char_system: type " + t.name() +
              " has no characteristic pair; its zero set comes from morin_theta");
}

// Factors of the principal subresultant coefficient of (A, B0) for the E8
// family: psc1_v(A, B0) = -2^2*3^8 * p1 * p2 * x0^7.
inline std::pair<MPoly<Rational>, MPoly<Rational>> e8_psc_lead_factors() {
  std::vector<std::string> vars = {"v", "u"};
  for (auto& x : mapdet::x_range(0, 7)) vars.push_back(x);
  auto p = [&](const std::string& s) { return mp_parse_text(s, vars); };
  return {p("20*x6^3 + 27*x4*x7^2*x6 - 30*x5*x7*x6 - 27*x3*x7^3"),
          p("40*x6^4 + 54*x4*x7^2*x6^2 - 120*x5*x7*x6^2 - 54*x3*x7^3*x6"
            " + 45*x5^2*x7^2 - 81*x4*x5*x7^3 + 81*x2*x7^4")};
}

}  // namespace wfront
