#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "wfront/charsys.hpp"
#include "wfront/io.hpp"
#include "wfront/maps.hpp"
#include "wfront/theta.hpp"

using namespace wfront;
using MP = MPoly<Rational>;
using UP = UPoly<MP>;
using ST = SingularityType;

namespace {

MP parse(const std::string& s, const std::vector<std::string>& vars) {
  return mp_parse_text(s, vars);
}

Rational ipow(long b, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * Rational(b);
  return r;
}

// Coefficient of var^e, with the var slot zeroed.
MP coeff_of(const MP& f, const std::string& var, long e) {
  UP u = up_from_mpoly(f, var);
  if (e > u.declared_degree()) return MP::zero(f.vars);
  return u.coeff(static_cast<size_t>(e));
}

// f lives on the target frame; substitute the map components.
MP compose_with_map(const MP& f, const MapSpec& ms) {
  return mp_compose(mp_change_vars(f, ms.target_names), ms.components);
}

std::vector<Rational> q(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("A family theta") {
  SECTION("cuspidal edge") {
    ThetaResult th = build_theta(ST::A(2));
    REQUIRE(th.vars == std::vector<std::string>{"x0", "x1"});
    REQUIRE(th.theta == parse("27*x0^2 + 4*x1^3", th.vars));
    REQUIRE(th.theta == th.R);
    REQUIRE(!th.S);
    REQUIRE(th.r == MP::constant(th.vars, Rational(1)));
    REQUIRE(th.divided);
  }
  SECTION("swallowtail") {
    ThetaResult th = build_theta(ST::A(3));
    REQUIRE(th.theta == parse("256*x0^3 - 128*x2^2*x0^2 + 144*x1^2*x2*x0 "
                              "+ 16*x2^4*x0 - 27*x1^4 - 4*x1^2*x2^3",
                              th.vars));
  }
  SECTION("modular route agrees with the direct one") {
    ThetaOptions mod;
    mod.strategy = ThetaStrategy::Modular;
    for (long k = 2; k <= 4; ++k)
      REQUIRE(build_theta(ST::A(k), mod).theta == build_theta(ST::A(k)).theta);
  }
  SECTION("theta pulls back to zero along the map") {
    for (long k = 2; k <= 5; ++k) {
      ThetaResult th = build_theta(ST::A(k));
      REQUIRE(compose_with_map(th.theta, build_map(ST::A(k))).is_zero());
    }
  }
  SECTION("grading") {
    for (long k = 2; k <= 6; ++k) {
      ThetaResult th = build_theta(ST::A(k));
      WeightSystem ws{th.weights};
      REQUIRE(mp_weighted_degree(th.theta, ws) == std::optional<long>(k * (k + 1)));
      REQUIRE(th.divided);
    }
  }
}

TEST_CASE("D family theta") {
  for (int s : {1, -1}) {
    for (long k = 4; k <= 5; ++k) {
      INFO("D" << k << (s > 0 ? "+" : "-"));
      ThetaResult th = build_theta(ST::D(k, s));
      REQUIRE(th.theta == th.R);
      REQUIRE(!th.S);
      WeightSystem ws{th.weights};
      REQUIRE(mp_weighted_degree(th.theta, ws) == std::optional<long>(2 * k * (k - 1)));
      REQUIRE(compose_with_map(th.theta, build_map(ST::D(k, s))).is_zero());
    }
  }
  SECTION("modular route agrees with the direct one") {
    ThetaOptions mod;
    mod.strategy = ThetaStrategy::Modular;
    REQUIRE(build_theta(ST::D(4, 1), mod).theta == build_theta(ST::D(4, 1)).theta);
    REQUIRE(build_theta(ST::D(4, -1), mod).theta == build_theta(ST::D(4, -1)).theta);
  }
  SECTION("the two signs differ") {
    REQUIRE(build_theta(ST::D(4, 1)).theta != build_theta(ST::D(4, -1)).theta);
  }
}

TEST_CASE("E8 strategy gating and leading data") {
  REQUIRE_THROWS_AS(build_theta(ST::E8()), Error);
  ThetaOptions unbudgeted;
  unbudgeted.strategy = ThetaStrategy::Modular;
  REQUIRE_THROWS_AS(build_theta(ST::E8(), unbudgeted), Error);

  CharSystem cs = char_system(ST::E8());
  B0Shortcut bs = b0_shortcut(cs);
  const MP x0 = MP::variable(cs.vars, 2, Rational(1));
  REQUIRE(bs.R0 == mp_scale(mp_pow(cs.r, 2) * mp_pow(x0, 8), ipow(3, 10)));
  auto [p1, p2] = e8_psc_lead_factors();
  REQUIRE(bs.S0 == mp_scale(p1 * p2 * mp_pow(x0, 7), -Rational(26244)));

  REQUIRE_THROWS_AS(b0_shortcut(char_system(ST::A(2))), Error);
}

TEST_CASE("fold family closed forms") {
  SECTION("dimension-2 cross cap") {
    MorinTheta mt = morin_theta(ST::CrossCap(2));
    REQUIRE(mt.vars == std::vector<std::string>{"y1", "y2", "y3"});
    REQUIRE(mt.classic.has_value());
    REQUIRE(*mt.classic == parse("y2^2 - y1^2*y3", mt.vars));
    REQUIRE(mt.theta == parse("y2^4 - 2*y1^2*y2^2*y3 + y1^4*y3^2", mt.vars));
    REQUIRE(!mt.S);
    REQUIRE(!mt.a);
  }
  SECTION("dimension-3 cross cap") {
    MorinTheta mt = morin_theta(ST::CrossCap(3));
    REQUIRE(mt.theta == parse("y3^4 - 2*y1^2*y3^2*y5 + y1^4*y5^2 "
                              "+ y4^4 - 2*y2^2*y4^2*y5 + y2^4*y5^2",
                              mt.vars));
    REQUIRE(!mt.classic);
  }
  SECTION("single fold families reduce through the bridge") {
    MorinTheta m34 = morin_theta(ST::Morin(3, 4, 1));
    REQUIRE(m34.theta == parse("y3^4 - 2*y1^2*y3^2*y4 + y1^4*y4^2", m34.vars));
    REQUIRE(*m34.classic == parse("y3^2 - y1^2*y4", m34.vars));
    MorinTheta m56 = morin_theta(ST::Morin(5, 6, 1));
    REQUIRE(m56.theta == parse("y5^4 - 2*y1^2*y5^2*y6 + y1^4*y6^2", m56.vars));
  }
  SECTION("theta pulls back to zero along the map") {
    for (const char* name : {"C2", "C3", "M3,4,1", "M5,6,1", "M4,7,1", "M4,5,2"}) {
      INFO(name);
      ST t = parse_type(name);
      REQUIRE(compose_with_map(morin_theta(t).theta, build_map(t)).is_zero());
    }
  }
  SECTION("the (4,5) double fold") {
    MorinTheta mt = morin_theta(ST::Morin(4, 5, 2));
    REQUIRE(mt.theta == parse("-y1^2*y3*y4 - y2^2*y3^2*y4 - 2*y2*y3*y4^2 - y4^3 "
                              "+ y1^3*y5 + y1*y2^2*y3*y5 + 3*y1*y2*y4*y5 + y2^3*y5^2",
                              mt.vars));
    REQUIRE(mt.S.has_value());
    REQUIRE(*mt.S == parse("y1^2 + y2^2*y3 + y2*y4", mt.vars));
    REQUIRE(mt.a->declared_degree() == 2);
    REQUIRE(mt.b->declared_degree() == 3);
    // At an ordinary image point a and b share the single root t = x4, so
    // theta vanishes there while the first subresultant does not.
    MapSpec ms = build_map(ST::Morin(4, 5, 2));
    auto y = eval_map(ms, q({Rational(3), Rational(0), Rational(3), Rational(2)}));
    REQUIRE(mp_eval(mp_change_vars(*mt.S, ms.target_names), y) != Rational(0));
  }
  SECTION("no closed form outside the catalogue") {
    REQUIRE_THROWS_AS(morin_theta(ST::Morin(5, 6, 2)), Unsupported);
    REQUIRE_THROWS_AS(morin_theta(ST::Morin(6, 7, 3)), Unsupported);
    REQUIRE_THROWS_AS(morin_theta(ST::A(2)), Error);
  }
}

TEST_CASE("suspension rule") {
  MorinTheta base = morin_theta(ST::CrossCap(2));

  SECTION("one zero slot") {
    MapSpec ms = suspend(build_map(ST::CrossCap(2)), 2, 4);
    MP th = suspend_theta(base.theta, ms);
    REQUIRE(th == parse("y2^8 - 4*y1^2*y2^6*y3 + 6*y1^4*y2^4*y3^2 "
                        "- 4*y1^6*y2^2*y3^3 + y1^8*y3^4 + z1^2",
                        ms.target_names));
    auto on = eval_map(ms, q({Rational(1), Rational(2)}));
    REQUIRE(mp_eval(th, on) == Rational(0));
    REQUIRE(mp_eval(th, q({Rational(1), Rational(2), Rational(4), Rational(1)})) ==
            Rational(1));
  }
  SECTION("pass-through and zero slots together") {
    MapSpec ms = suspend(build_map(ST::CrossCap(2)), 3, 5);
    MP th = suspend_theta(base.theta, ms);
    auto on = eval_map(ms, q({Rational(1), Rational(2), Rational(7)}));
    REQUIRE(on == q({Rational(1), Rational(2), Rational(4), Rational(7), Rational(0)}));
    REQUIRE(mp_eval(th, on) == Rational(0));
    REQUIRE(mp_eval(th, q({Rational(1), Rational(2), Rational(4), Rational(7),
                           Rational(2)})) == Rational(4));
  }
  SECTION("suspended cuspidal edge") {
    MapSpec ms = suspend(build_map(ST::A(2)), 1, 3);
    MP th = suspend_theta(build_theta(ST::A(2)).theta, ms);
    REQUIRE(th == parse("729*x0^4 + 216*x0^2*x1^3 + 16*x1^6 + z1^2", ms.target_names));
    REQUIRE(mp_eval(th, eval_map(ms, q({Rational(1)}))) == Rational(0));
  }
  SECTION("rejects plain maps") {
    REQUIRE_THROWS_AS(suspend_theta(base.theta, build_map(ST::CrossCap(2))), Error);
  }
}

TEST_CASE("E6 eliminant pair") {
  ThetaOptions opt;
  ModularReport rep;
  opt.report = &rep;
  ThetaResult th = build_theta(ST::E6(), opt);

  REQUIRE(rep.primes_used.size() >= 1);
  REQUIRE(th.vars == std::vector<std::string>{"x0", "x1", "x2", "x3", "x4", "x5"});
  REQUIRE(th.weights == std::vector<long>{12, 8, 9, 6, 5, 2});
  REQUIRE(th.divided);
  REQUIRE(th.S.has_value());

  WeightSystem ws{th.weights};
  REQUIRE(mp_weighted_degree(th.R, ws) == std::optional<long>(102));
  REQUIRE(mp_weighted_degree(th.theta, ws) == std::optional<long>(72));
  REQUIRE(mp_weighted_degree(*th.S, ws) == std::optional<long>(70));

  // x0-leading terms of the pair.
  REQUIRE(coeff_of(th.R, "x0", 6) ==
          mp_scale(mp_pow(th.r, 2), ipow(2, 20) * ipow(3, 11)));
  REQUIRE(coeff_of(*th.S, "x0", 5) ==
          mp_scale(parse("x5^5", th.vars), -(ipow(2, 21) * ipow(3, 9))));

  // The B0 pair reproduces both leading terms up to one common scalar.
  B0Shortcut bs = b0_shortcut(char_system(ST::E6()));
  const Rational scalar = ipow(2, 16) * ipow(3, 4);
  REQUIRE(coeff_of(th.R, "x0", 6) ==
          mp_scale(mp_change_vars(coeff_of(bs.R0, "x0", 6), th.vars), scalar));
  REQUIRE(coeff_of(*th.S, "x0", 5) ==
          mp_scale(mp_change_vars(coeff_of(bs.S0, "x0", 5), th.vars), scalar));

  // theta vanishes on the image.
  MapSpec ms = build_map(ST::E6());
  for (auto& src : {q({Rational(1), Rational(-1), Rational(0), Rational(2), Rational(1)}),
                    q({Rational(1, 2), Rational(1, 3), Rational(1), Rational(-2),
                       Rational(3)}),
                    q({Rational(0), Rational(2), Rational(-1), Rational(1), Rational(5)})}) {
    auto y = eval_map(ms, src);
    REQUIRE(mp_eval(th.theta, y) == Rational(0));
    REQUIRE(mp_eval(th.R, y) == Rational(0));
  }
  REQUIRE(th.theta.term_count() > 100);
}

TEST_CASE("E7 eliminant pair") {
  ThetaOptions opt;
  ThetaResult th = build_theta(ST::E7(), opt);

  REQUIRE(th.weights == std::vector<long>{9, 6, 7, 5, 3, 4, 2});
  REQUIRE(th.divided);
  WeightSystem ws{th.weights};
  REQUIRE(mp_weighted_degree(th.R, ws) == std::optional<long>(91));
  REQUIRE(mp_weighted_degree(th.theta, ws) == std::optional<long>(63));
  REQUIRE(mp_weighted_degree(*th.S, ws) == std::optional<long>(66));

  // deg A = 7 and deg B = 5 are both odd, so here the sign of R depends on
  // the argument order: Res(A, B) = -Res(B, A).
  REQUIRE(coeff_of(th.R, "x0", 7) == mp_scale(mp_pow(th.r, 2), -ipow(3, 20)));
  REQUIRE(coeff_of(*th.S, "x0", 6) ==
          mp_scale(parse("x3 - x4*x6", th.vars) *
                       parse("3*x2 - 3*x4*x5 - 2*x3*x6 + 2*x4*x6^2", th.vars),
                   ipow(2, 2) * ipow(3, 18)));

  // Dual route: the x0-lead of R is lc_v(A)^(deg B - deg B0) * Res(A, B0).
  B0Shortcut bs = b0_shortcut(char_system(ST::E7()));
  REQUIRE(coeff_of(th.R, "x0", 7) ==
          mp_scale(mp_change_vars(coeff_of(bs.R0, "x0", 7), th.vars), ipow(3, 6)));

  MapSpec ms = build_map(ST::E7());
  for (auto& src :
       {q({Rational(1), Rational(-1), Rational(0), Rational(2), Rational(1), Rational(1)}),
        q({Rational(1, 2), Rational(2), Rational(1), Rational(0), Rational(-1),
           Rational(3)})}) {
    auto y = eval_map(ms, src);
    REQUIRE(mp_eval(th.theta, y) == Rational(0));
    REQUIRE(mp_eval(th.R, y) == Rational(0));
  }
}
