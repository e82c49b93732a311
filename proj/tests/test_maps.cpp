#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "wfront/io.hpp"
#include "wfront/maps.hpp"
#include "wfront/mpoly.hpp"

using namespace wfront;

using MP = MPoly<Rational>;
using ST = SingularityType;

namespace {

MP parse(const std::string& s, const std::vector<std::string>& vars) {
  return mp_parse_text(s, vars);
}

// Composes src with the map: variables u, v stay, x_i picks component i.
MP pull_back(const MP& f, const MapSpec& ms) {
  std::vector<MP> images;
  images.reserve(f.arity());
  for (size_t i = 0; i < f.arity(); ++i) {
    const std::string& name = f.vars[i];
    if (name == "u" || name == "v") {
      size_t idx = 0;
      for (size_t j = 0; j < ms.source_vars.size(); ++j)
        if (ms.source_vars[j] == name) idx = j;
      images.push_back(MP::variable(ms.source_vars, idx, Rational(1)));
    } else {
      const long slot = std::stol(name.substr(1));
      images.push_back(ms.components[static_cast<size_t>(slot)]);
    }
  }
  return mp_compose(f, images);
}

}  // namespace

TEST_CASE("type construction, naming and parsing") {
  REQUIRE(ST::A(2).name() == "A2");
  REQUIRE(ST::D(4, 1).name() == "D4+");
  REQUIRE(ST::D(5, -1).name() == "D5-");
  REQUIRE(ST::D(5, -1).dir_name() == "D5m");
  REQUIRE(ST::D(4, 1).dir_name() == "D4p");
  REQUIRE(ST::Morin(4, 5, 2).name() == "M4,5,2");
  REQUIRE(ST::Morin(4, 5, 2).dir_name() == "M4-5-2");
  REQUIRE(ST::CrossCap(2).name() == "C2");
  REQUIRE(ST::E7().name() == "E7");

  for (const std::string s : {"A2", "A8", "D4+", "D5-", "E6", "E7", "E8", "M4,5,2",
                              "M6,7,3", "C2", "C4"}) {
    REQUIRE(parse_type(s).name() == s);
  }
  REQUIRE_THROWS_AS(parse_type("A1"), Error);
  REQUIRE_THROWS_AS(parse_type("D3+"), Error);
  REQUIRE_THROWS_AS(parse_type("D4"), Error);
  REQUIRE_THROWS_AS(parse_type("M4,5,3"), Error);  // 4 < 3(5-4+1)
  REQUIRE_THROWS_AS(parse_type("Q1"), Error);
  REQUIRE_THROWS_AS(parse_type("Ax"), Error);
  REQUIRE_THROWS_AS(parse_type(""), Error);
}

TEST_CASE("pinned map components") {
  SECTION("A2") {
    MapSpec ms = build_map(ST::A(2));
    REQUIRE(ms.source_vars == std::vector<std::string>{"v"});
    REQUIRE(ms.components.size() == 2);
    REQUIRE(ms.components[0] == parse("2*v^3", ms.source_vars));
    REQUIRE(ms.components[1] == parse("-3*v^2", ms.source_vars));
  }
  SECTION("A3") {
    MapSpec ms = build_map(ST::A(3));
    REQUIRE(ms.components[0] == parse("3*v^4 + x2*v^2", ms.source_vars));
    REQUIRE(ms.components[1] == parse("-4*v^3 - 2*x2*v", ms.source_vars));
    REQUIRE(ms.components[2] == parse("x2", ms.source_vars));
  }
  SECTION("D4 both signs") {
    MapSpec dp = build_map(ST::D(4, 1));
    REQUIRE(dp.components[0] == parse("2*u^2*v + 2*v^3 + x3*v^2", dp.source_vars));
    REQUIRE(dp.components[1] == parse("-2*u*v", dp.source_vars));
    REQUIRE(dp.components[2] == parse("-u^2 - 3*v^2 - 2*x3*v", dp.source_vars));
    REQUIRE(dp.components[3] == parse("x3", dp.source_vars));
    MapSpec dm = build_map(ST::D(4, -1));
    REQUIRE(dm.components[0] == parse("-2*u^2*v + 2*v^3 + x3*v^2", dm.source_vars));
    REQUIRE(dm.components[1] == parse("2*u*v", dm.source_vars));
    REQUIRE(dm.components[2] == parse("u^2 - 3*v^2 - 2*x3*v", dm.source_vars));
  }
  SECTION("E6") {
    MapSpec ms = build_map(ST::E6());
    REQUIRE(ms.source_vars == std::vector<std::string>{"u", "v", "x3", "x4", "x5"});
    REQUIRE(ms.components[0] ==
            parse("2*u^3 + 3*v^4 + v^2*x3 + u*v*x4 + 2*u*v^2*x5", ms.source_vars));
    REQUIRE(ms.components[1] == parse("-3*u^2 - v*x4 - v^2*x5", ms.source_vars));
    REQUIRE(ms.components[2] ==
            parse("-4*v^3 - 2*v*x3 - u*x4 - 2*u*v*x5", ms.source_vars));
    REQUIRE(ms.target_arity() == 6);
  }
  SECTION("E7 h2 carries u*delta7") {
    MapSpec ms = build_map(ST::E7());
    REQUIRE(ms.components[2] ==
            parse("-2*x3*v - 3*x4*v^2 - 3*u*v^2 - 2*x6*u*v - x5*u", ms.source_vars));
  }
  SECTION("E8 h1 has no v^5") {
    MapSpec ms = build_map(ST::E8());
    REQUIRE(ms.components[1] ==
            parse("-3*u^2 - x5*v - x6*v^2 - x7*v^3", ms.source_vars));
    REQUIRE(ms.components[0] ==
            parse("2*u^3 + 4*v^5 + x3*v^2 + 2*x4*v^3 + 3*x7*u*v^3 + 2*x6*u*v^2 + "
                  "x5*u*v",
                  ms.source_vars));
  }
  SECTION("Morin(6,7,3)") {
    MapSpec ms = build_map(ST::Morin(6, 7, 3));
    REQUIRE(ms.target_arity() == 7);
    for (size_t i = 0; i < 5; ++i)
      REQUIRE(ms.components[i] == parse("x" + std::to_string(i + 1), ms.source_vars));
    REQUIRE(ms.components[5] ==
            parse("x1*x6 + x2*x6^2 + x3*x6^3", ms.source_vars));
    REQUIRE(ms.components[6] == parse("x4*x6 + x5*x6^2 + x6^4", ms.source_vars));
  }
  SECTION("Morin(4,5,1)") {
    MapSpec ms = build_map(ST::Morin(4, 5, 1));
    REQUIRE(ms.components[3] == parse("x1*x4", ms.source_vars));
    REQUIRE(ms.components[4] == parse("x4^2", ms.source_vars));
  }
  SECTION("Morin(4,5,2) index convention guard") {
    MapSpec ms = build_map(ST::Morin(4, 5, 2));
    REQUIRE(ms.components[0] == parse("x1", ms.source_vars));
    REQUIRE(ms.components[1] == parse("x2", ms.source_vars));
    REQUIRE(ms.components[2] == parse("x3", ms.source_vars));
    REQUIRE(ms.components[3] == parse("x1*x4 + x2*x4^2", ms.source_vars));
    REQUIRE(ms.components[4] == parse("x3*x4 + x4^3", ms.source_vars));
  }
  SECTION("cross cap tags build the 1-Morin map") {
    MapSpec cc = build_map(ST::CrossCap(2));
    REQUIRE(cc.components[0] == parse("x1", cc.source_vars));
    REQUIRE(cc.components[1] == parse("x1*x2", cc.source_vars));
    REQUIRE(cc.components[2] == parse("x2^2", cc.source_vars));
  }
}

TEST_CASE("map evaluation") {
  REQUIRE(eval_map(build_map(ST::A(3)), {Rational(1), Rational(0)}) ==
          std::vector<Rational>{Rational(3), Rational(-4), Rational(0)});
  REQUIRE(eval_map(build_map(ST::CrossCap(2)), {Rational(1), Rational(2)}) ==
          std::vector<Rational>{Rational(1), Rational(2), Rational(4)});
  for (const char* name : {"A2", "A5", "D4+", "D6-", "E6", "E7", "E8", "M4,5,2",
                           "M6,7,3", "C3"}) {
    MapSpec ms = build_map(parse_type(name));
    std::vector<Rational> origin(ms.source_arity(), Rational(0));
    for (const Rational& c : eval_map(ms, origin)) REQUIRE(c.is_zero());
  }
  REQUIRE_THROWS_AS(eval_map(build_map(ST::A(3)), {Rational(1)}), Error);
}

TEST_CASE("suspension") {
  SECTION("cross cap (2,3) -> (3,4)") {
    MapSpec s = suspend(build_map(ST::CrossCap(2)), 3, 4);
    REQUIRE(s.source_arity() == 3);
    REQUIRE(s.target_arity() == 4);
    REQUIRE(s.suspended);
    REQUIRE(s.components[0] == parse("x1", s.source_vars));
    REQUIRE(s.components[1] == parse("x1*x2", s.source_vars));
    REQUIRE(s.components[2] == parse("x2^2", s.source_vars));
    REQUIRE(s.components[3] == parse("y1", s.source_vars));
  }
  SECTION("A2 with one zero slot") {
    MapSpec s = suspend(build_map(ST::A(2)), 1, 3);
    REQUIRE(s.target_arity() == 3);
    REQUIRE(s.components[2].is_zero());
    REQUIRE(eval_map(s, {Rational(1)}) ==
            std::vector<Rational>{Rational(2), Rational(-3), Rational(0)});
  }
  SECTION("identity suspension returns the same map") {
    MapSpec s = suspend(build_map(ST::A(2)), 1, 2);
    REQUIRE(!s.suspended);
    REQUIRE(s.components == build_map(ST::A(2)).components);
  }
  SECTION("dimension constraints") {
    REQUIRE_THROWS_AS(suspend(build_map(ST::A(2)), 0, 2), Error);
    REQUIRE_THROWS_AS(suspend(build_map(ST::A(2)), 1, 1), Error);
    REQUIRE_THROWS_AS(suspend(build_map(ST::A(2)), 3, 3), Error);  // 1 < 2 new slots
  }
}

TEST_CASE("generating families") {
  GeneratingFamily a2 = generating_family(ST::A(2));
  REQUIRE(a2.F == parse("v^3 + x1*v + x0", a2.vars));

  GeneratingFamily a4 = generating_family(ST::A(4));
  REQUIRE(a4.F == parse("v^5 + x3*v^3 + x2*v^2 + x1*v + x0", a4.vars));

  GeneratingFamily d4 = generating_family(ST::D(4, 1));
  REQUIRE(d4.F == parse("u^2*v + v^3 + x1*u + x0 + x2*v + x3*v^2", d4.vars));

  GeneratingFamily d5m = generating_family(ST::D(5, -1));
  REQUIRE(d5m.F ==
          parse("-u^2*v + v^4 + x1*u + x0 + x2*v + x3*v^2 + x4*v^3", d5m.vars));

  GeneratingFamily e6 = generating_family(ST::E6());
  REQUIRE(e6.F ==
          parse("u^3 + v^4 + x5*u*v^2 + x4*u*v + x3*v^2 + x2*v + x1*u + x0", e6.vars));

  GeneratingFamily e7 = generating_family(ST::E7());
  REQUIRE(e7.F == parse("u^3 + u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + "
                        "x1*u + x0",
                        e7.vars));

  GeneratingFamily e8 = generating_family(ST::E8());
  REQUIRE(e8.F == parse("u^3 + v^5 + x7*u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 "
                        "+ x2*v + x1*u + x0",
                        e8.vars));

  REQUIRE_THROWS_AS(generating_family(ST::Morin(4, 5, 2)), Error);
  REQUIRE_THROWS_AS(generating_family(ST::CrossCap(2)), Error);
}

TEST_CASE("the map parametrizes the critical value set of its family") {
  std::vector<ST> types;
  for (long k = 2; k <= 8; ++k) types.push_back(ST::A(k));
  for (long k = 4; k <= 8; ++k) {
    types.push_back(ST::D(k, 1));
    types.push_back(ST::D(k, -1));
  }
  types.push_back(ST::E6());
  types.push_back(ST::E7());
  types.push_back(ST::E8());

  for (const ST& t : types) {
    INFO("type " << t.name());
    MapSpec ms = build_map(t);
    GeneratingFamily gf = generating_family(t);
    REQUIRE(pull_back(gf.F, ms).is_zero());
    if (t.tag != ST::Tag::A) {
      const size_t u_idx = 0;
      REQUIRE(pull_back(mp_derivative(gf.F, u_idx), ms).is_zero());
    }
    const size_t v_idx = t.tag == ST::Tag::A ? 0 : 1;
    REQUIRE(pull_back(mp_derivative(gf.F, v_idx), ms).is_zero());
  }
}

TEST_CASE("1-Morin maps are suspended cross caps up to the bridge permutation") {
  for (auto [m, n] : std::vector<std::pair<long, long>>{{4, 5}, {5, 7}, {6, 7}, {8, 9}}) {
    INFO("Morin(" << m << "," << n << ",1)");
    MapSpec morin = build_map(ST::Morin(m, n, 1));
    MorinCrossCapBridge br = morin_crosscap_bridge(m, n);
    MapSpec cc = suspend(build_map(ST::CrossCap(br.q)), m, n);
    REQUIRE(cc.target_arity() == morin.target_arity());
    REQUIRE(cc.source_arity() == morin.source_arity());
    std::vector<MP> images;
    for (size_t i = 0; i < cc.source_arity(); ++i)
      images.push_back(
          MP::variable(morin.source_vars, br.source_perm[i], Rational(1)));
    for (size_t j = 0; j < cc.target_arity(); ++j) {
      REQUIRE(morin.components[br.target_perm[j]] ==
              mp_compose(cc.components[j], images));
    }
  }
}

TEST_CASE("pass-through slots are exact projections") {
  for (const char* name : {"A6", "D7+", "E8", "M6,7,3"}) {
    MapSpec ms = build_map(parse_type(name));
    const size_t lead = ms.type.tag == ST::Tag::A     ? 2
                        : ms.type.tag == ST::Tag::Morin ? ms.target_arity() -
                                                              (ms.type.n - ms.type.m + 1)
                                                        : 3;
    size_t checked = 0;
    for (size_t i = (ms.type.tag == ST::Tag::Morin ? 0 : lead);
         i < (ms.type.tag == ST::Tag::Morin ? lead : ms.target_arity()); ++i) {
      const MP& c = ms.components[i];
      REQUIRE(c.terms.size() == 1);
      REQUIRE(c.terms[0].second == Rational(1));
      ++checked;
    }
    REQUIRE(checked > 0);
  }
}
