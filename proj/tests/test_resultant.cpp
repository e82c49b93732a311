#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "wfront/io.hpp"
#include "wfront/matrix.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/resultant.hpp"
#include "wfront/upoly.hpp"

using namespace wfront;

using MP = MPoly<Rational>;
using UP = UPoly<MP>;

namespace {

UP collect(const std::string& text, const std::vector<std::string>& vars,
           const std::string& main_var) {
  return up_from_mpoly(mp_parse_text(text, vars), main_var);
}

MP parse(const std::string& text, const std::vector<std::string>& vars) {
  return mp_parse_text(text, vars);
}

// Durand-Kerner root finder for the numeric oracle. Coefficients ascending.
std::vector<std::complex<double>> dk_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = c[i] / c[n];
  std::vector<std::complex<double>> r(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> p(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    p *= seed;
    r[i] = p;
  }
  auto horner = [&](const std::complex<double>& z) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = n; i >= 0; --i) acc = acc * z + a[i];
    return acc;
  };
  for (int it = 0; it < 600; ++it) {
    for (int i = 0; i < n; ++i) {
      std::complex<double> den(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (r[i] - r[j]);
      r[i] -= horner(r[i]) / den;
    }
  }
  return r;
}

double horner_at(const std::vector<double>& c, const std::complex<double>& z,
                 std::complex<double>* out) {
  std::complex<double> acc(0.0, 0.0);
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * z + c[i];
  *out = acc;
  return std::abs(acc);
}

}  // namespace

TEST_CASE("bareiss determinant on pinned matrices") {
  Matrix<Rational> m2(2);
  m2.at(0, 0) = 1;
  m2.at(0, 1) = -1;
  m2.at(1, 0) = 1;
  m2.at(1, 1) = -2;
  REQUIRE(bareiss_det(m2, Rational(1)) == Rational(-1));

  Matrix<Rational> swap2(2);
  swap2.at(0, 0) = 0;
  swap2.at(0, 1) = 1;
  swap2.at(1, 0) = 1;
  swap2.at(1, 1) = 0;
  REQUIRE(bareiss_det(swap2, Rational(1)) == Rational(-1));

  Matrix<Rational> sing(3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) sing.at(i, j) = Rational(static_cast<long>(i + j));
  REQUIRE(bareiss_det(sing, Rational(1)) == Rational(0));

  Matrix<Rational> empty(0);
  REQUIRE(bareiss_det(empty, Rational(1)) == Rational(1));
}

TEST_CASE("bareiss determinant over a polynomial ring is exact") {
  std::vector<std::string> vars{"a", "b", "c"};
  Matrix<MP> vand(3, MP::zero(vars));
  for (size_t i = 0; i < 3; ++i) {
    MP x = MP::variable(vars, i, Rational(1));
    vand.at(i, 0) = MP::constant(vars, 1);
    vand.at(i, 1) = x;
    vand.at(i, 2) = mp_mul(x, x);
  }
  MP det = bareiss_det(vand, MP::constant(vars, 1));
  MP expect = mp_mul(mp_mul(parse("b - a", vars), parse("c - a", vars)),
                     parse("c - b", vars));
  REQUIRE(det == expect);
}

TEST_CASE("sylvester layout matches the fixed row convention") {
  std::vector<std::string> vars{"v", "x", "y", "z"};
  UP a = collect("x*v - y", vars, "v");
  UP b = collect("v^2 - z", vars, "v");
  Matrix<MP> s = sylvester(a, b, MP::zero(vars));
  REQUIRE(s.n == 3);
  // First deg(b) = 2 rows carry a's coefficients, last deg(a) = 1 row b's.
  REQUIRE(s.at(0, 0) == parse("x", vars));
  REQUIRE(s.at(0, 1) == parse("-y", vars));
  REQUIRE(s.at(0, 2) == MP::zero(vars));
  REQUIRE(s.at(1, 0) == MP::zero(vars));
  REQUIRE(s.at(1, 1) == parse("x", vars));
  REQUIRE(s.at(1, 2) == parse("-y", vars));
  REQUIRE(s.at(2, 0) == parse("1", vars));
  REQUIRE(s.at(2, 1) == MP::zero(vars));
  REQUIRE(s.at(2, 2) == parse("-z", vars));

  MP res = resultant_bareiss(a, b, MP::zero(vars), MP::constant(vars, 1));
  REQUIRE(res == parse("y^2 - z*x^2", vars));
  MP res_prs = resultant_prs(a, b, MP::zero(vars), MP::constant(vars, 1));
  REQUIRE(res_prs == res);

  REQUIRE(psc1(a, b, MP::zero(vars), MP::constant(vars, 1)) == parse("x", vars));

  REQUIRE_THROWS_AS(sylvester(a, collect("x", vars, "v"), MP::zero(vars)), Error);
}

TEST_CASE("characteristic pair of the planar double fold") {
  std::vector<std::string> vars{"t", "y1", "y2", "y3", "y4", "y5"};
  UP a = collect("y2*t^2 + y1*t - y4", vars, "t");
  UP b = collect("t^3 + y3*t - y5", vars, "t");
  MP zero = MP::zero(vars), one = MP::constant(vars, 1);

  MP res = resultant_bareiss(a, b, zero, one);
  MP expect = parse(
      "-y1^2*y3*y4 - y2^2*y3^2*y4 - 2*y2*y3*y4^2 - y4^3 + y1^3*y5 + "
      "y1*y2^2*y3*y5 + 3*y1*y2*y4*y5 + y2^3*y5^2",
      vars);
  REQUIRE(res == expect);
  REQUIRE(resultant_prs(a, b, zero, one) == expect);

  MP s1 = psc1(a, b, zero, one);
  REQUIRE(s1 == parse("y4*y2 + y1^2 + y2^2*y3", vars));

  auto chain = subresultant_chain(a, b, zero, one);
  REQUIRE(chain.size() == 3);  // j = 0, 1, 2
  REQUIRE(chain[0] == expect);
  REQUIRE(chain[1] == s1);
}

TEST_CASE("resultant of a polynomial with itself or a shared factor vanishes") {
  UPoly<Rational> lin("v", {Rational(-3), Rational(1)});
  REQUIRE(resultant_bareiss(lin, lin, Rational(0), Rational(1)) == Rational(0));
  REQUIRE(resultant_prs(lin, lin, Rational(0), Rational(1)) == Rational(0));

  // (v-2)(v+3) and (v-2)(v^2+1)
  UPoly<Rational> p("v", {Rational(-6), Rational(1), Rational(1)});
  UPoly<Rational> q("v", {Rational(-2), Rational(1), Rational(-2), Rational(1)});
  REQUIRE(resultant_bareiss(p, q, Rational(0), Rational(1)) == Rational(0));
  REQUIRE(resultant_prs(p, q, Rational(0), Rational(1)) == Rational(0));

  // Coprime pair must not vanish.
  UPoly<Rational> r("v", {Rational(1), Rational(0), Rational(1)});
  REQUIRE(resultant_bareiss(p, r, Rational(0), Rational(1)) != Rational(0));
}

TEST_CASE("declared-degree reduction strips vanishing leads with lc factors") {
  std::vector<std::string> vars{"v", "s", "t"};
  MP zero = MP::zero(vars), one = MP::constant(vars, 1);
  UP a = collect("s*v^2 + t*v + 1", vars, "v");
  // b declared degree 3 with zero leading coefficient, actual degree 2.
  MP b3 = parse("t*v^2 + s*v + 2", vars);
  UP b_pad = up_from_mpoly(b3, "v");
  b_pad.c.push_back(zero);  // declared degree 3
  REQUIRE(b_pad.declared_degree() == 3);
  REQUIRE(b_pad.actual_degree() == 2);

  UP b_trim = up_from_mpoly(b3, "v");
  MP lhs_b = resultant_bareiss(a, b_pad, zero, one);
  MP rhs_b = mp_mul(parse("s", vars), resultant_bareiss(a, b_trim, zero, one));
  REQUIRE(lhs_b == rhs_b);

  MP lhs_p = resultant_prs(a, b_pad, zero, one);
  REQUIRE(lhs_p == lhs_b);

  // Two padding slots.
  b_pad.c.push_back(zero);
  REQUIRE(resultant_bareiss(a, b_pad, zero, one) ==
          mp_mul(parse("s^2", vars), resultant_bareiss(a, b_trim, zero, one)));
  REQUIRE(resultant_prs(a, b_pad, zero, one) ==
          resultant_bareiss(a, b_pad, zero, one));

  // Zero lead on the first argument goes through the swap sign.
  UP a_pad = a;
  a_pad.c.push_back(zero);
  REQUIRE(resultant_bareiss(a_pad, b_trim, zero, one) ==
          resultant_prs(a_pad, b_trim, zero, one));

  // Both leads zero: a zero column, so the resultant vanishes.
  REQUIRE(resultant_bareiss(a_pad, b_pad, zero, one) == zero);
  REQUIRE(resultant_prs(a_pad, b_pad, zero, one) == zero);

  // Identically zero polynomial at positive declared degree: zero rows.
  UP z("v", {zero, zero, zero});
  REQUIRE(resultant_bareiss(a, z, zero, one) == zero);
  REQUIRE(resultant_prs(a, z, zero, one) == zero);
}

TEST_CASE("pseudo-remainder") {
  UPoly<Rational> a("v", {Rational(1), Rational(1), Rational(0), Rational(1)});
  UPoly<Rational> b("v", {Rational(1), Rational(0), Rational(1)});
  UPoly<Rational> r = prem(a, b);  // v^3+v+1 mod v^2+1 with lc 1
  REQUIRE(r.trimmed().c == std::vector<Rational>{Rational(1)});

  UPoly<Rational> c("v", {Rational(0), Rational(0), Rational(1)});
  UPoly<Rational> d("v", {Rational(-1), Rational(2)});
  UPoly<Rational> r2 = prem(c, d);  // 4 v^2 mod (2v - 1) = 1
  REQUIRE(r2.trimmed().c == std::vector<Rational>{Rational(1)});

  REQUIRE_THROWS_AS(prem(a, UPoly<Rational>("v", {Rational(0)})), Error);
}

TEST_CASE("subresultant chain detects planted gcd degree") {
  // g of degree k times coprime cofactors; chain[0..k-1] vanish, chain[k] not.
  std::vector<std::pair<std::vector<long>, long>> gs = {
      {{1, 1}, 1},          // v + 1
      {{2, 0, 1}, 2},       // v^2 + 2
      {{-1, 3, 0, 1}, 3},   // v^3 + 3v - 1
  };
  UPoly<Rational> p("v", {Rational(3), Rational(1), Rational(1)});   // v^2+v+3
  UPoly<Rational> q("v", {Rational(-2), Rational(5), Rational(2)});  // 2v^2+5v-2
  for (const auto& [coeffs, k] : gs) {
    std::vector<Rational> gc;
    for (long x : coeffs) gc.emplace_back(x);
    UPoly<Rational> g("v", gc);
    UPoly<Rational> A = up_mul(g, p);
    UPoly<Rational> B = up_mul(g, q);
    auto chain = subresultant_chain(A, B, Rational(0), Rational(1));
    for (long j = 0; j < k; ++j) REQUIRE(chain[static_cast<size_t>(j)] == Rational(0));
    REQUIRE(chain[static_cast<size_t>(k)] != Rational(0));
  }
}

TEST_CASE("prs agrees with bareiss on random scalar pairs") {
  std::mt19937 rng(20240818);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> deg(2, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const int da = deg(rng), db = deg(rng);
    std::vector<Rational> ac, bc;
    for (int i = 0; i < da; ++i) ac.emplace_back(coeff(rng));
    ac.emplace_back(coeff(rng) | 1);  // nonzero lead
    for (int i = 0; i < db; ++i) bc.emplace_back(coeff(rng));
    bc.emplace_back(coeff(rng) | 1);
    UPoly<Rational> a("v", ac), b("v", bc);
    Rational rb = resultant_bareiss(a, b, Rational(0), Rational(1));
    Rational rp = resultant_prs(a, b, Rational(0), Rational(1));
    REQUIRE(rb == rp);
  }
}

TEST_CASE("prs agrees with bareiss on random polynomial-coefficient pairs") {
  std::mt19937 rng(20240819);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> deg(2, 4);
  std::vector<std::string> vars{"v", "s", "t"};
  MP zero = MP::zero(vars), one = MP::constant(vars, 1);
  auto rand_coeff = [&]() {
    MP c = MP::constant(vars, Rational(coeff(rng)));
    c = mp_add(c, mp_scale(MP::variable(vars, 1, Rational(1)), Rational(coeff(rng))));
    c = mp_add(c, mp_scale(MP::variable(vars, 2, Rational(1)), Rational(coeff(rng))));
    return c;
  };
  for (int trial = 0; trial < 12; ++trial) {
    const int da = deg(rng), db = deg(rng);
    std::vector<MP> ac, bc;
    for (int i = 0; i <= da; ++i) ac.push_back(rand_coeff());
    for (int i = 0; i <= db; ++i) bc.push_back(rand_coeff());
    if (k_is_zero(ac.back())) ac.back() = one;
    if (k_is_zero(bc.back())) bc.back() = one;
    UP a("v", ac), b("v", bc);
    MP rb = resultant_bareiss(a, b, zero, one);
    MP rp = resultant_prs(a, b, zero, one);
    REQUIRE(rb == rp);
  }
}

TEST_CASE("numeric root-product oracle validates the exact resultant") {
  std::mt19937 rng(20240820);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> deg(2, 4);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int da = deg(rng), db = deg(rng);
    std::vector<double> ad, bd;
    std::vector<Rational> ac, bc;
    for (int i = 0; i <= da; ++i) {
      int c = (i == da) ? (coeff(rng) | 1) : coeff(rng);
      ad.push_back(c);
      ac.emplace_back(c);
    }
    for (int i = 0; i <= db; ++i) {
      int c = (i == db) ? (coeff(rng) | 1) : coeff(rng);
      bd.push_back(c);
      bc.emplace_back(c);
    }
    UPoly<Rational> a("v", ac), b("v", bc);
    Rational exact = resultant_bareiss(a, b, Rational(0), Rational(1));

    auto roots = dk_roots(ad);
    std::complex<double> prod(1.0, 0.0);
    for (const auto& alpha : roots) {
      std::complex<double> val;
      horner_at(bd, alpha, &val);
      prod *= val;
    }
    double lc_pow = std::pow(ad.back(), static_cast<double>(db));
    std::complex<double> numeric = lc_pow * prod;
    double exact_d = static_cast<double>(exact);
    double denom = std::max(1.0, std::abs(exact_d));
    REQUIRE(std::abs(numeric.real() - exact_d) / denom < 1e-6);
    REQUIRE(std::abs(numeric.imag()) / denom < 1e-6);
    ++checked;
  }
  REQUIRE(checked == 50);
}

TEST_CASE("strategy dispatch") {
  UPoly<Rational> a("v", {Rational(1), Rational(2), Rational(1)});
  UPoly<Rational> b("v", {Rational(-1), Rational(1)});
  Rational r0 = resultant(a, b, Rational(0), Rational(1));
  REQUIRE(r0 == resultant_bareiss(a, b, Rational(0), Rational(1)));
  REQUIRE(resultant(a, b, Rational(0), Rational(1), ResultantStrategy::PRS) == r0);
  REQUIRE(parse_strategy("auto") == ResultantStrategy::Auto);
  REQUIRE(parse_strategy("bareiss") == ResultantStrategy::Bareiss);
  REQUIRE(parse_strategy("prs") == ResultantStrategy::PRS);
  REQUIRE(parse_strategy("modular") == ResultantStrategy::Modular);
  REQUIRE_THROWS_AS(parse_strategy("nope"), Error);
  REQUIRE_THROWS_AS(resultant(a, b, Rational(0), Rational(1), ResultantStrategy::Modular),
                    Error);
}
