#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "wfront/io.hpp"
#include "wfront/modres.hpp"
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

struct Corpus {
  std::vector<std::pair<UP, UP>> pairs;
  std::vector<std::string> vars{"v", "s", "t"};
};

Corpus corpus_50() {
  Corpus c;
  std::mt19937 rng(20240821);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> deg(2, 4);
  std::uniform_int_distribution<int> mode(0, 5);
  const Rational one(1);
  auto rand_coeff = [&](bool frac) {
    MP r = MP::constant(c.vars, Rational(coeff(rng)));
    r = mp_add(r, mp_scale(MP::variable(c.vars, 1, one), Rational(coeff(rng))));
    r = mp_add(r, mp_scale(MP::variable(c.vars, 2, one), Rational(coeff(rng))));
    if (frac) r = mp_scale(r, Rational(1, 2));
    return r;
  };
  for (int i = 0; i < 50; ++i) {
    const int m = mode(rng);
    const bool frac = m == 1;
    const int da = deg(rng), db = deg(rng);
    std::vector<MP> ac, bc;
    for (int k = 0; k <= da; ++k) ac.push_back(rand_coeff(frac));
    for (int k = 0; k <= db; ++k) bc.push_back(rand_coeff(false));
    if (k_is_zero(ac.back())) ac.back() = MP::constant(c.vars, one);
    if (k_is_zero(bc.back())) bc.back() = MP::constant(c.vars, one);
    if (m == 2) ac.push_back(MP::zero(c.vars));  // padded formal degree
    if (m == 3) bc.push_back(MP::zero(c.vars));
    c.pairs.emplace_back(UP("v", ac), UP("v", bc));
  }
  return c;
}

}  // namespace

TEST_CASE("modular resultant matches the direct determinant on the corpus") {
  Corpus c = corpus_50();
  MP zero = MP::zero(c.vars), one = MP::constant(c.vars, 1);
  size_t done = 0;
  for (const auto& [a, b] : c.pairs) {
    MP direct = resultant_bareiss(a, b, zero, one);
    MP mod = resultant_modular(a, b);
    REQUIRE(mod == direct);
    ++done;
  }
  REQUIRE(done == 50);
}

TEST_CASE("all three strategies agree and report primes") {
  Corpus c = corpus_50();
  const auto& [a, b] = c.pairs[0];
  MP zero = MP::zero(c.vars), one = MP::constant(c.vars, 1);
  MP direct = resultant_bareiss(a, b, zero, one);

  for (ModStrategy st : {ModStrategy::EvaluateInterpolate, ModStrategy::CrtPrimes,
                         ModStrategy::Hybrid}) {
    ModularOptions opt;
    opt.strategy = st;
    ModularReport rep;
    MP mod = resultant_modular(a, b, opt, &rep);
    REQUIRE(mod == direct);
    REQUIRE(!rep.primes_used.empty());
    REQUIRE(rep.kernel_calls > 0);
  }
  REQUIRE(parse_mod_strategy("evaluate-interpolate") == ModStrategy::EvaluateInterpolate);
  REQUIRE(parse_mod_strategy("crt-primes") == ModStrategy::CrtPrimes);
  REQUIRE(parse_mod_strategy("hybrid") == ModStrategy::Hybrid);
  REQUIRE_THROWS_AS(parse_mod_strategy("x"), Error);
}

TEST_CASE("psc via the modular engine") {
  std::vector<std::string> vars{"t", "y1", "y2", "y3", "y4", "y5"};
  UP a = collect("y2*t^2 + y1*t - y4", vars, "t");
  UP b = collect("t^3 + y3*t - y5", vars, "t");
  ModularOptions opt;
  opt.psc_index = 1;
  MP s1 = resultant_modular(a, b, opt);
  REQUIRE(s1 == mp_parse_text("y4*y2 + y1^2 + y2^2*y3", vars));

  // And the resultant itself.
  MP r = resultant_modular(a, b);
  REQUIRE(r == resultant_bareiss(a, b, MP::zero(vars), MP::constant(vars, 1)));
}

TEST_CASE("weighted dehomogenization reconstructs the quartic discriminant") {
  std::vector<std::string> vars{"v", "x0", "x1", "x2"};
  UP a = collect("v^4 + x2*v^2 + x1*v + x0", vars, "v");
  UP b = collect("4*v^3 + 2*x2*v + x1", vars, "v");
  MP zero = MP::zero(vars), one = MP::constant(vars, 1);
  MP direct = resultant_bareiss(a, b, zero, one);
  MP expect = mp_parse_text(
      "256*x0^3 - 128*x2^2*x0^2 + 144*x1^2*x2*x0 + 16*x2^4*x0 - 27*x1^4 - "
      "4*x1^2*x2^3",
      vars);
  REQUIRE(direct == expect);

  ModularOptions opt;
  opt.weights = {1, 4, 3, 2};  // v, x0, x1, x2
  ModularReport rep;
  MP mod = resultant_modular(a, b, opt, &rep);
  REQUIRE(mod == expect);
  // The x2 grid (largest bound) is eliminated by the weighted recovery.
  REQUIRE(rep.grid_points_per_prime <= 20u);

  // Same result without weights.
  MP plain = resultant_modular(a, b);
  REQUIRE(plain == expect);

  // Weighted recovery for a principal subresultant coefficient: the block has
  // rows_a*n + rows_b*m - rows_a*rows_b column offsets, not rows_a*rows_b.
  MP sub_direct = psc1(a, b, zero, one);
  ModularOptions sopt;
  sopt.weights = {1, 4, 3, 2};
  sopt.psc_index = 1;
  REQUIRE(resultant_modular(a, b, sopt) == sub_direct);
}

TEST_CASE("vanishing resultant reconstructs to the zero polynomial") {
  std::vector<std::string> vars{"v", "s"};
  UP a = collect("v^2 - v - s*v + s", vars, "v");  // (v-1)(v-s)
  UP b = collect("v^2 + v - s*v - s", vars, "v");  // (v+1)(v-s)
  MP direct = resultant_bareiss(a, b, MP::zero(vars), MP::constant(vars, 1));
  REQUIRE(direct.is_zero());
  for (ModStrategy st : {ModStrategy::EvaluateInterpolate, ModStrategy::CrtPrimes,
                         ModStrategy::Hybrid}) {
    ModularOptions opt;
    opt.strategy = st;
    REQUIRE(resultant_modular(a, b, opt).is_zero());
  }
}

TEST_CASE("unlucky primes are skipped") {
  std::vector<std::string> vars{"v", "s"};
  UP a = collect("29*s*v + 1", vars, "v");
  UP b = collect("v - s", vars, "v");
  ModularOptions opt;
  opt.prime_start = 31;
  ModularReport rep;
  MP mod = resultant_modular(a, b, opt, &rep);
  REQUIRE(mod == resultant_bareiss(a, b, MP::zero(vars), MP::constant(vars, 1)));
  REQUIRE(std::find(rep.primes_skipped.begin(), rep.primes_skipped.end(), 29u) !=
          rep.primes_skipped.end());
}

TEST_CASE("prime supply exhaustion raises the dedicated error") {
  std::vector<std::string> vars{"v", "s"};
  UP a = collect("5005*s*v + 1", vars, "v");  // 5*7*11*13 kills every prime <= 13
  UP b = collect("v - 1", vars, "v");
  ModularOptions opt;
  opt.prime_start = 14;
  REQUIRE_THROWS_AS(resultant_modular(a, b, opt), UnluckyPrimeExhaustion);
}

TEST_CASE("zero budget trips immediately") {
  std::vector<std::string> vars{"v", "s"};
  UP a = collect("v^2 + s", vars, "v");
  UP b = collect("v - s", vars, "v");
  ModularOptions opt;
  opt.budget_seconds = 0.0;
  REQUIRE_THROWS_AS(resultant_modular(a, b, opt), BudgetExceeded);
}

TEST_CASE("checkpoints allow a full resume without kernel work") {
  std::vector<std::string> vars{"v", "x0", "x1", "x2"};
  UP a = collect("v^4 + x2*v^2 + x1*v + x0", vars, "v");
  UP b = collect("4*v^3 + 2*x2*v + x1", vars, "v");
  const std::string path = "checkpoint_test.jsonl";
  std::remove(path.c_str());

  ModularOptions opt;
  opt.checkpoint_path = path;
  ModularReport rep1;
  MP first = resultant_modular(a, b, opt, &rep1);
  REQUIRE(rep1.kernel_calls > 0);
  REQUIRE(rep1.checkpoint_hits == 0);

  ModularReport rep2;
  MP second = resultant_modular(a, b, opt, &rep2);
  REQUIRE(second == first);
  REQUIRE(rep2.checkpoint_hits > 0);
  REQUIRE(rep2.kernel_calls == 0);

  // Truncate the file to its first three lines: a partial resume.
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  REQUIRE(lines.size() >= 4);
  {
    std::ofstream out(path, std::ios::trunc);
    for (size_t i = 0; i < 3; ++i) out << lines[i] << "\n";
    out << "{\"p\": \"bro";  // torn trailing write must be ignored
  }
  ModularReport rep3;
  MP third = resultant_modular(a, b, opt, &rep3);
  REQUIRE(third == first);
  REQUIRE(rep3.checkpoint_hits == 3);
  REQUIRE(rep3.kernel_calls > 0);
  std::remove(path.c_str());
}

TEST_CASE("thread fan-out is deterministic") {
  Corpus c = corpus_50();
  const auto& [a, b] = c.pairs[1];
  MP direct = resultant_bareiss(a, b, MP::zero(c.vars), MP::constant(c.vars, 1));
  ModularOptions opt;
  opt.threads = 2;
  REQUIRE(resultant_modular(a, b, opt) == direct);
}

TEST_CASE("modular psc agrees with direct psc on corpus samples") {
  Corpus c = corpus_50();
  MP zero = MP::zero(c.vars), one = MP::constant(c.vars, 1);
  for (size_t i = 0; i < 8; ++i) {
    const auto& [a, b] = c.pairs[i];
    ModularOptions opt;
    opt.psc_index = 1;
    MP direct = psc1(a, b, zero, one);
    MP mod = resultant_modular(a, b, opt);
    REQUIRE(mod == direct);
  }
}
