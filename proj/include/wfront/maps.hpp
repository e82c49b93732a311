#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/io.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/numbers.hpp"

namespace wfront {

// Wave-front singularity classes with their construction parameters. The
// D-type carries the sign ambiguity as data; a cross cap of dimension m is
// the 1-Morin map of type (m, 2m-1) and keeps its own tag for naming.
struct SingularityType {
  enum class Tag { A, D, E6, E7, E8, Morin, CrossCap };
  Tag tag = Tag::A;
  long k = 0;    // A: k >= 2, D: k >= 4
  int sign = 1;  // D only
  long m = 0, n = 0, r = 0;

  static SingularityType A(long k) {
    check(k >= 2, "type A requires k >= 2");
    SingularityType t;
    t.tag = Tag::A;
    t.k = k;
    return t;
  }
  static SingularityType D(long k, int sign = 1) {
    check(k >= 4, "type D requires k >= 4");
    check(sign == 1 || sign == -1, "type D sign must be +1 or -1");
    SingularityType t;
    t.tag = Tag::D;
    t.k = k;
    t.sign = sign;
    return t;
  }
  static SingularityType E6() {
    SingularityType t;
    t.tag = Tag::E6;
    t.k = 6;
    return t;
  }
  static SingularityType E7() {
    SingularityType t;
    t.tag = Tag::E7;
    t.k = 7;
    return t;
  }
  static SingularityType E8() {
    SingularityType t;
    t.tag = Tag::E8;
    t.k = 8;
    return t;
  }
  static SingularityType Morin(long m, long n, long r) {
    check(n > m && m >= 2, "Morin type requires n > m >= 2");
    check(r >= 1, "Morin type requires r >= 1");
    check(m >= r * (n - m + 1), "Morin type requires m >= r(n-m+1)");
    SingularityType t;
    t.tag = Tag::Morin;
    t.m = m;
    t.n = n;
    t.r = r;
    return t;
  }
  static SingularityType CrossCap(long m) {
    SingularityType t = Morin(m, 2 * m - 1, 1);
    t.tag = Tag::CrossCap;
    return t;
  }

  bool is_ade() const {
    return tag == Tag::A || tag == Tag::D || tag == Tag::E6 || tag == Tag::E7 ||
           tag == Tag::E8;
  }
  long morin_m() const { return m; }
  long morin_n() const { return n; }
  long morin_r() const { return r; }

  // Canonical CLI spelling: A2, D4+, D4-, E6, M4,5,2, C2.
  std::string name() const {
    switch (tag) {
      case Tag::A:
        return "A" + std::to_string(k);
      case Tag::D:
        return "D" + std::to_string(k) + (sign > 0 ? "+" : "-");
      case Tag::E6:
        return "E6";
      case Tag::E7:
        return "E7";
      case Tag::E8:
        return "E8";
      case Tag::Morin:
        return "M" + std::to_string(m) + "," + std::to_string(n) + "," +
               std::to_string(r);
      case Tag::CrossCap:
        return "C" + std::to_string(m);
    }
    throw Error("unreachable");
  }

  // Filesystem-safe spelling: D4p, D4m, M4-5-2.
  std::string dir_name() const {
    switch (tag) {
      case Tag::D:
        return "D" + std::to_string(k) + (sign > 0 ? "p" : "m");
      case Tag::Morin:
        return "M" + std::to_string(m) + "-" + std::to_string(n) + "-" +
               std::to_string(r);
      default:
        return name();
    }
  }

  bool operator==(const SingularityType& o) const {
    return tag == o.tag && k == o.k && sign == o.sign && m == o.m && n == o.n &&
           r == o.r;
  }
};

// Parses the CLI spelling accepted by name().
inline SingularityType parse_type(const std::string& s) {
  check(!s.empty(), "type string is empty");
  try {
    if (s == "E6") return SingularityType::E6();
    if (s == "E7") return SingularityType::E7();
    if (s == "E8") return SingularityType::E8();
    if (s[0] == 'A') return SingularityType::A(std::stol(s.substr(1)));
    if (s[0] == 'C') return SingularityType::CrossCap(std::stol(s.substr(1)));
    if (s[0] == 'D') {
      const char last = s.back();
      check(last == '+' || last == '-', "type D needs a trailing sign, e.g. D4+");
      return SingularityType::D(std::stol(s.substr(1, s.size() - 2)),
                                last == '+' ? 1 : -1);
    }
    if (s[0] == 'M') {
      const auto c1 = s.find(',');
      const auto c2 = s.find(',', c1 + 1);
      check(c1 != std::string::npos && c2 != std::string::npos,
            "Morin type spelling is M<m>,<n>,<r>");
      return SingularityType::Morin(std::stol(s.substr(1, c1 - 1)),
                                    std::stol(s.substr(c1 + 1, c2 - c1 - 1)),
                                    std::stol(s.substr(c2 + 1)));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("cannot parse type string '" + s + "'");
  }
  throw Error("cannot parse type string '" + s + "'");
}

// A polynomial map between affine spaces: components over the source
// variables, pass-through slots included.
struct MapSpec {
  SingularityType type;
  std::vector<std::string> source_vars;
  std::vector<std::string> target_names;
  std::vector<MPoly<Rational>> components;
  bool suspended = false;

  size_t source_arity() const { return source_vars.size(); }
  size_t target_arity() const { return components.size(); }
};

namespace mapdet {

// Single monomial c * prod vars[i]^e[i] given sparse (index, exponent) pairs.
inline MPoly<Rational> term(const std::vector<std::string>& vars, const Rational& c,
                            std::vector<std::pair<size_t, uint32_t>> exps) {
  MPoly<Rational> out(vars);
  if (c.is_zero()) return out;
  Monomial mono(vars.size());
  for (const auto& [i, e] : exps) mono.e[i] += e;
  out.terms.emplace_back(std::move(mono), c);
  return out;
}

inline std::vector<std::string> x_range(long lo, long hi) {  // x<lo>..x<hi>
  std::vector<std::string> v;
  for (long i = lo; i <= hi; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace mapdet

inline MapSpec build_map(const SingularityType& t) {
  using mapdet::term;
  using Tag = SingularityType::Tag;
  MapSpec ms;
  ms.type = t;

  if (t.tag == Tag::A) {
    const long k = t.k;
    ms.source_vars = {"v"};
    for (long i = 2; i <= k - 1; ++i) ms.source_vars.push_back("x" + std::to_string(i));
    const auto& vs = ms.source_vars;
    auto xi = [&](long i) -> size_t { return static_cast<size_t>(i - 1); };
    MPoly<Rational> c0 = term(vs, Rational(k), {{0, static_cast<uint32_t>(k + 1)}});
    MPoly<Rational> c1 = term(vs, Rational(-(k + 1)), {{0, static_cast<uint32_t>(k)}});
    for (long i = 2; i <= k - 1; ++i) {
      c0 = c0 + term(vs, Rational(i - 1), {{0, static_cast<uint32_t>(i)}, {xi(i), 1}});
      c1 = c1 + term(vs, Rational(-i), {{0, static_cast<uint32_t>(i - 1)}, {xi(i), 1}});
    }
    ms.components = {c0, c1};
    for (long i = 2; i <= k - 1; ++i)
      ms.components.push_back(term(vs, Rational(1), {{xi(i), 1}}));
    ms.target_names = mapdet::x_range(0, k - 1);
    return ms;
  }

  if (t.tag == Tag::D) {
    const long k = t.k;
    const Rational s(t.sign);
    ms.source_vars = {"u", "v"};
    for (long i = 3; i <= k - 1; ++i) ms.source_vars.push_back("x" + std::to_string(i));
    const auto& vs = ms.source_vars;
    auto xi = [&](long i) -> size_t { return static_cast<size_t>(i - 1); };
    MPoly<Rational> c0 = term(vs, s * 2, {{0, 2}, {1, 1}}) +
                         term(vs, Rational(k - 2), {{1, static_cast<uint32_t>(k - 1)}});
    MPoly<Rational> c1 = term(vs, -s * 2, {{0, 1}, {1, 1}});
    MPoly<Rational> c2 = term(vs, -s, {{0, 2}}) +
                         term(vs, Rational(-(k - 1)), {{1, static_cast<uint32_t>(k - 2)}});
    for (long i = 3; i <= k - 1; ++i) {
      c0 = c0 + term(vs, Rational(i - 2), {{1, static_cast<uint32_t>(i - 1)}, {xi(i), 1}});
      c2 = c2 + term(vs, Rational(-(i - 1)), {{1, static_cast<uint32_t>(i - 2)}, {xi(i), 1}});
    }
    ms.components = {c0, c1, c2};
    for (long i = 3; i <= k - 1; ++i)
      ms.components.push_back(term(vs, Rational(1), {{xi(i), 1}}));
    ms.target_names = mapdet::x_range(0, k - 1);
    return ms;
  }

  if (t.tag == Tag::E6 || t.tag == Tag::E7 || t.tag == Tag::E8) {
    const long k = t.k;
    ms.source_vars = {"u", "v"};
    for (long i = 3; i <= k - 1; ++i) ms.source_vars.push_back("x" + std::to_string(i));
    const auto& vs = ms.source_vars;
    auto p = [&](const std::string& s) { return mp_parse_text(s, vs); };
    if (t.tag == Tag::E6) {
      ms.components = {p("2*u^3 + 3*v^4 + v^2*x3 + u*v*x4 + 2*u*v^2*x5"),
                       p("-3*u^2 - v*x4 - v^2*x5"),
                       p("-4*v^3 - 2*v*x3 - u*x4 - 2*u*v*x5")};
    } else if (t.tag == Tag::E7) {
      // u v delta_7 expanded, delta_7 = 3v^2 + 2x6 v + x5.
      ms.components = {p("2*u^3 + x3*v^2 + 2*x4*v^3 + 3*u*v^3 + 2*x6*u*v^2 + x5*u*v"),
                       p("-3*u^2 - v^3 - x5*v - x6*v^2"),
                       p("-2*x3*v - 3*x4*v^2 - 3*u*v^2 - 2*x6*u*v - x5*u")};
    } else {
      // u v delta_8 expanded, delta_8 = 3x7 v^2 + 2x6 v + x5.
      ms.components = {
          p("2*u^3 + 4*v^5 + x3*v^2 + 2*x4*v^3 + 3*x7*u*v^3 + 2*x6*u*v^2 + x5*u*v"),
          p("-3*u^2 - x5*v - x6*v^2 - x7*v^3"),
          p("-5*v^4 - 2*x3*v - 3*x4*v^2 - 3*x7*u*v^2 - 2*x6*u*v - x5*u")};
    }
    for (long i = 3; i <= k - 1; ++i)
      ms.components.push_back(p("x" + std::to_string(i)));
    ms.target_names = mapdet::x_range(0, k - 1);
    return ms;
  }

  // Morin / cross cap: h = (x_1, ..., x_{m-1}, h_1, ..., h_{n-m+1}).
  const long m = t.m, n = t.n, r = t.r;
  ms.source_vars = mapdet::x_range(1, m);
  const auto& vs = ms.source_vars;
  auto xm = [&](uint32_t j) { return std::pair<size_t, uint32_t>{static_cast<size_t>(m - 1), j}; };
  for (long i = 1; i <= m - 1; ++i)
    ms.components.push_back(term(vs, Rational(1), {{static_cast<size_t>(i - 1), 1}}));
  for (long i = 1; i <= n - m; ++i) {
    MPoly<Rational> h = MPoly<Rational>::zero(vs);
    for (long j = 1; j <= r; ++j)
      h = h + term(vs, Rational(1),
                   {{static_cast<size_t>(j + r * (i - 1) - 1), 1}, xm(static_cast<uint32_t>(j))});
    ms.components.push_back(h);
  }
  {
    MPoly<Rational> h = term(vs, Rational(1), {xm(static_cast<uint32_t>(r + 1))});
    for (long j = 1; j <= r - 1; ++j)
      h = h + term(vs, Rational(1),
                   {{static_cast<size_t>(j + r * (n - m) - 1), 1}, xm(static_cast<uint32_t>(j))});
    ms.components.push_back(h);
  }
  for (long i = 1; i <= n; ++i) ms.target_names.push_back("y" + std::to_string(i));
  return ms;
}

inline std::vector<Rational> eval_map(const MapSpec& ms, const std::vector<Rational>& params) {
  check(params.size() == ms.source_arity(), "eval_map: parameter arity mismatch");
  std::vector<Rational> out;
  out.reserve(ms.components.size());
  for (const auto& c : ms.components) out.push_back(mp_eval(c, params));
  return out;
}

// (x, y) -> (h(x), y, 0...): new_source - k pass-through slots and
// new_target - l - (new_source - k) zero slots.
inline MapSpec suspend(const MapSpec& ms, long new_source, long new_target) {
  const long k = static_cast<long>(ms.source_arity());
  const long l = static_cast<long>(ms.target_arity());
  check(new_source >= k, "suspend: source dimension cannot shrink");
  check(new_target >= l, "suspend: target dimension cannot shrink");
  check(new_target - l >= new_source - k, "suspend: target must absorb the new slots");
  if (new_source == k && new_target == l) return ms;

  MapSpec out;
  out.type = ms.type;
  out.suspended = true;
  out.source_vars = ms.source_vars;
  for (long i = 1; i <= new_source - k; ++i)
    out.source_vars.push_back("y" + std::to_string(i));
  for (const auto& c : ms.components)
    out.components.push_back(mp_change_vars(c, out.source_vars));
  for (long i = 1; i <= new_source - k; ++i)
    out.components.push_back(mapdet::term(out.source_vars, Rational(1),
                                          {{static_cast<size_t>(k + i - 1), 1}}));
  for (long i = 0; i < new_target - l - (new_source - k); ++i)
    out.components.push_back(MPoly<Rational>::zero(out.source_vars));
  out.target_names = ms.target_names;
  for (long i = 1; i <= new_source - k; ++i)
    out.target_names.push_back("y" + std::to_string(i));
  for (long i = 1; i <= new_target - l - (new_source - k); ++i)
    out.target_names.push_back("z" + std::to_string(i));
  return out;
}

struct GeneratingFamily {
  SingularityType type;
  std::vector<std::string> vars;  // (u,) v, x0..x_{k-1}
  MPoly<Rational> F;
};

inline GeneratingFamily generating_family(const SingularityType& t) {
  using mapdet::term;
  using Tag = SingularityType::Tag;
  check(t.is_ade(), "generating_family: defined for ADE types only");
  GeneratingFamily gf;
  gf.type = t;
  const long k = t.k;

  if (t.tag == Tag::A) {
    gf.vars = {"v"};
    for (long i = 0; i <= k - 1; ++i) gf.vars.push_back("x" + std::to_string(i));
    MPoly<Rational> F = term(gf.vars, Rational(1), {{0, static_cast<uint32_t>(k + 1)}});
    // x_i v^i for i = 0..k-1 (no v^k term).
    for (long i = 0; i <= k - 1; ++i)
      F = F + term(gf.vars, Rational(1),
                   {{0, static_cast<uint32_t>(i)}, {static_cast<size_t>(i + 1), 1}});
    gf.F = F;
    return gf;
  }

  gf.vars = {"u", "v"};
  for (long i = 0; i <= k - 1; ++i) gf.vars.push_back("x" + std::to_string(i));
  auto xi = [&](long i) -> size_t { return static_cast<size_t>(i + 2); };

  if (t.tag == Tag::D) {
    MPoly<Rational> F = term(gf.vars, Rational(t.sign), {{0, 2}, {1, 1}}) +
                        term(gf.vars, Rational(1), {{1, static_cast<uint32_t>(k - 1)}}) +
                        term(gf.vars, Rational(1), {{0, 1}, {xi(1), 1}}) +
                        term(gf.vars, Rational(1), {{xi(0), 1}});
    for (long i = 2; i <= k - 1; ++i)
      F = F + term(gf.vars, Rational(1), {{1, static_cast<uint32_t>(i - 1)}, {xi(i), 1}});
    gf.F = F;
    return gf;
  }

  auto p = [&](const std::string& s) { return mp_parse_text(s, gf.vars); };
  if (t.tag == Tag::E6)
    gf.F = p("u^3 + v^4 + x5*u*v^2 + x4*u*v + x3*v^2 + x2*v + x1*u + x0");
  else if (t.tag == Tag::E7)
    gf.F = p("u^3 + u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0");
  else
    gf.F = p("u^3 + v^5 + x7*u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0");
  return gf;
}

// Index data relating a 1-Morin map to the suspended cross cap of dimension
// q = n - m + 1: source_perm[i] = index in the Morin source of the i-th
// suspended-cross-cap source variable, and likewise for targets.
struct MorinCrossCapBridge {
  long q = 0;
  std::vector<size_t> source_perm;
  std::vector<size_t> target_perm;
};

inline MorinCrossCapBridge morin_crosscap_bridge(long m, long n) {
  check(n > m && m >= 2 && m >= n - m + 1, "bridge: invalid 1-Morin parameters");
  MorinCrossCapBridge br;
  const long q = n - m + 1;
  br.q = q;
  // Suspended cross cap sources: (x_1..x_{q-1}, x_q, y_1..y_{m-q}) read off the
  // Morin sources (x_1..x_{q-1} active, x_m powers, x_q..x_{m-1} pass-through).
  for (long i = 1; i <= q - 1; ++i) br.source_perm.push_back(static_cast<size_t>(i - 1));
  br.source_perm.push_back(static_cast<size_t>(m - 1));
  for (long i = q; i <= m - 1; ++i) br.source_perm.push_back(static_cast<size_t>(i - 1));
  // Suspended targets: (x_1..x_{q-1}, x_1 x_q, .., x_{q-1} x_q, x_q^2, y_..)
  // against Morin targets (x_1..x_{m-1}, x_1 x_m, .., x_{q-1} x_m, x_m^2).
  for (long i = 1; i <= q - 1; ++i) br.target_perm.push_back(static_cast<size_t>(i - 1));
  for (long i = 1; i <= q; ++i) br.target_perm.push_back(static_cast<size_t>(m - 1 + i - 1));
  for (long i = q; i <= m - 1; ++i) br.target_perm.push_back(static_cast<size_t>(i - 1));
  return br;
}

}  // namespace wfront
