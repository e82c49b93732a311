#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfront/common.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/upoly.hpp"

namespace wfront {

// ---- canonical text ---------------------------------------------------------
//
// Terms in descending canonical order; `^` powers, `*` products, coefficients
// as integers or num/den. Examples: "27*x0^2 + 4*x1^3", "x0 - 1/2", "0".

namespace detail {
inline void append_monomial(std::string& out, const Monomial& m,
                            const std::vector<std::string>& vars, bool lead_coeff_one) {
  bool first = lead_coeff_one;
  for (size_t v = 0; v < m.e.size(); ++v) {
    if (m.e[v] == 0) continue;
    if (!first) out += '*';
    out += vars[v];
    if (m.e[v] > 1) {
      out += '^';
      out += std::to_string(m.e[v]);
    }
    first = false;
  }
}
}  // namespace detail

inline std::string mp_to_text(const MPoly<Rational>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : f.terms) {
    Rational c = t.second;
    bool neg = c < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    Rational a = neg ? Rational(-c) : c;
    bool unit = (a == 1) && !t.first.is_constant();
    if (!unit) out += to_string(a);
    detail::append_monomial(out, t.first, f.vars, unit);
  }
  return out;
}

// ---- canonical JSON ---------------------------------------------------------
//
// {"vars":[...],"terms":[[num,den,[e...]],...]} with terms in canonical order.
// num/den are serialized as decimal strings (values exceed double precision);
// the parser also accepts plain JSON integers.

inline nlohmann::json mp_to_json(const MPoly<Rational>& f) {
  nlohmann::json j;
  j["vars"] = f.vars;
  nlohmann::json terms = nlohmann::json::array();
  for (auto& t : f.terms) {
    nlohmann::json exps = nlohmann::json::array();
    for (auto e : t.first.e) exps.push_back(e);
    terms.push_back(nlohmann::json::array(
        {num(t.second).str(), den(t.second).str(), exps}));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline std::string mp_to_json_text(const MPoly<Rational>& f) { return mp_to_json(f).dump(); }

// ---- parsing ----------------------------------------------------------------

namespace detail {
struct TextParser {
  const std::string& s;
  size_t i = 0;
  explicit TextParser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string read_number() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    check(i > start, "poly parse: expected number at offset " + std::to_string(start));
    return s.substr(start, i - start);
  }
  std::string read_ident() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
    check(i > start, "poly parse: expected identifier at offset " + std::to_string(start));
    return s.substr(start, i - start);
  }
};
}  // namespace detail

// Parses the canonical text format (and harmless variants: arbitrary spacing,
// explicit unit coefficients, any term order) against a declared variable
// list.
inline MPoly<Rational> mp_parse_text(const std::string& text,
                                     const std::vector<std::string>& vars) {
  detail::TextParser p(text);
  MPoly<Rational> acc = MPoly<Rational>::zero(vars);
  bool first = true;
  while (!p.eof()) {
    int sign = 1;
    if (p.accept('+')) {
      sign = 1;
    } else if (p.accept('-')) {
      sign = -1;
    } else {
      check(first, "poly parse: expected + or - between terms");
    }
    first = false;
    Rational coeff(sign);
    Monomial mono(vars.size());
    bool saw_factor = false;
    for (;;) {
      char c = p.peek();
      if (std::isdigit((unsigned char)c)) {
        std::string n = p.read_number();
        if (p.accept('/')) {
          std::string d = p.read_number();
          coeff *= Rational(BigInt(n), BigInt(d));
        } else {
          coeff *= Rational(BigInt(n));
        }
        saw_factor = true;
      } else if (std::isalpha((unsigned char)c) || c == '_') {
        std::string name = p.read_ident();
        size_t idx = vars.size();
        for (size_t v = 0; v < vars.size(); ++v) {
          if (vars[v] == name) {
            idx = v;
            break;
          }
        }
        check(idx < vars.size(), "poly parse: unknown variable " + name);
        uint32_t e = 1;
        if (p.accept('^')) e = (uint32_t)std::stoul(p.read_number());
        mono.e[idx] += e;
        saw_factor = true;
      } else {
        break;
      }
      if (!p.accept('*')) break;
    }
    check(saw_factor, "poly parse: empty term");
    MPoly<Rational> term(vars);
    if (!coeff.is_zero()) term.terms.emplace_back(std::move(mono), coeff);
    acc = mp_add(acc, term);
  }
  return acc;
}

inline MPoly<Rational> mp_from_json(const nlohmann::json& j) {
  check(j.contains("vars") && j.contains("terms"), "poly json: missing vars/terms");
  std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
  MPoly<Rational> acc = MPoly<Rational>::zero(vars);
  auto scalar = [](const nlohmann::json& v) -> BigInt {
    if (v.is_string()) return BigInt(v.get<std::string>());
    check(v.is_number_integer(), "poly json: coefficient must be string or integer");
    return BigInt(v.get<long long>());
  };
  for (auto& t : j["terms"]) {
    check(t.is_array() && t.size() == 3, "poly json: bad term");
    BigInt n = scalar(t[0]), d = scalar(t[1]);
    check(!d.is_zero(), "poly json: zero denominator");
    std::vector<uint32_t> e = t[2].get<std::vector<uint32_t>>();
    check(e.size() == vars.size(), "poly json: exponent arity mismatch");
    MPoly<Rational> term(vars);
    Rational c(n, d);
    if (!c.is_zero()) term.terms.emplace_back(Monomial(std::move(e)), c);
    acc = mp_add(acc, term);
  }
  return acc;
}

// Auto-detects JSON vs text (vars required for text).
inline MPoly<Rational> mp_parse(const std::string& body,
                                const std::vector<std::string>& vars_for_text) {
  for (char c : body) {
    if (std::isspace((unsigned char)c)) continue;
    if (c == '{') return mp_from_json(nlohmann::json::parse(body));
    break;
  }
  return mp_parse_text(body, vars_for_text);
}

// ---- UPoly serialization ----------------------------------------------------
//
// A parametric UPoly serializes as the MPoly obtained by prepending its main
// variable (most significant position) to the coefficient variable list.

inline MPoly<Rational> up_as_mpoly_front(const UPoly<MPoly<Rational>>& a) {
  check(!a.c.empty(), "UPoly: empty");
  const std::vector<std::string>& vars = a.c[0].vars;
  // Reorder (or insert) the main variable at the front.
  std::vector<std::string> nv;
  nv.push_back(a.var);
  for (auto& v : vars)
    if (v != a.var) nv.push_back(v);
  std::vector<MPoly<Rational>> c;
  c.reserve(a.c.size());
  for (auto& ci : a.c) c.push_back(mp_change_vars(ci, nv));
  return up_to_mpoly(UPoly<MPoly<Rational>>(a.var, std::move(c)));
}

inline std::string up_to_text(const UPoly<MPoly<Rational>>& a) {
  return mp_to_text(up_as_mpoly_front(a));
}
inline nlohmann::json up_to_json(const UPoly<MPoly<Rational>>& a) {
  return mp_to_json(up_as_mpoly_front(a));
}

// ---- checksums / files ------------------------------------------------------

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check(in.good(), "cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  check(out.good(), "cannot write file: " + path);
  out << body;
  check(out.good(), "write failed: " + path);
}

// Strip trailing whitespace/newlines for robust golden comparison.
inline std::string strip(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace((unsigned char)s[a])) ++a;
  while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
  return s.substr(a, b - a);
}

}  // namespace wfront
