#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wfront/common.hpp"
#include "wfront/mpoly.hpp"
#include "wfront/numbers.hpp"
#include "wfront/upoly.hpp"
#include "wfront/zp.hpp"

namespace wfront {

enum class ModStrategy { EvaluateInterpolate, CrtPrimes, Hybrid };

inline ModStrategy parse_mod_strategy(const std::string& s) {
  if (s == "evaluate-interpolate") return ModStrategy::EvaluateInterpolate;
  if (s == "crt-primes") return ModStrategy::CrtPrimes;
  if (s == "hybrid") return ModStrategy::Hybrid;
  throw Error("unknown modular strategy: " + s);
}

struct ModularOptions {
  ModStrategy strategy = ModStrategy::EvaluateInterpolate;
  double budget_seconds = std::numeric_limits<double>::infinity();
  // Weights aligned with the full variable list (main variable included).
  // When present and the inputs are weighted-homogeneous, one variable is
  // fixed to 1 during evaluation and its exponents are recovered from the
  // weighted degree of the result.
  std::vector<long> weights;
  long psc_index = 0;  // 0 = resultant, j >= 1 = principal subresultant coeff
  std::string checkpoint_path;
  unsigned threads = 0;  // 0: WFRONT_THREADS env var, else 1
  uint64_t prime_start = 1ull << 31;
};

struct ModularReport {
  std::vector<uint64_t> primes_used;
  std::vector<uint64_t> primes_skipped;
  uint64_t kernel_calls = 0;
  uint64_t grid_points_per_prime = 0;
  size_t checkpoint_hits = 0;
};

namespace modet {

using Clock = std::chrono::steady_clock;

struct Budget {
  Clock::time_point start = Clock::now();
  double seconds = std::numeric_limits<double>::infinity();

  void probe() const {
    if (std::chrono::duration<double>(Clock::now() - start).count() > seconds)
      throw BudgetExceeded("modular resultant exceeded its time budget");
  }
};

inline unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  const char* env = std::getenv("WFRONT_THREADS");
  if (env && *env) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1 && n <= 256) return static_cast<unsigned>(n);
  }
  return 1;
}

// Sparse Zp polynomial over <= 8 grid variables, exponents packed 8 bits per
// variable. Coefficients live in the Montgomery domain of the active prime.
struct SpecTerm {
  uint64_t key;
  uint64_t c;
};
using SpecPoly = std::vector<SpecTerm>;

// Slice of the result: packed monomial -> Montgomery coefficient, key-sorted.
using Slice = std::vector<std::pair<uint64_t, uint64_t>>;

inline void spec_insert(SpecPoly& f, uint64_t key, uint64_t c, const MontCtx& mc) {
  if (c == 0) return;
  for (auto& t : f) {
    if (t.key == key) {
      t.c = mc.add(t.c, c);
      return;
    }
  }
  f.push_back({key, c});
}

inline SpecPoly spec_assign(const SpecPoly& f, int field, uint64_t value_mont,
                            const MontCtx& mc) {
  SpecPoly out;
  out.reserve(f.size());
  const int shift = 8 * field;
  const uint64_t mask = ~(0xFFull << shift);
  uint64_t powers[256];
  powers[0] = mc.one();
  int built = 0;
  for (const auto& t : f) {
    const int e = static_cast<int>((t.key >> shift) & 0xFF);
    while (built < e) {
      powers[built + 1] = mc.mul(powers[built], value_mont);
      ++built;
    }
    const uint64_t c = e ? mc.mul(t.c, powers[e]) : t.c;
    spec_insert(out, t.key & mask, c, mc);
  }
  // Drop terms cancelled by the merge.
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const SpecTerm& t) { return t.c == 0; }),
            out.end());
  return out;
}

inline uint64_t spec_constant(const SpecPoly& f) {
  uint64_t acc = 0;
  for (const auto& t : f) {
    check(t.key == 0, "modular: unspecialized variable reached the kernel");
    acc = t.c;  // merged form has at most one term per key
  }
  return acc;
}

// Formal-degree resultant of scalar coefficient arrays (ascending, sizes are
// declared degree + 1). Pseudo-remainder Euclid with a factor ledger; a single
// field inversion at the end.
inline uint64_t kernel_resultant(std::vector<uint64_t> a, std::vector<uint64_t> b,
                                 const MontCtx& mc) {
  bool neg = false;
  uint64_t num = mc.one();
  uint64_t den = mc.one();
  auto flip = [&neg](size_t da, size_t db) {
    if ((da & 1) && (db & 1)) neg = !neg;
  };

  // Reduce declared degrees to actual degrees.
  for (;;) {
    while (b.size() >= 2 && b.back() == 0) {
      if (a.back() == 0) return 0;  // zero leading column
      num = mc.mul(num, a.back());
      b.pop_back();
    }
    if (b.back() == 0) return 0;  // b is identically zero: zero rows
    if (a.back() == 0) {
      bool all_zero = true;
      for (uint64_t c : a)
        if (c) {
          all_zero = false;
          break;
        }
      if (all_zero) return 0;
      flip(a.size() - 1, b.size() - 1);
      std::swap(a, b);
      continue;
    }
    break;
  }

  if (a.size() < b.size()) {
    flip(a.size() - 1, b.size() - 1);
    std::swap(a, b);
  }

  while (b.size() >= 2) {
    const size_t da = a.size() - 1;
    const size_t db = b.size() - 1;
    const size_t delta = da - db;
    const uint64_t lcb = b.back();
    // prem(a, b): after each scaling pass the coefficient at db + i dies.
    std::vector<uint64_t> r = a;
    for (size_t i = delta + 1; i-- > 0;) {
      const uint64_t top = r[db + i];
      for (auto& c : r) c = mc.mul(c, lcb);
      if (top) {
        for (size_t k = 0; k <= db; ++k) r[i + k] = mc.sub(r[i + k], mc.mul(top, b[k]));
      }
    }
    long deg_r = -1;
    for (long i = static_cast<long>(db) - 1; i >= 0; --i)
      if (r[static_cast<size_t>(i)]) {
        deg_r = i;
        break;
      }
    if (deg_r < 0) return 0;  // positive-degree common factor
    r.resize(static_cast<size_t>(deg_r) + 1);
    // Res(a,b) = (-1)^(da db) lcb^(da - deg_r - (delta+1) db) Res(b,r)
    const long e = static_cast<long>(da) - deg_r -
                   static_cast<long>((delta + 1) * db);
    if (e > 0)
      num = mc.mul(num, mc.pow(lcb, static_cast<uint64_t>(e)));
    else if (e < 0)
      den = mc.mul(den, mc.pow(lcb, static_cast<uint64_t>(-e)));
    flip(da, db);
    a = std::move(b);
    b = std::move(r);
  }
  num = mc.mul(num, mc.pow(b[0], a.size() - 1));
  uint64_t res = mc.mul(num, mc.inv(den));
  if (neg && res) res = mc.p - res;  // Montgomery residues negate the same way
  return res;
}

// Determinant of the leading psc_j block, Gaussian elimination over Zp.
inline uint64_t kernel_psc(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                           long j, const MontCtx& mc) {
  const long n = static_cast<long>(a.size()) - 1;
  const long m = static_cast<long>(b.size()) - 1;
  const long rows_a = m - j;
  const long rows_b = n - j;
  const long s = n + m - 2 * j;
  if (s == 0) return mc.one();
  std::vector<uint64_t> mat(static_cast<size_t>(s * s), 0);
  auto at = [&](long r, long c) -> uint64_t& { return mat[static_cast<size_t>(r * s + c)]; };
  for (long r = 0; r < rows_a; ++r)
    for (long c = 0; c <= n && r + c < s; ++c) at(r, r + c) = a[static_cast<size_t>(n - c)];
  for (long r = 0; r < rows_b; ++r)
    for (long c = 0; c <= m && r + c < s; ++c)
      at(rows_a + r, r + c) = b[static_cast<size_t>(m - c)];

  bool neg = false;
  uint64_t det = mc.one();
  for (long col = 0; col < s; ++col) {
    long piv = -1;
    for (long r = col; r < s; ++r)
      if (at(r, col)) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (long c = col; c < s; ++c) std::swap(at(piv, c), at(col, c));
      neg = !neg;
    }
    const uint64_t pv = at(col, col);
    det = mc.mul(det, pv);
    const uint64_t pinv = mc.inv(pv);
    for (long r = col + 1; r < s; ++r) {
      const uint64_t f = mc.mul(at(r, col), pinv);
      if (!f) continue;
      at(r, col) = 0;
      for (long c = col + 1; c < s; ++c) at(r, c) = mc.sub(at(r, c), mc.mul(f, at(col, c)));
    }
  }
  if (neg && det) det = mc.p - det;
  return det;
}

// Newton interpolation roll-up: children[t] holds the slice at grid value t
// of the level variable; returns the slice with that variable's exponents
// written into the packed field.
inline Slice newton_rollup(const std::vector<Slice>& children, int field, const MontCtx& mc,
                           const std::vector<uint64_t>& inv_mont) {
  const size_t d = children.size() - 1;
  std::unordered_map<uint64_t, std::vector<uint64_t>> columns;
  for (size_t t = 0; t <= d; ++t) {
    for (const auto& [key, val] : children[t]) {
      auto& col = columns[key];
      if (col.empty()) col.assign(d + 1, 0);
      col[t] = val;
    }
  }
  Slice out;
  std::vector<uint64_t> xs(d + 1);
  for (size_t i = 0; i <= d; ++i) xs[i] = mc.to_mont(i);
  std::vector<uint64_t> coeffs(d + 1);
  for (auto& [key, col] : columns) {
    // Divided differences at consecutive integer points: x_i - x_{i-j} = j.
    for (size_t jj = 1; jj <= d; ++jj)
      for (size_t i = d; i >= jj; --i) col[i] = mc.mul(mc.sub(col[i], col[i - 1]), inv_mont[jj]);
    // Expand the Newton form to monomial coefficients.
    std::fill(coeffs.begin(), coeffs.end(), 0);
    coeffs[0] = col[d];
    size_t deg = 0;
    for (size_t i = d; i-- > 0;) {
      // coeffs <- coeffs*(x - x_i) + col[i]
      for (size_t k = deg + 1; k >= 1; --k)
        coeffs[k] = mc.sub(coeffs[k - 1], mc.mul(xs[i], coeffs[k]));
      coeffs[0] = mc.sub(col[i], mc.mul(xs[i], coeffs[0]));
      ++deg;
    }
    for (size_t e = 0; e <= d; ++e) {
      if (coeffs[e])
        out.emplace_back(key | (static_cast<uint64_t>(e) << (8 * field)), coeffs[e]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Prepared {
  std::vector<std::string> vars;
  size_t main_idx = 0;
  long n = 0, m = 0, j = 0, rows_a = 0, rows_b = 0;
  std::vector<MPoly<BigInt>> ac, bc;  // ascending integer coefficient lists
  BigInt denom = 1;                   // D_A^rows_a * D_B^rows_b
  std::vector<size_t> grid_vars;      // full-list indices, outermost first
  std::vector<long> grid_bounds;
  int dehom_var = -1;
  long dehom_weight = 0;
  long target_wdeg = 0;
  BigInt hadamard = 1;
  uint64_t points_per_prime = 1;
};

inline MPoly<BigInt> clear_denoms(const MPoly<Rational>& f, const BigInt& d) {
  MPoly<BigInt> out(f.vars);
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) {
    Rational scaled = t.second * Rational(d);
    check(den(scaled) == 1, "modular: denominator clearing failed");
    out.terms.emplace_back(t.first, num(scaled));
  }
  return out;
}

inline Prepared prepare(const UPoly<MPoly<Rational>>& A, const UPoly<MPoly<Rational>>& B,
                        const ModularOptions& opt) {
  Prepared pp;
  check(A.var == B.var, "modular: main variable mismatch");
  check(!A.c.empty() && !B.c.empty(), "modular: empty inputs");
  pp.vars = A.c[0].vars;
  check(B.c[0].vars == pp.vars, "modular: variable list mismatch");
  pp.main_idx = A.c[0].var_index(A.var);
  pp.n = A.declared_degree();
  pp.m = B.declared_degree();
  check(pp.n >= 1 && pp.m >= 1, "modular: declared degrees must be >= 1");
  pp.j = opt.psc_index;
  check(pp.j >= 0 && pp.j <= std::min(pp.n, pp.m), "modular: psc index out of range");
  pp.rows_a = pp.m - pp.j;
  pp.rows_b = pp.n - pp.j;

  bool a_zero = true, b_zero = true;
  for (const auto& c : A.c) a_zero = a_zero && c.is_zero();
  for (const auto& c : B.c) b_zero = b_zero && c.is_zero();
  check(!a_zero && !b_zero, "modular: zero polynomial input");

  BigInt da = 1, db = 1;
  for (const auto& c : A.c)
    for (const auto& t : c.terms) da = lcm(da, den(t.second));
  for (const auto& c : B.c)
    for (const auto& t : c.terms) db = lcm(db, den(t.second));
  pp.ac.reserve(A.c.size());
  pp.bc.reserve(B.c.size());
  for (const auto& c : A.c) pp.ac.push_back(clear_denoms(c, da));
  for (const auto& c : B.c) pp.bc.push_back(clear_denoms(c, db));
  pp.denom = big_pow(da, static_cast<unsigned>(pp.rows_a)) *
             big_pow(db, static_cast<unsigned>(pp.rows_b));

  // Coefficient bound: the determinant expansion is dominated term-by-term by
  // the product of row 1-norms.
  BigInt norm_a = 0, norm_b = 0;
  for (const auto& c : pp.ac)
    for (const auto& t : c.terms) norm_a += abs(t.second);
  for (const auto& c : pp.bc)
    for (const auto& t : c.terms) norm_b += abs(t.second);
  if (norm_a == 0) norm_a = 1;
  if (norm_b == 0) norm_b = 1;
  pp.hadamard =
      big_pow(norm_a, static_cast<unsigned>(pp.rows_a)) *
      big_pow(norm_b, static_cast<unsigned>(pp.rows_b));

  // Per-variable degree bounds: sum over matrix rows of coefficient degrees.
  const size_t nv = pp.vars.size();
  std::vector<long> bounds(nv, 0);
  for (size_t i = 0; i < nv; ++i) {
    if (i == pp.main_idx) continue;
    long deg_a = 0, deg_b = 0;
    for (const auto& c : pp.ac)
      deg_a = std::max(deg_a, static_cast<long>(c.is_zero() ? 0 : c.degree_in(i)));
    for (const auto& c : pp.bc)
      deg_b = std::max(deg_b, static_cast<long>(c.is_zero() ? 0 : c.degree_in(i)));
    bounds[i] = pp.rows_a * deg_a + pp.rows_b * deg_b;
  }

  if (!opt.weights.empty()) {
    check(opt.weights.size() == nv, "modular: weight vector length mismatch");
    const long wv = opt.weights[pp.main_idx];
    WeightSystem ws{opt.weights};
    auto homog_degree = [&](const std::vector<MPoly<BigInt>>& cs, const char* what) {
      long alpha = -1;
      for (size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].is_zero()) continue;
        auto wd = mp_weighted_degree(cs[i], ws);
        check(wd.has_value(), std::string("modular: ") + what +
                                  " is not weighted-homogeneous");
        long total = *wd + static_cast<long>(i) * wv;
        if (alpha < 0)
          alpha = total;
        else
          check(alpha == total, std::string("modular: ") + what +
                                    " is not weighted-homogeneous");
      }
      return alpha;
    };
    const long alpha = homog_degree(pp.ac, "first argument");
    const long beta = homog_degree(pp.bc, "second argument");
    // det of the psc_j block: rows_a rows of A-shifts and rows_b rows of
    // B-shifts; the column offsets contribute rows_a*n + rows_b*m - rows_a*rows_b
    // powers of the main variable.
    pp.target_wdeg = pp.rows_a * alpha + pp.rows_b * beta -
                     wv * (pp.rows_a * pp.n + pp.rows_b * pp.m - pp.rows_a * pp.rows_b);
    check(pp.target_wdeg >= 0, "modular: negative weighted degree target");
    for (size_t i = 0; i < nv; ++i) {
      if (i == pp.main_idx || opt.weights[i] <= 0) continue;
      bounds[i] = std::min(bounds[i], pp.target_wdeg / opt.weights[i]);
    }
    // Fix to 1 the positive-weight variable with the largest grid; its
    // exponents come back from the weighted degree.
    long best = 0;
    for (size_t i = 0; i < nv; ++i) {
      if (i == pp.main_idx || opt.weights[i] <= 0 || bounds[i] <= 0) continue;
      if (bounds[i] > best) {
        best = bounds[i];
        pp.dehom_var = static_cast<int>(i);
        pp.dehom_weight = opt.weights[i];
      }
    }
  }

  std::vector<size_t> order;
  for (size_t i = 0; i < nv; ++i) {
    if (i == pp.main_idx || static_cast<int>(i) == pp.dehom_var || bounds[i] <= 0) continue;
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return bounds[x] != bounds[y] ? bounds[x] > bounds[y] : x < y; });
  check(order.size() <= 8, "modular: more than 8 grid variables unsupported");
  for (size_t i : order) {
    check(bounds[i] <= 255, "modular: per-variable degree bound exceeds packing limit");
    pp.grid_vars.push_back(i);
    pp.grid_bounds.push_back(bounds[i]);
    pp.points_per_prime *= static_cast<uint64_t>(bounds[i] + 1);
  }
  return pp;
}

// Build the packed-key Zp image of an integer coefficient polynomial. Terms
// mentioning a variable outside the grid (and distinct from the fixed one)
// evaluate that variable at 0, i.e. are dropped.
inline SpecPoly spec_image(const MPoly<BigInt>& f, const Prepared& pp, const MontCtx& mc) {
  std::vector<int> field_of(pp.vars.size(), -1);
  for (size_t l = 0; l < pp.grid_vars.size(); ++l) field_of[pp.grid_vars[l]] = static_cast<int>(l);
  SpecPoly out;
  for (const auto& t : f.terms) {
    uint64_t key = 0;
    bool dropped = false;
    for (size_t i = 0; i < pp.vars.size(); ++i) {
      const uint32_t e = t.first.e[i];
      if (e == 0) continue;
      if (static_cast<int>(i) == pp.dehom_var) continue;  // value 1
      if (field_of[i] < 0) {
        dropped = true;  // value 0
        break;
      }
      key |= static_cast<uint64_t>(e) << (8 * field_of[i]);
    }
    if (dropped) continue;
    BigInt r = t.second % BigInt(mc.p);
    if (r < 0) r += mc.p;
    const uint64_t c = mc.to_mont(r.convert_to<uint64_t>());
    spec_insert(out, key, c, mc);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const SpecTerm& t) { return t.c == 0; }),
            out.end());
  return out;
}

struct CheckpointStore {
  std::string path;
  std::mutex mu;
  std::map<std::pair<uint64_t, long>, Slice> loaded;  // normal-domain values

  void load() {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto js = nlohmann::json::parse(line);
        const uint64_t p = std::stoull(js.at("p").get<std::string>());
        const long t = js.at("t").get<long>();
        Slice s;
        for (const auto& kv : js.at("slice")) {
          s.emplace_back(std::stoull(kv.at(0).get<std::string>()),
                         std::stoull(kv.at(1).get<std::string>()));
        }
        std::sort(s.begin(), s.end());
        loaded[{p, t}] = std::move(s);
      } catch (const std::exception&) {
        // Partial trailing line after an interrupted run; ignore.
      }
    }
  }

  bool fetch(uint64_t p, long t, const MontCtx& mc, Slice* out) {
    if (path.empty()) return false;
    std::lock_guard<std::mutex> lock(mu);
    auto it = loaded.find({p, t});
    if (it == loaded.end()) return false;
    out->clear();
    out->reserve(it->second.size());
    for (const auto& [k, v] : it->second) out->emplace_back(k, mc.to_mont(v));
    return true;
  }

  void store(uint64_t p, long t, const MontCtx& mc, const Slice& s) {
    if (path.empty()) return;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : s)
      arr.push_back({std::to_string(k), std::to_string(mc.from_mont(v))});
    nlohmann::json js;
    js["p"] = std::to_string(p);
    js["t"] = t;
    js["slice"] = std::move(arr);
    std::lock_guard<std::mutex> lock(mu);
    std::ofstream out(path, std::ios::app);
    out << js.dump() << "\n";
    out.flush();
  }
};

struct PrimeRun {
  const Prepared* pp;
  MontCtx mc;
  std::vector<SpecPoly> a, b;
  std::vector<uint64_t> inv_mont;  // inverses of 1..max_bound (Montgomery)
  Budget* budget;
  std::atomic<uint64_t>* kernel_calls;

  PrimeRun(const Prepared& prep, uint64_t p, Budget* bud, std::atomic<uint64_t>* kc)
      : pp(&prep), mc(p), budget(bud), kernel_calls(kc) {
    a.reserve(prep.ac.size());
    b.reserve(prep.bc.size());
    for (const auto& c : prep.ac) a.push_back(spec_image(c, prep, mc));
    for (const auto& c : prep.bc) b.push_back(spec_image(c, prep, mc));
    long maxb = 0;
    for (long bd : prep.grid_bounds) maxb = std::max(maxb, bd);
    inv_mont.assign(static_cast<size_t>(maxb) + 1, 0);
    for (long i = 1; i <= maxb; ++i)
      inv_mont[static_cast<size_t>(i)] = mc.inv(mc.to_mont(static_cast<uint64_t>(i)));
  }

  uint64_t kernel(const std::vector<SpecPoly>& sa, const std::vector<SpecPoly>& sb) const {
    std::vector<uint64_t> ka(sa.size()), kb(sb.size());
    for (size_t i = 0; i < sa.size(); ++i) ka[i] = spec_constant(sa[i]);
    for (size_t i = 0; i < sb.size(); ++i) kb[i] = spec_constant(sb[i]);
    const uint64_t n = ++*kernel_calls;
    if ((n & 0xFFF) == 0) budget->probe();
    return pp->j == 0 ? kernel_resultant(std::move(ka), std::move(kb), mc)
                      : kernel_psc(ka, kb, pp->j, mc);
  }

  Slice eval(size_t level, const std::vector<SpecPoly>& sa,
             const std::vector<SpecPoly>& sb) const {
    if (level == pp->grid_vars.size()) {
      const uint64_t v = kernel(sa, sb);
      Slice s;
      if (v) s.emplace_back(0, v);
      return s;
    }
    const long d = pp->grid_bounds[level];
    std::vector<Slice> children;
    children.reserve(static_cast<size_t>(d) + 1);
    for (long t = 0; t <= d; ++t) {
      const uint64_t tv = mc.to_mont(static_cast<uint64_t>(t));
      std::vector<SpecPoly> na(sa.size()), nb(sb.size());
      for (size_t i = 0; i < sa.size(); ++i) na[i] = spec_assign(sa[i], static_cast<int>(level), tv, mc);
      for (size_t i = 0; i < sb.size(); ++i) nb[i] = spec_assign(sb[i], static_cast<int>(level), tv, mc);
      children.push_back(eval(level + 1, na, nb));
    }
    return newton_rollup(children, static_cast<int>(level), mc, inv_mont);
  }
};

// Residues for one prime, with checkpointing and thread fan-out over the
// outermost grid variable.
inline Slice prime_residues(const Prepared& pp, uint64_t p, Budget& budget,
                            CheckpointStore& ckpt, unsigned threads,
                            std::atomic<uint64_t>& kernel_calls, size_t* ckpt_hits) {
  PrimeRun run(pp, p, &budget, &kernel_calls);
  if (pp.grid_vars.empty()) {
    budget.probe();
    return run.eval(0, run.a, run.b);
  }
  const long d0 = pp.grid_bounds[0];
  std::vector<Slice> slices(static_cast<size_t>(d0) + 1);
  std::vector<char> have(static_cast<size_t>(d0) + 1, 0);
  size_t hits = 0;
  for (long t = 0; t <= d0; ++t) {
    if (ckpt.fetch(p, t, run.mc, &slices[static_cast<size_t>(t)])) {
      have[static_cast<size_t>(t)] = 1;
      ++hits;
    }
  }
  if (ckpt_hits) *ckpt_hits += hits;

  std::atomic<long> next(0);
  std::vector<std::exception_ptr> errors(threads ? threads : 1);
  auto worker = [&](unsigned wid) {
    try {
      for (;;) {
        const long t = next.fetch_add(1);
        if (t > d0) return;
        if (have[static_cast<size_t>(t)]) continue;
        const uint64_t tv = run.mc.to_mont(static_cast<uint64_t>(t));
        std::vector<SpecPoly> na(run.a.size()), nb(run.b.size());
        for (size_t i = 0; i < run.a.size(); ++i) na[i] = spec_assign(run.a[i], 0, tv, run.mc);
        for (size_t i = 0; i < run.b.size(); ++i) nb[i] = spec_assign(run.b[i], 0, tv, run.mc);
        Slice s = run.eval(1, na, nb);
        ckpt.store(p, t, run.mc, s);
        slices[static_cast<size_t>(t)] = std::move(s);
        budget.probe();
      }
    } catch (...) {
      errors[wid] = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return newton_rollup(slices, 0, run.mc, run.inv_mont);
}

inline uint64_t next_prime_below(uint64_t cur) {
  for (uint64_t c = cur - 1; c >= 5; --c)
    if (is_prime_u64(c)) return c;
  throw UnluckyPrimeExhaustion("modular: prime supply exhausted");
}

}  // namespace modet

// Exact resultant (psc_index = 0) or principal subresultant coefficient via
// per-prime evaluation/interpolation and CRT reconstruction. Produces the
// same polynomial as the direct Sylvester determinant.
inline MPoly<Rational> resultant_modular(const UPoly<MPoly<Rational>>& A,
                                         const UPoly<MPoly<Rational>>& B,
                                         const ModularOptions& opt = {},
                                         ModularReport* report = nullptr) {
  using namespace modet;
  check(opt.prime_start > 7, "modular: prime_start too small");
  Prepared pp = prepare(A, B, opt);
  Budget budget;
  budget.seconds = opt.budget_seconds;
  budget.probe();
  CheckpointStore ckpt;
  ckpt.path = opt.checkpoint_path;
  ckpt.load();
  const unsigned threads = thread_count(opt.threads);

  std::atomic<uint64_t> kernel_calls(0);
  size_t ckpt_hits = 0;
  std::vector<uint64_t> used, skipped;

  // CRT state: per packed key, the current lift (0 <= x < modulus).
  std::map<uint64_t, BigInt> lift;
  BigInt modulus = 1;
  std::map<uint64_t, BigInt> prev_sym;
  bool have_prev = false;
  bool done = false;
  uint64_t cursor = opt.prime_start;

  const BigInt need = 2 * pp.hadamard + 1;
  auto symmetric = [&]() {
    std::map<uint64_t, BigInt> sym;
    const BigInt half = modulus / 2;
    for (const auto& [k, v] : lift) {
      BigInt s = v > half ? v - modulus : v;
      if (s != 0) sym[k] = s;
    }
    return sym;
  };

  while (!done) {
    const uint64_t p = next_prime_below(cursor);
    cursor = p;
    if (used.size() + skipped.size() > 400)
      throw UnluckyPrimeExhaustion("modular: too many unlucky primes");

    // A prime is unlucky when it kills a nonzero formal leading coefficient
    // (only the resultant kernel relies on that reduction being non-trivial).
    {
      MontCtx mc(p);
      if (opt.psc_index == 0) {
        const bool bad_a = !pp.ac.back().is_zero() && spec_image(pp.ac.back(), pp, mc).empty();
        const bool bad_b = !pp.bc.back().is_zero() && spec_image(pp.bc.back(), pp, mc).empty();
        if (bad_a || bad_b) {
          skipped.push_back(p);
          continue;
        }
      }
    }

    Slice residues = prime_residues(pp, p, budget, ckpt, threads, kernel_calls, &ckpt_hits);
    used.push_back(p);

    // Fold into the CRT lift; keys absent from this prime have residue 0.
    {
      MontCtx mc(p);
      std::map<uint64_t, uint64_t> rmap;
      for (const auto& [k, v] : residues) rmap[k] = mc.from_mont(v);
      const Zp minv = Zp::from_int(modulus, p).inv();
      std::map<uint64_t, BigInt> next_lift;
      auto fold = [&](uint64_t key, const BigInt& x, uint64_t r) {
        BigInt xr = x % BigInt(p);
        if (xr < 0) xr += p;
        const Zp delta = (Zp(r, p) - Zp(xr.convert_to<uint64_t>(), p)) * minv;
        BigInt nx = x + modulus * BigInt(delta.v);
        if (nx != 0) next_lift[key] = nx;
      };
      for (const auto& [k, x] : lift) {
        auto it = rmap.find(k);
        const uint64_t r = it == rmap.end() ? 0 : it->second;
        fold(k, x, r);
        if (it != rmap.end()) rmap.erase(it);
      }
      for (const auto& [k, r] : rmap) fold(k, BigInt(0), r);
      lift = std::move(next_lift);
      modulus *= p;
    }

    switch (opt.strategy) {
      case ModStrategy::EvaluateInterpolate:
        done = modulus >= need;
        break;
      case ModStrategy::Hybrid: {
        // One prime beyond the bound acts as a verification round: it must
        // leave the symmetric lift unchanged.
        auto sym = symmetric();
        if (have_prev && modulus / BigInt(p) >= need) {
          check(sym == prev_sym,
                "modular: verification prime disagrees with the reconstruction");
          done = true;
        }
        prev_sym = std::move(sym);
        have_prev = true;
        break;
      }
      case ModStrategy::CrtPrimes: {
        auto sym = symmetric();
        if (have_prev && used.size() >= 2 && sym == prev_sym) done = true;
        prev_sym = std::move(sym);
        have_prev = true;
        check(used.size() <= 64, "modular: CRT stabilization did not converge");
        break;
      }
    }
  }

  auto sym = symmetric();

  // Re-homogenize and rebuild the sparse polynomial over the full var list.
  MPoly<BigInt> zres(pp.vars);
  zres.terms.reserve(sym.size());
  for (const auto& [key, c] : sym) {
    Monomial mono(pp.vars.size());
    for (size_t l = 0; l < pp.grid_vars.size(); ++l)
      mono.e[pp.grid_vars[l]] = static_cast<uint32_t>((key >> (8 * l)) & 0xFF);
    if (pp.dehom_var >= 0) {
      long wsum = 0;
      for (size_t i = 0; i < pp.vars.size(); ++i)
        wsum += static_cast<long>(mono.e[i]) * opt.weights[i];
      const long rem = pp.target_wdeg - wsum;
      check(rem >= 0 && rem % pp.dehom_weight == 0,
            "modular: weighted-degree exponent recovery failed");
      mono.e[static_cast<size_t>(pp.dehom_var)] =
          static_cast<uint32_t>(rem / pp.dehom_weight);
    }
    zres.terms.emplace_back(std::move(mono), c);
  }
  std::sort(zres.terms.begin(), zres.terms.end(),
            [](const auto& x, const auto& y) { return lex_greater(x.first, y.first); });

  MPoly<Rational> out(pp.vars);
  out.terms.reserve(zres.terms.size());
  for (auto& t : zres.terms)
    out.terms.emplace_back(t.first, Rational(t.second) / Rational(pp.denom));

  if (report) {
    report->primes_used = used;
    report->primes_skipped = skipped;
    report->kernel_calls = kernel_calls.load();
    report->grid_points_per_prime = pp.points_per_prime;
    report->checkpoint_hits = ckpt_hits;
  }
  return out;
}

}  // namespace wfront
