#pragma once

#include <stdexcept>
#include <string>

namespace wfront {

// Error taxonomy. All contract violations throw; nothing is reported via
// return codes inside the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// Exact division found a nonzero remainder.
struct NotDivisible : Error {
  explicit NotDivisible(const std::string& m) : Error(m) {}
};

// A computation exceeded its caller-supplied wall-clock budget.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error(m) {}
};

// The modular engine ran out of usable primes.
struct UnluckyPrimeExhaustion : Error {
  explicit UnluckyPrimeExhaustion(const std::string& m) : Error(m) {}
};

// Construction parameters outside the supported family.
struct Unsupported : Error {
  explicit Unsupported(const std::string& m) : Error(m) {}
};

// A membership/preimage query hit a degenerate configuration the decision
// procedure deliberately does not resolve.
struct Indeterminate : Error {
  explicit Indeterminate(const std::string& m) : Error(m) {}
};

// Always-on invariant check (never compiled out; these guard correctness,
// not performance).
inline void check(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

}  // namespace wfront
