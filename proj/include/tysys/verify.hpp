#pragma once

#include <cstddef>
#include <vector>

#include "tysys/lattice.hpp"
#include "tysys/rational.hpp"
#include "tysys/ratfunc.hpp"

namespace tysys {

enum class CheckMode { Exact, Numeric };

/// Default number of random assignments in numeric mode.
inline constexpr int kDefaultNumericSamples = 3;

/// One relation instance whose two sides disagree.
template <class V>
struct Violation {
  LatticeVar center;
  V lhs;
  V rhs;
};

template <class V>
struct CheckReport {
  std::size_t checked = 0;
  std::vector<Violation<V>> violations;

  bool pass() const { return violations.empty(); }
};

/// Uniform random nonzero assignment for `nvars` generators.
inline Assignment random_assignment(Rng& rng, std::size_t nvars, int bits = kDefaultRandomBits) {
  Assignment a;
  a.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) a.push_back(random_nonzero_rational(rng, bits));
  return a;
}

template <class V>
std::size_t universe_size(const ValueTable<V>& table) {
  std::size_t n = 0;
  for (const auto& [v, x] : table) n = std::max(n, x.nvars());
  return n;
}

/// Applies an evaluation homomorphism entrywise. Throws EvalDivisionByZero when a
/// denominator vanishes and ZeroDivisor when a value evaluates to 0.
template <class V>
ValueTable<BigRational> evaluate_table(const ValueTable<V>& table, const Assignment& at) {
  ValueTable<BigRational> out;
  for (const auto& [v, x] : table) out.set(v, evaluate(x, at));
  return out;
}

/// Numeric-mode driver: evaluates the table at `samples` random assignments and
/// runs the exact rational checker on each; a sample that hits a vanishing
/// denominator is redrawn. Violations of all samples are concatenated.
template <class V, class Checker>
CheckReport<BigRational> check_numerically(const ValueTable<V>& table, Checker&& checker, Rng& rng,
                                           int samples = kDefaultNumericSamples,
                                           int bits = kDefaultRandomBits) {
  CheckReport<BigRational> total;
  const std::size_t n = universe_size(table);
  int done = 0, attempts = 0;
  while (done < samples) {
    if (++attempts > samples * 16) throw Error(ErrorCode::ZeroDivisor, "no admissible assignment found");
    ValueTable<BigRational> values;
    try {
      values = evaluate_table(table, random_assignment(rng, n, bits));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::EvalDivisionByZero || e.code() == ErrorCode::ZeroDivisor) continue;
      throw;
    }
    CheckReport<BigRational> r = checker(values);
    total.checked += r.checked;
    for (auto& v : r.violations) total.violations.push_back(std::move(v));
    ++done;
  }
  return total;
}

}  // namespace tysys
