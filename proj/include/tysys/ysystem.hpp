#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tysys/cartan.hpp"
#include "tysys/error.hpp"
#include "tysys/lattice.hpp"
#include "tysys/rational.hpp"
#include "tysys/tsystem.hpp"
#include "tysys/verify.hpp"

namespace tysys {

enum class YKind { OnePlusY, OnePlusYinv };

struct YFactor {
  LatticeVar var;
  YKind kind = YKind::OnePlusY;
  int exponent = 1;

  friend auto operator<=>(const YFactor&, const YFactor&) = default;
};

/// Y(lhs[0]) Y(lhs[1]) = prod(1 + Y)^e over numerator / prod(1 + Y^-1)^e over denominator.
struct YRelation {
  LatticeVar center;
  std::array<LatticeVar, 2> lhs;
  std::vector<YFactor> numerator;
  std::vector<YFactor> denominator;

  friend bool operator==(const YRelation&, const YRelation&) = default;
};

inline std::vector<YFactor> as_y_factors(const FactorList& list, YKind kind) {
  std::vector<YFactor> out;
  for (const auto& f : list) out.push_back({f.var, kind, f.exponent});
  return out;
}

/// The p^2 factors of Z^{(b)}_{p,m} before any boundary handling:
/// (1 + Y^{(b)}_{pm+j}) at shift p - |j| + 1 - 2k', j = -p+1..p-1, k' = 1..p-|j|.
inline std::vector<LatticeVar> z_term_raw(int b, int p, int m, int k) {
  std::vector<LatticeVar> out;
  for (int j = -p + 1; j <= p - 1; ++j) {
    const int aj = std::abs(j);
    for (int kp = 1; kp <= p - aj; ++kp) out.push_back({b, p * m + j, k + p - aj + 1 - 2 * kp});
  }
  return out;
}

inline FactorList z_term(int b, int p, int m, int k) { return drop_level_zero(z_term_raw(b, p, m, k)); }

inline YRelation y_relation(const CartanMatrix& cm, int a, int m, int k, const SystemLevel& level) {
  require_tamely_laced(cm);
  if (m < 1 || (level.is_restricted() && m > level.max_level(cm, a)))
    throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(m) + " outside the system for node " +
                                                std::to_string(a + 1));
  const int da = cm.d(a);
  YRelation rel;
  rel.center = {a, m, k};
  rel.lhs = {LatticeVar{a, m, k - da}, LatticeVar{a, m, k + da}};
  FactorList num;
  for (int b : cm.neighbors(a)) {
    if (da > 1) {
      for (const auto& f : z_term(b, da / cm.d(b), m, k)) num.push_back(f);
    } else if (m % cm.d(b) == 0) {
      num.push_back({{b, m / cm.d(b), k}, 1});
    }
  }
  rel.numerator = as_y_factors(aggregate(num), YKind::OnePlusY);
  // Y_0^{-1} = 0 and, restricted, Y_{t_a l}^{-1} = 0: those factors are 1.
  std::vector<LatticeVar> den;
  if (m - 1 >= 1) den.push_back({a, m - 1, k});
  if (!(level.is_restricted() && m + 1 == cm.t_a(a) * level.ell())) den.push_back({a, m + 1, k});
  rel.denominator = as_y_factors(aggregate(den), YKind::OnePlusYinv);
  return rel;
}

/// Unrestricted Y-relation assembled from the transposed exponent function:
/// the exponent of (1 + Y^{(b)}_{m'}(v)) is the exponent of T^{(a)}_m(k) in M^{(b)}_{m'}(v),
/// found by scanning every (b, m', v) that could contain it.
inline YRelation y_relation_via_transpose(const CartanMatrix& cm, int a, int m, int k) {
  require_tamely_laced(cm);
  const int maxd = cm.max_d();
  const LatticeVar target{a, m, k};
  FactorList num;
  for (int b : cm.neighbors(a)) {
    for (int mp = 1; mp <= maxd * (m + 1); ++mp) {
      for (int v = k - 2 * maxd; v <= k + 2 * maxd; ++v) {
        const auto g = g_exponents(cm, b, mp, v);
        if (auto it = g.find(target); it != g.end()) num.push_back({{b, mp, v}, it->second});
      }
    }
  }
  YRelation rel;
  rel.center = target;
  rel.lhs = {LatticeVar{a, m, k - cm.d(a)}, LatticeVar{a, m, k + cm.d(a)}};
  rel.numerator = as_y_factors(aggregate(num), YKind::OnePlusY);
  std::vector<LatticeVar> den;
  if (m - 1 >= 1) den.push_back({a, m - 1, k});
  den.push_back({a, m + 1, k});
  rel.denominator = as_y_factors(aggregate(den), YKind::OnePlusYinv);
  return rel;
}

template <class Fn>
void for_each_variable(const YRelation& rel, Fn&& fn) {
  fn(rel.lhs[0]);
  fn(rel.lhs[1]);
  for (const auto& f : rel.numerator) fn(f.var);
  for (const auto& f : rel.denominator) fn(f.var);
}

/// True when every variable of the (a, m) relation has a level inside the system.
inline bool y_relation_in_levels(const CartanMatrix& cm, int a, int m, const SystemLevel& level) {
  if (m < 1 || m > level.max_level(cm, a)) return false;
  bool ok = true;
  for_each_variable(y_relation(cm, a, m, 0, level),
                    [&](const LatticeVar& v) { ok = ok && level.in_range(cm, v.a, v.m); });
  return ok;
}

inline std::vector<YRelation> enumerate_y_relations(const CartanMatrix& cm, const SystemLevel& level,
                                                    const Window& window) {
  require_nonempty(window);
  require_tamely_laced(cm);
  std::vector<YRelation> out;
  for (int a = 0; a < cm.rank(); ++a) {
    for (int m = 1; m <= level.max_level(cm, a); ++m) {
      if (!y_relation_in_levels(cm, a, m, level)) continue;
      for (int k = window.lo + cm.d(a); k <= window.hi - cm.d(a); ++k) {
        YRelation rel = y_relation(cm, a, m, k, level);
        bool inside = true;
        for_each_variable(rel, [&](const LatticeVar& v) { inside = inside && window.contains(v.k); });
        if (inside) out.push_back(std::move(rel));
      }
    }
  }
  return out;
}

template <class V, class Lookup>
V y_rhs(const YRelation& rel, Lookup&& lookup) {
  V num(1), den(1);
  for (const auto& f : rel.numerator) num = num * power(one_plus(lookup(f.var)), f.exponent);
  for (const auto& f : rel.denominator) den = den * power(one_plus(inverse(lookup(f.var))), f.exponent);
  return num / den;
}

template <class V>
CheckReport<V> check_y_solution(const ValueTable<V>& values, const std::vector<YRelation>& relations) {
  CheckReport<V> report;
  auto lookup = [&](const LatticeVar& v) -> const V& { return values.at(v); };
  for (const auto& rel : relations) {
    V lhs = values.at(rel.lhs[0]) * values.at(rel.lhs[1]);
    V rhs = y_rhs<V>(rel, lookup);
    ++report.checked;
    if (!(lhs == rhs)) report.violations.push_back({rel.center, std::move(lhs), std::move(rhs)});
  }
  return report;
}

template <class V>
CheckReport<BigRational> check_y_solution_numeric(const ValueTable<V>& values,
                                                  const std::vector<YRelation>& relations, Rng& rng,
                                                  int samples = kDefaultNumericSamples) {
  return check_numerically(
      values, [&](const ValueTable<BigRational>& t) { return check_y_solution(t, relations); }, rng,
      samples);
}

/// Cauchy solver for the Y-system, restricted or m-capped unrestricted.
///
/// Initial slab per node: slices [lo, lo + 2 d_a - 1]; missing entries are drawn at
/// random. Every right-hand factor of the relation centred at c sits on a slice
/// <= c + d_a - 1, so Y(c + d_a) = rhs(c) / Y(c - d_a) is always computable in
/// slice order. Under an m-cap, a level whose relation reaches past the cap has no
/// relation inside the system; its values are free and drawn at every slice.
inline ValueTable<BigRational> propagate_y(const CartanMatrix& cm, const SystemLevel& level,
                                           const Window& window, const ValueTable<BigRational>& initial,
                                           Rng& rng, const RetryPolicy& policy = {}) {
  require_tamely_laced(cm);
  require_nonempty(window);
  std::vector<std::vector<bool>> solvable(cm.rank());
  for (int a = 0; a < cm.rank(); ++a)
    for (int m = 0; m <= level.max_level(cm, a); ++m)
      solvable[a].push_back(m >= 1 && y_relation_in_levels(cm, a, m, level));

  for (int attempt = 0;; ++attempt) {
    ValueTable<BigRational> table = initial;
    bool any_free = false;
    for (int a = 0; a < cm.rank(); ++a)
      for (int m = 1; m <= level.max_level(cm, a); ++m)
        for (int k = window.lo; k <= window.hi; ++k) {
          const bool slab = k < window.lo + 2 * cm.d(a);
          if ((slab || !solvable[a][m]) && !table.contains({a, m, k})) {
            table.set({a, m, k}, random_nonzero_rational(rng, policy.bits));
            any_free = true;
          }
        }
    try {
      for (int s = window.lo; s <= window.hi; ++s) {
        for (int a = 0; a < cm.rank(); ++a) {
          const int da = cm.d(a);
          if (s < window.lo + 2 * da) continue;
          for (int m = 1; m <= level.max_level(cm, a); ++m) {
            if (!solvable[a][m]) continue;
            const YRelation rel = y_relation(cm, a, m, s - da, level);
            auto lookup = [&](const LatticeVar& v) -> const BigRational& {
              if (const BigRational* x = table.find(v)) return *x;
              throw Error(ErrorCode::MissingValue, "Y" + to_string({a, m, s}) + " needs " + to_string(v));
            };
            BigRational rhs;
            try {
              rhs = y_rhs<BigRational>(rel, lookup);
            } catch (const Error& e) {
              if (e.code() != ErrorCode::InverseOfZero) throw;
              throw Error(ErrorCode::ZeroDivisor, "1 + Y^-1 vanishes in relation at " + to_string(rel.center));
            }
            if (rhs.is_zero())
              throw Error(ErrorCode::ZeroDivisor, "Y" + to_string({a, m, s}) + " would vanish");
            table.set({a, m, s}, rhs / lookup(rel.lhs[0]));
          }
        }
      }
      return table;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroDivisor || !any_free || attempt >= policy.max_retries) throw;
    }
  }
}

/// Output of the T -> Y map with its companion identity checks.
template <class V>
struct TToYResult {
  ValueTable<V> y;
  CheckReport<V> one_plus_y;      // 1 + Y = T(u-d)T(u+d) / (T_{m-1} T_{m+1})
  CheckReport<V> one_plus_y_inv;  // 1 + Y^-1 = T(u-d)T(u+d) / M
  IdentityReport boundary;        // restricted: M_{t_a l} / (T_{t_a l}(u-d) T_{t_a l}(u+d)) == 1

  bool pass() const {
    return one_plus_y.pass() && one_plus_y_inv.pass() && boundary.failures == 0;
  }
};

/// Y^{(a)}_m(u) = M^{(a)}_m(u) / (T^{(a)}_{m-1}(u) T^{(a)}_{m+1}(u)) wherever every
/// factor is known; boundary T-values are the unit 1.
template <class V>
TToYResult<V> t_to_y(const CartanMatrix& cm, const SystemLevel& level, const ValueTable<V>& t_values) {
  require_tamely_laced(cm);
  TToYResult<V> out;
  const V one(1);
  auto lookup = [&](const LatticeVar& v) -> const V* {
    if (level.is_unit(cm, v.a, v.m)) return &one;
    return t_values.find(v);
  };
  auto product = [&](const FactorList& fl) -> std::optional<V> {
    V p(1);
    for (const auto& f : fl) {
      const V* x = lookup(f.var);
      if (!x) return std::nullopt;
      p = p * power(*x, f.exponent);
    }
    return p;
  };

  for (const auto& [var, tv] : t_values) {
    const auto [a, m, k] = var;
    if (m < 1 || (level.is_restricted() && m > level.max_level(cm, a))) continue;
    const V *below = lookup({a, m - 1, k}), *above = lookup({a, m + 1, k});
    if (!below || !above) continue;
    auto mt = product(m_term(cm, a, m, k));
    if (!mt) continue;
    V y = *mt / (*below * *above);
    const int da = cm.d(a);
    const V *left = lookup({a, m, k - da}), *right = lookup({a, m, k + da});
    if (left && right) {
      V lr = *left * *right;
      V rhs2 = lr / (*below * *above);
      V lhs2 = one_plus(y);
      ++out.one_plus_y.checked;
      if (!(lhs2 == rhs2)) out.one_plus_y.violations.push_back({var, lhs2, rhs2});
      V rhs3 = lr / *mt;
      V lhs3 = one_plus(inverse(y));
      ++out.one_plus_y_inv.checked;
      if (!(lhs3 == rhs3)) out.one_plus_y_inv.violations.push_back({var, lhs3, rhs3});
    }
    out.y.set(var, std::move(y));
  }

  if (level.is_restricted()) {
    if (auto span = t_values.span()) {
      for (int a = 0; a < cm.rank(); ++a) {
        const int top = cm.t_a(a) * level.ell();
        for (int k = span->lo; k <= span->hi; ++k) {
          auto mt = product(m_term(cm, a, top, k));
          const V *left = lookup({a, top, k - cm.d(a)}), *right = lookup({a, top, k + cm.d(a)});
          if (!mt || !left || !right) continue;
          ++out.boundary.centers;
          if (!(*mt / (*left * *right) == one)) ++out.boundary.failures;
        }
      }
    }
  }
  return out;
}

/// Pointwise check of the three equalities tying a T-family to a Y-family:
/// Y = M/(T_{m-1}T_{m+1}), 1+Y = T(u-d)T(u+d)/(T_{m-1}T_{m+1}), 1+Y^-1 = T(u-d)T(u+d)/M.
struct ClaimReport {
  CheckReport<BigRational> y_equals_ratio;
  CheckReport<BigRational> one_plus_y;
  CheckReport<BigRational> one_plus_y_inv;

  bool pass() const { return y_equals_ratio.pass() && one_plus_y.pass() && one_plus_y_inv.pass(); }
  std::size_t checked() const {
    return y_equals_ratio.checked + one_plus_y.checked + one_plus_y_inv.checked;
  }
};

inline ClaimReport claim_identities_check(const CartanMatrix& cm, const ValueTable<BigRational>& t_values,
                                          const ValueTable<BigRational>& y_values) {
  ClaimReport report;
  const BigRational one(1);
  auto t = [&](const LatticeVar& v) -> const BigRational* { return v.m == 0 ? &one : t_values.find(v); };
  for (const auto& [var, y] : y_values) {
    const auto [a, m, k] = var;
    const int da = cm.d(a);
    const BigRational *below = t({a, m - 1, k}), *above = t({a, m + 1, k});
    const BigRational *left = t({a, m, k - da}), *right = t({a, m, k + da});
    std::optional<BigRational> mt = BigRational(1);
    for (const auto& f : m_term(cm, a, m, k)) {
      const BigRational* x = t(f.var);
      if (!x) {
        mt.reset();
        break;
      }
      *mt *= x->pow(f.exponent);
    }
    if (mt && below && above) {
      BigRational r = *mt / (*below * *above);
      ++report.y_equals_ratio.checked;
      if (r != y) report.y_equals_ratio.violations.push_back({var, y, r});
    }
    if (left && right && below && above) {
      BigRational r = (*left * *right) / (*below * *above);
      ++report.one_plus_y.checked;
      if (r != one_plus(y)) report.one_plus_y.violations.push_back({var, one_plus(y), r});
    }
    if (left && right && mt) {
      BigRational r = (*left * *right) / *mt;
      ++report.one_plus_y_inv.checked;
      if (r != one_plus(y.inverse())) report.one_plus_y_inv.violations.push_back({var, one_plus(y.inverse()), r});
    }
  }
  return report;
}

enum class FreeChoice { Random, Unit };

struct YToTOptions {
  FreeChoice free = FreeChoice::Random;
  /// Centre of the free slab; defaults to the midpoint of the Y-window.
  std::optional<int> origin;
  /// Highest T-level to output; 0 picks the largest level determined at the origin.
  int max_level = 0;
  RetryPolicy policy;
};

struct YToTResult {
  ValueTable<BigRational> t;
  Window interior;
  int max_level = 0;
  int origin = 0;
  FreeChoice free = FreeChoice::Random;
  std::vector<LatticeVar> free_vars;
  /// Nodes extended at each ladder stage, grouped by symmetrizer entry (ascending).
  std::vector<std::vector<int>> groups;
  /// Order in which the ladder fixed each value.
  std::vector<LatticeVar> schedule;
};

namespace detail {

/// Rule that determines one T-value during reconstruction.
enum class TRule { Free, ExtendRight, ExtendLeft, Raise };

struct TStep {
  TRule rule = TRule::Free;
  std::vector<LatticeVar> t_deps;  // T-values needed (level 0 omitted)
  std::vector<LatticeVar> y_deps;  // Y-values needed
};

/// Memoized reconstruction of an unrestricted T-family from a Y-family.
///
/// Level 1 is free on the slab [o - d_a, o + d_a - 1] and is extended outward by
///   T_1(u +- d_a) = (1 + Y_1(u)^-1) M_1(u) / T_1(u -+ d_a),
/// higher levels by
///   T_{m+1}(u) = T_m(u - d_a) T_m(u + d_a) / ((1 + Y_m(u)) T_{m-1}(u)).
/// Every value has exactly one defining rule, so any dependency-respecting order
/// yields the same family; `resolve` follows dependencies on demand.
class YToTSolver {
 public:
  YToTSolver(const CartanMatrix& cm, const ValueTable<BigRational>& y, int origin)
      : cm_(cm), y_(y), origin_(origin) {
    for (int a = 0; a < cm.rank(); ++a) ymax_.push_back(y.max_level(a));
  }

  TStep step(const LatticeVar& v) const {
    const auto [a, m, k] = v;
    const int da = cm_.d(a);
    TStep s;
    if (m == 1) {
      if (k >= origin_ - da && k < origin_ + da) return s;
      const bool right = k >= origin_ + da;
      s.rule = right ? TRule::ExtendRight : TRule::ExtendLeft;
      const int c = right ? k - da : k + da;
      s.y_deps.push_back({a, 1, c});
      for (const auto& f : m_term(cm_, a, 1, c)) s.t_deps.push_back(f.var);
      s.t_deps.push_back({a, 1, right ? c - da : c + da});
      return s;
    }
    s.rule = TRule::Raise;
    s.t_deps = {{a, m - 1, k - da}, {a, m - 1, k + da}};
    if (m - 2 >= 1) s.t_deps.push_back({a, m - 2, k});
    s.y_deps.push_back({a, m - 1, k});
    return s;
  }

  bool available(const LatticeVar& v) {
    if (v.m < 1 || v.a < 0 || v.a >= cm_.rank() || v.m > ymax_[v.a] + 1) return false;
    if (auto it = avail_.find(v); it != avail_.end()) return it->second;
    if (!visiting_.insert(v).second)
      throw Error(ErrorCode::UnschedulableDependency, "cyclic dependency at T" + to_string(v));
    const TStep s = step(v);
    bool ok = true;
    for (const auto& y : s.y_deps) ok = ok && y_.contains(y);
    for (const auto& t : s.t_deps) ok = ok && available(t);
    visiting_.erase(v);
    avail_[v] = ok;
    return ok;
  }

  /// Assumes available(v).
  const BigRational& resolve(const LatticeVar& v, std::vector<LatticeVar>& schedule) {
    if (auto it = values_.find(v); it != values_.end()) return it->second;
    const TStep s = step(v);
    for (const auto& t : s.t_deps) resolve(t, schedule);
    BigRational value;
    switch (s.rule) {
      case TRule::Free:
        value = free_.at(v);
        break;
      case TRule::ExtendRight:
      case TRule::ExtendLeft: {
        const BigRational& y = y_.at(s.y_deps[0]);
        BigRational mt(1);
        for (std::size_t i = 0; i + 1 < s.t_deps.size(); ++i) mt *= values_.at(s.t_deps[i]);
        value = (BigRational(1) + y.inverse()) * mt / values_.at(s.t_deps.back());
        break;
      }
      case TRule::Raise: {
        BigRational den = BigRational(1) + y_.at(s.y_deps[0]);
        if (s.t_deps.size() == 3) den *= values_.at(s.t_deps[2]);
        if (den.is_zero()) throw Error(ErrorCode::ZeroDivisor, "1 + Y vanishes below T" + to_string(v));
        value = values_.at(s.t_deps[0]) * values_.at(s.t_deps[1]) / den;
        break;
      }
    }
    if (value.is_zero()) throw Error(ErrorCode::ZeroDivisor, "T" + to_string(v) + " vanishes");
    schedule.push_back(v);
    return values_.emplace(v, std::move(value)).first->second;
  }

  void set_free(std::map<LatticeVar, BigRational> free) {
    free_ = std::move(free);
    values_.clear();
  }

 private:
  const CartanMatrix& cm_;
  const ValueTable<BigRational>& y_;
  int origin_;
  std::vector<int> ymax_;
  std::map<LatticeVar, bool> avail_;
  std::set<LatticeVar> visiting_;
  std::map<LatticeVar, BigRational> free_;
  std::map<LatticeVar, BigRational> values_;
};

}  // namespace detail

/// Reconstructs an unrestricted T-family from a Y-family satisfying the Y-system.
///
/// The free level-1 slab is extended outward group by group: with
/// 1 < p_1 < ... < p_k the distinct symmetrizer entries, stage j extends level 1 of
/// the nodes with d_a in {1, p_1, .., p_j} over [o - p_{j+1}, o + p_{j+1}), pulling in
/// the raised levels of d = 1 nodes that the M_1 factors of larger-d nodes need;
/// the last stage covers the whole window, and higher levels follow. Before any
/// arithmetic, the sub-window on which every level up to `max_level` is determined
/// is computed; only that interior is returned.
inline YToTResult y_to_t(const CartanMatrix& cm, const ValueTable<BigRational>& y_values, Rng& rng,
                         const YToTOptions& options = {}) {
  require_tamely_laced(cm);
  const auto span = y_values.span();
  if (!span) throw Error(ErrorCode::WindowTooNarrow, "empty Y-table");
  const int origin = options.origin.value_or((span->lo + span->hi) / 2);
  detail::YToTSolver solver(cm, y_values, origin);

  for (int a = 0; a < cm.rank(); ++a)
    for (int k = origin - cm.d(a); k < origin + cm.d(a); ++k)
      if (!span->contains(k))
        throw Error(ErrorCode::WindowTooNarrow, "free slab leaves the Y-window at T" + to_string({a, 1, k}));

  int top = options.max_level;
  auto level_ok = [&](int level, int k) {
    for (int a = 0; a < cm.rank(); ++a)
      if (!solver.available({a, level, k})) return false;
    return true;
  };
  if (top == 0) {
    while (level_ok(top + 1, origin)) ++top;
  }
  if (top < 1)
    throw Error(ErrorCode::WindowTooNarrow, "level 1 is not determined at the origin k=" + std::to_string(origin));
  auto slice_ok = [&](int k) {
    for (int m = 1; m <= top; ++m)
      if (!level_ok(m, k)) return false;
    return true;
  };
  if (!slice_ok(origin))
    throw Error(ErrorCode::WindowTooNarrow, "levels up to " + std::to_string(top) + " not determined at origin");
  Window interior{origin, origin};
  while (span->contains(interior.lo - 1) && slice_ok(interior.lo - 1)) --interior.lo;
  while (span->contains(interior.hi + 1) && slice_ok(interior.hi + 1)) ++interior.hi;

  std::vector<int> groups;
  for (int a = 0; a < cm.rank(); ++a) groups.push_back(cm.d(a));
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

  for (int attempt = 0;; ++attempt) {
    YToTResult result;
    result.interior = interior;
    result.max_level = top;
    result.origin = origin;
    result.free = options.free;
    for (int p : groups) {
      result.groups.emplace_back();
      for (int a = 0; a < cm.rank(); ++a)
        if (cm.d(a) == p) result.groups.back().push_back(a);
    }
    std::map<LatticeVar, BigRational> free;
    for (int a = 0; a < cm.rank(); ++a)
      for (int k = origin - cm.d(a); k < origin + cm.d(a); ++k) {
        LatticeVar v{a, 1, k};
        free.emplace(v, options.free == FreeChoice::Unit ? BigRational(1)
                                                         : random_nonzero_rational(rng, options.policy.bits));
        result.free_vars.push_back(v);
      }
    solver.set_free(std::move(free));
    try {
      for (std::size_t stage = 0; stage < groups.size(); ++stage) {
        const bool last = stage + 1 == groups.size();
        const int radius = last ? std::max(origin - span->lo, span->hi - origin) + 1 : groups[stage + 1];
        for (int x = 0; x < radius; ++x) {
          for (int a = 0; a < cm.rank(); ++a) {
            if (cm.d(a) > groups[stage]) continue;
            for (int k : {origin + x, origin - 1 - x}) {
              LatticeVar v{a, 1, k};
              if (interior.contains(k) && solver.available(v)) solver.resolve(v, result.schedule);
            }
          }
        }
      }
      for (int m = 2; m <= top; ++m)
        for (int a = 0; a < cm.rank(); ++a)
          for (int k = interior.lo; k <= interior.hi; ++k) solver.resolve({a, m, k}, result.schedule);
      for (int a = 0; a < cm.rank(); ++a)
        for (int m = 1; m <= top; ++m)
          for (int k = interior.lo; k <= interior.hi; ++k) {
            LatticeVar v{a, m, k};
            result.t.set(v, solver.resolve(v, result.schedule));
          }
      return result;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroDivisor || options.free == FreeChoice::Unit ||
          attempt >= options.policy.max_retries)
        throw;
    }
  }
}

/// Compares t_to_y(T) with the original Y where the reconstruction argument
/// applies: levels m whose lower relations (a, 1..m-1) lie inside the Y-table's
/// level cap.
struct RoundtripReport {
  CheckReport<BigRational> mismatches;
  bool pass() const { return mismatches.checked > 0 && mismatches.pass(); }
};

inline RoundtripReport check_roundtrip(const CartanMatrix& cm, const ValueTable<BigRational>& y_values,
                                       const ValueTable<BigRational>& t_values) {
  int cap = 0;
  for (int a = 0; a < cm.rank(); ++a) cap = std::max(cap, y_values.max_level(a));
  const SystemLevel ylevel = SystemLevel::unrestricted(std::max(cap, 1));
  std::vector<int> good(cm.rank(), 0);
  for (int a = 0; a < cm.rank(); ++a) {
    int m = 1;
    while (m < cap && y_relation_in_levels(cm, a, m, ylevel)) ++m;
    good[a] = m;  // relations (a, 1..m-1) are inside the cap
  }
  const auto image = t_to_y(cm, SystemLevel::unrestricted(std::max(cap + 1, 1)), t_values);
  RoundtripReport report;
  for (const auto& [var, y] : image.y) {
    if (var.m > good[var.a]) continue;
    const BigRational* orig = y_values.find(var);
    if (!orig) continue;
    ++report.mismatches.checked;
    if (*orig != y) report.mismatches.violations.push_back({var, *orig, y});
  }
  return report;
}

/// Smallest P in [1, max_period] with Y(k + P) == Y(k) on a full initial slab,
/// found by propagating the restricted Y-system from random data.
struct PeriodScan {
  std::optional<int> period;
  ValueTable<BigRational> orbit;
};

inline PeriodScan period_scan(const CartanMatrix& cm, int ell, int max_period, Rng& rng,
                              const ValueTable<BigRational>& initial = {}) {
  const SystemLevel level = SystemLevel::restricted(ell);
  const int slab = 2 * cm.max_d();
  PeriodScan out;
  out.orbit = propagate_y(cm, level, {0, max_period + slab - 1}, initial, rng);
  for (int p = 1; p <= max_period; ++p) {
    bool same = true;
    for (int a = 0; a < cm.rank() && same; ++a)
      for (int m = 1; m <= level.max_level(cm, a) && same; ++m)
        for (int k = 0; k < slab && same; ++k) same = out.orbit.at({a, m, k}) == out.orbit.at({a, m, k + p});
    if (same) {
      out.period = p;
      break;
    }
  }
  return out;
}

}  // namespace tysys
