#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tysys/cartan.hpp"
#include "tysys/error.hpp"
#include "tysys/lattice.hpp"
#include "tysys/rational.hpp"
#include "tysys/verify.hpp"

namespace tysys {

/// Largest integer not exceeding num/den, den > 0.
constexpr int floor_div(int num, int den) {
  int q = num / den;
  return (num % den != 0 && num < 0) ? q - 1 : q;
}

/// The d_b factors of the S-term S^{(b)}_m at scaled coordinate k, in product
/// order k' = 1..d_b, including level-0 entries (units).
inline std::vector<LatticeVar> s_term_raw(int d_b, int b, int m, int k) {
  std::vector<LatticeVar> out;
  out.reserve(d_b);
  for (int kp = 1; kp <= d_b; ++kp) {
    const int e = floor_div(m - kp, d_b);
    out.push_back({b, 1 + e, k + 2 * kp - 1 - m + e * d_b});
  }
  return out;
}

inline FactorList drop_level_zero(const std::vector<LatticeVar>& vars) {
  std::vector<LatticeVar> kept;
  for (const auto& v : vars)
    if (v.m != 0) kept.push_back(v);
  return aggregate(kept);
}

inline FactorList s_term(const CartanMatrix& cm, int b, int m, int k) {
  require_tamely_laced(cm);
  if (m < 0) throw Error(ErrorCode::LevelOutOfRange, "S-term level must be >= 0");
  return drop_level_zero(s_term_raw(cm.d(b), b, m, k));
}

/// Second term M^{(a)}_m of the T-relation, read off the d_a > 1 / d_a = 1 forms.
inline FactorList m_term(const CartanMatrix& cm, int a, int m, int k) {
  require_tamely_laced(cm);
  std::vector<LatticeVar> vars;
  for (int b : cm.neighbors(a)) {
    if (cm.d(a) > 1) {
      vars.push_back({b, (cm.d(a) / cm.d(b)) * m, k});
    } else {
      for (const auto& v : s_term_raw(cm.d(b), b, m, k))
        if (v.m != 0) vars.push_back(v);
    }
  }
  return aggregate(vars);
}

/// Same product written through the Cartan entries alone:
/// prod_{b~a} prod_{k'=1}^{-C_ab} T^{(b)}_{-C_ba + E[d_a(m-k')/d_b]}(shifted).
inline FactorList m_term_unified(const CartanMatrix& cm, int a, int m, int k) {
  require_tamely_laced(cm);
  std::vector<LatticeVar> vars;
  const int da = cm.d(a);
  for (int b : cm.neighbors(a)) {
    const int db = cm.d(b), cab = cm(a, b), cba = cm(b, a);
    for (int kp = 1; kp <= -cab; ++kp) {
      const int e = floor_div(da * (m - kp), db);
      const int level = -cba + e;
      // d_b * ((-2k'+1)/C_ab - C_ba + E - 1) - d_a m, kept exact over C_ab
      const int scaled = db * (-2 * kp + 1) + cab * db * (-cba + e - 1) - cab * da * m;
      if (scaled % cab != 0) throw Error(ErrorCode::NotTamelyLaced, "non-integral unified shift");
      if (level != 0) vars.push_back({b, level, k + scaled / cab});
    }
  }
  return aggregate(vars);
}

/// Exponent function G(b, k, v; a, m, u) of the unified form as a sparse map.
inline std::map<LatticeVar, int> g_exponents(const CartanMatrix& cm, int a, int m, int k) {
  std::map<LatticeVar, int> g;
  for (const auto& f : m_term_unified(cm, a, m, k)) g[f.var] += f.exponent;
  return g;
}

/// One instantiated T-relation:
/// T(lhs[0]) T(lhs[1]) = prod(termA) + prod(termM), boundary units removed.
struct TRelation {
  LatticeVar center;
  std::array<LatticeVar, 2> lhs;
  FactorList termA;
  FactorList termM;

  friend bool operator==(const TRelation&, const TRelation&) = default;
};

inline FactorList drop_units(const CartanMatrix& cm, const SystemLevel& level, const FactorList& in) {
  FactorList out;
  for (const auto& f : in)
    if (!level.is_unit(cm, f.var.a, f.var.m)) out.push_back(f);
  return out;
}

inline TRelation t_relation(const CartanMatrix& cm, int a, int m, int k, const SystemLevel& level) {
  if (m < 1 || (level.is_restricted() && m > level.max_level(cm, a)))
    throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(m) + " outside the system for node " +
                                                std::to_string(a + 1));
  const int da = cm.d(a);
  TRelation rel;
  rel.center = {a, m, k};
  rel.lhs = {LatticeVar{a, m, k - da}, LatticeVar{a, m, k + da}};
  rel.termA = drop_units(cm, level, aggregate(std::vector<LatticeVar>{{a, m - 1, k}, {a, m + 1, k}}));
  rel.termM = drop_units(cm, level, m_term(cm, a, m, k));
  return rel;
}

template <class Fn>
void for_each_variable(const TRelation& rel, Fn&& fn) {
  fn(rel.lhs[0]);
  fn(rel.lhs[1]);
  for (const auto& f : rel.termA) fn(f.var);
  for (const auto& f : rel.termM) fn(f.var);
}

/// Every relation whose variables all lie inside the window and the level range.
inline std::vector<TRelation> enumerate_relations(const CartanMatrix& cm, const SystemLevel& level,
                                                  const Window& window) {
  require_nonempty(window);
  require_tamely_laced(cm);
  std::vector<TRelation> out;
  for (int a = 0; a < cm.rank(); ++a) {
    for (int m = 1; m <= level.max_level(cm, a); ++m) {
      for (int k = window.lo + cm.d(a); k <= window.hi - cm.d(a); ++k) {
        TRelation rel = t_relation(cm, a, m, k, level);
        bool inside = true;
        for_each_variable(rel, [&](const LatticeVar& v) {
          inside = inside && window.contains(v.k) && level.in_range(cm, v.a, v.m);
        });
        if (inside) out.push_back(std::move(rel));
      }
    }
  }
  return out;
}

template <class V, class Lookup>
V product_of(const FactorList& factors, Lookup&& lookup) {
  V p(1);
  for (const auto& f : factors) p = p * power(lookup(f.var), f.exponent);
  return p;
}

template <class V>
CheckReport<V> check_t_solution(const ValueTable<V>& values, const std::vector<TRelation>& relations) {
  CheckReport<V> report;
  auto lookup = [&](const LatticeVar& v) -> const V& { return values.at(v); };
  for (const auto& rel : relations) {
    V lhs = values.at(rel.lhs[0]) * values.at(rel.lhs[1]);
    V rhs = product_of<V>(rel.termA, lookup) + product_of<V>(rel.termM, lookup);
    ++report.checked;
    if (!(lhs == rhs)) report.violations.push_back({rel.center, std::move(lhs), std::move(rhs)});
  }
  return report;
}

template <class V>
CheckReport<BigRational> check_t_solution_numeric(const ValueTable<V>& values,
                                                  const std::vector<TRelation>& relations, Rng& rng,
                                                  int samples = kDefaultNumericSamples) {
  return check_numerically(
      values, [&](const ValueTable<BigRational>& t) { return check_t_solution(t, relations); }, rng,
      samples);
}

/// Node processing order inside a slice: decreasing d, then index.
inline std::vector<int> nodes_by_decreasing_d(const CartanMatrix& cm) {
  std::vector<int> order(cm.rank());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return cm.d(x) > cm.d(y); });
  return order;
}

/// Largest distance below the centre reached by any variable of node a's relations.
/// Equals d_a except for a d = 1 node next to some d_b >= 3, whose S-terms reach d_b - 1.
inline int backward_reach(const CartanMatrix& cm, const SystemLevel& level, int a) {
  int reach = cm.d(a);
  for (int m = 1; m <= level.max_level(cm, a); ++m)
    for_each_variable(t_relation(cm, a, m, 0, level), [&](const LatticeVar& v) { reach = std::max(reach, -v.k); });
  return reach;
}

/// Cauchy solver for the restricted T-system on a window.
///
/// Node a needs initial data on slices [lo, lo + d_a + r_a - 1] for every level,
/// r_a = backward_reach (so 2 d_a slices in the common case); entries absent from
/// `initial` are drawn with random_nonzero_rational. Slices are then filled in
/// increasing order, nodes within a slice by decreasing d_a, each value solved
/// from the relation centred d_a slices below it. A forward dependency (possible
/// once some d_b >= 3 neighbours a d = 1 node) raises UnschedulableDependency. An
/// accidental zero redraws the free data.
inline ValueTable<BigRational> propagate_t(const CartanMatrix& cm, const SystemLevel& level,
                                           const Window& window, const ValueTable<BigRational>& initial,
                                           Rng& rng, const RetryPolicy& policy = {}) {
  require_tamely_laced(cm);
  require_nonempty(window);
  if (!level.is_restricted())
    throw Error(ErrorCode::Unsupported, "propagate_t solves restricted systems only");
  const auto order = nodes_by_decreasing_d(cm);
  std::vector<int> first(cm.rank());
  for (int a = 0; a < cm.rank(); ++a) first[a] = window.lo + cm.d(a) + backward_reach(cm, level, a);

  for (int attempt = 0;; ++attempt) {
    ValueTable<BigRational> table = initial;
    bool any_free = false;
    for (int a = 0; a < cm.rank(); ++a)
      for (int m = 1; m <= level.max_level(cm, a); ++m)
        for (int k = window.lo; k <= std::min(window.hi, first[a] - 1); ++k)
          if (!table.contains({a, m, k})) {
            table.set({a, m, k}, random_nonzero_rational(rng, policy.bits));
            any_free = true;
          }

    try {
      for (int s = window.lo; s <= window.hi; ++s) {
        for (int a : order) {
          const int da = cm.d(a);
          if (s < first[a]) continue;
          for (int m = 1; m <= level.max_level(cm, a); ++m) {
            const TRelation rel = t_relation(cm, a, m, s - da, level);
            auto lookup = [&](const LatticeVar& v) -> const BigRational& {
              if (const BigRational* x = table.find(v)) return *x;
              if (v.k >= s)
                throw Error(ErrorCode::UnschedulableDependency,
                            "T" + to_string({a, m, s}) + " needs unfilled " + to_string(v));
              throw Error(ErrorCode::MissingValue, "T" + to_string({a, m, s}) + " needs " + to_string(v));
            };
            BigRational rhs = product_of<BigRational>(rel.termA, lookup) +
                              product_of<BigRational>(rel.termM, lookup);
            if (rhs.is_zero())
              throw Error(ErrorCode::ZeroDivisor, "T" + to_string({a, m, s}) + " would vanish");
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

/// Counts of an identity check over a set of centres.
struct IdentityReport {
  int centers = 0;
  int failures = 0;
  bool pass() const { return centers > 0 && failures == 0; }
};

namespace detail {

/// Value of T at a level, with T_0 = 1.
inline const BigRational* t_or_unit(const ValueTable<BigRational>& values, const LatticeVar& v) {
  static const BigRational one(1);
  if (v.m == 0) return &one;
  return values.find(v);
}

}  // namespace detail

/// Telescoping identity behind the d_a > 1 case of T -> Y:
///   T_{pm}(u-p)T_{pm}(u+p) / (T_{p(m-1)}(u)T_{p(m+1)}(u))
///     = prod_{j=-p+1}^{p-1} prod_{k'=1}^{p-|j|} T_{pm+j}(v-1)T_{pm+j}(v+1) / (T_{pm+j-1}(v)T_{pm+j+1}(v)),
/// v = u + p - |j| + 1 - 2k'. Holds for arbitrary nonzero values of one node;
/// every centre (m >= 1, u in window) with all values present is checked.
inline IdentityReport identity_check_1(int p, const Window& window, const ValueTable<BigRational>& values,
                                       int node = 0) {
  require_nonempty(window);
  IdentityReport report;
  const int top = values.max_level(node);
  for (int m = 1; p * (m + 1) <= top; ++m) {
    for (int u = window.lo; u <= window.hi; ++u) {
      auto get = [&](int level, int k) { return detail::t_or_unit(values, {node, level, k}); };
      const BigRational *l1 = get(p * m, u - p), *l2 = get(p * m, u + p), *l3 = get(p * (m - 1), u),
                        *l4 = get(p * (m + 1), u);
      if (!l1 || !l2 || !l3 || !l4) continue;
      BigRational lhs = (*l1 * *l2) / (*l3 * *l4);
      BigRational rhs(1);
      bool complete = true;
      for (int j = -p + 1; j <= p - 1 && complete; ++j) {
        const int aj = j < 0 ? -j : j;
        for (int kp = 1; kp <= p - aj; ++kp) {
          const int v = u + p - aj + 1 - 2 * kp;
          const int lev = p * m + j;
          const BigRational *n1 = get(lev, v - 1), *n2 = get(lev, v + 1), *d1 = get(lev - 1, v),
                            *d2 = get(lev + 1, v);
          if (!n1 || !n2 || !d1 || !d2) {
            complete = false;
            break;
          }
          rhs *= (*n1 * *n2) / (*d1 * *d2);
        }
      }
      if (!complete) continue;
      ++report.centers;
      if (lhs != rhs) ++report.failures;
    }
  }
  return report;
}

/// S-term telescoping identity:
///   S_m(u-1)S_m(u+1) / (S_{m-1}(u)S_{m+1}(u))
///     = T_{m/d}(u-d)T_{m/d}(u+d) / (T_{m/d-1}(u)T_{m/d+1}(u))  if d | m, else 1.
inline IdentityReport identity_check_2(int d_b, const Window& window, const ValueTable<BigRational>& values,
                                       int node = 0) {
  require_nonempty(window);
  IdentityReport report;
  const int top = values.max_level(node);
  auto s_value = [&](int m, int k) -> std::optional<BigRational> {
    BigRational p(1);
    for (const auto& v : s_term_raw(d_b, node, m, k)) {
      const BigRational* x = detail::t_or_unit(values, v);
      if (!x) return std::nullopt;
      p *= *x;
    }
    return p;
  };
  for (int m = 1; m / d_b + 1 <= top; ++m) {
    for (int u = window.lo; u <= window.hi; ++u) {
      auto s1 = s_value(m, u - 1), s2 = s_value(m, u + 1), s3 = s_value(m - 1, u), s4 = s_value(m + 1, u);
      if (!s1 || !s2 || !s3 || !s4) continue;
      BigRational lhs = (*s1 * *s2) / (*s3 * *s4);
      BigRational rhs(1);
      if (m % d_b == 0) {
        const int q = m / d_b;
        auto get = [&](int level, int k) { return detail::t_or_unit(values, {node, level, k}); };
        const BigRational *n1 = get(q, u - d_b), *n2 = get(q, u + d_b), *dd1 = get(q - 1, u),
                          *dd2 = get(q + 1, u);
        if (!n1 || !n2 || !dd1 || !dd2) continue;
        rhs = (*n1 * *n2) / (*dd1 * *dd2);
      }
      ++report.centers;
      if (lhs != rhs) ++report.failures;
    }
  }
  return report;
}

}  // namespace tysys
