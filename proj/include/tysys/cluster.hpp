#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tysys/cartan.hpp"
#include "tysys/error.hpp"
#include "tysys/exchange.hpp"
#include "tysys/lattice.hpp"
#include "tysys/ratfunc.hpp"
#include "tysys/semifield.hpp"
#include "tysys/tsystem.hpp"
#include "tysys/verify.hpp"
#include "tysys/ysystem.hpp"

namespace tysys {

/// Exchange matrix, cluster x and coefficient tuple y.
template <class X, class Y>
struct BasicSeed {
  ExchangeMatrix matrix;
  std::vector<X> x;
  std::vector<Y> y;

  friend bool operator==(const BasicSeed& a, const BasicSeed& b) {
    return a.matrix == b.matrix && a.x == b.x && a.y == b.y;
  }
};

/// Symbolic seed: x in the rational function field, y in the universal semifield.
using Seed = BasicSeed<RationalFunction, SemifieldElement>;
/// Evaluated seed: x nonzero rationals, y positive rationals.
using NumericSeed = BasicSeed<BigRational, BigRational>;

inline Seed initial_seed(const ExchangeMatrix& e) {
  const auto n = static_cast<std::size_t>(e.size());
  Seed s{e, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(RationalFunction::generator(i, n));
    s.y.push_back(SemifieldElement::generator(i, n));
  }
  return s;
}

inline NumericSeed random_numeric_seed(const ExchangeMatrix& e, Rng& rng, int bits = kDefaultRandomBits) {
  NumericSeed s{e, {}, {}};
  for (int i = 0; i < e.size(); ++i) {
    s.x.push_back(random_nonzero_rational(rng, bits));
    s.y.push_back(random_positive_rational(rng, bits));
  }
  return s;
}

/// Seed mutation at k.
///   x'_k = (prod_{B_jk > 0} x_j^{B_jk} + prod_{B_jk < 0} x_j^{-B_jk}) / x_k
///   y'_k = y_k^{-1},  y'_i = y_i (1 + y_k^{-1})^{-B_ki} if B_ki >= 0, else y_i (1 + y_k)^{-B_ki}.
template <class X, class Y>
BasicSeed<X, Y> mutate_seed(const BasicSeed<X, Y>& s, int k) {
  const ExchangeMatrix& b = s.matrix;
  require_index(b, k);
  BasicSeed<X, Y> out{mutate_matrix(b, k), s.x, s.y};
  X pos(1), neg(1);
  for (int j = 0; j < b.size(); ++j) {
    if (b(j, k) > 0) pos = pos * power(s.x[j], b(j, k));
    if (b(j, k) < 0) neg = neg * power(s.x[j], -b(j, k));
  }
  out.x[k] = (pos + neg) / s.x[k];
  const Y yk = s.y[k];
  out.y[k] = inverse(yk);
  for (int i = 0; i < b.size(); ++i) {
    if (i == k || b(k, i) == 0) continue;
    if (b(k, i) > 0)
      out.y[i] = s.y[i] * power(one_plus(inverse(yk)), -b(k, i));
    else
      out.y[i] = s.y[i] * power(one_plus(yk), -b(k, i));
  }
  return out;
}

template <class X, class Y>
BasicSeed<X, Y> mutate_seed_class(const BasicSeed<X, Y>& s, Sign cls, bool reverse = false) {
  auto nodes = parity_class(s.matrix, cls);
  if (reverse) std::reverse(nodes.begin(), nodes.end());
  BasicSeed<X, Y> out = s;
  for (int k : nodes) out = mutate_seed(out, k);
  return out;
}

/// x_i(u), y_i(u) for u in [lo, hi], keyed by (i, u).
template <class X, class Y>
struct SequenceResult {
  int lo = 0;
  int hi = 0;
  int size = 0;
  std::map<std::pair<int, int>, X> x;
  std::map<std::pair<int, int>, Y> y;

  const X& x_at(int i, int u) const { return lookup(x, i, u, "x"); }
  const Y& y_at(int i, int u) const { return lookup(y, i, u, "y"); }

 private:
  template <class M>
  static const typename M::mapped_type& lookup(const M& m, int i, int u, const char* name) {
    auto it = m.find({i, u});
    if (it == m.end())
      throw Error(ErrorCode::MissingValue,
                  std::string(name) + "_" + std::to_string(i + 1) + "(" + std::to_string(u) + ") not computed");
    return it->second;
  }
};

using SymbolicSequence = SequenceResult<RationalFunction, SemifieldElement>;
using NumericSequence = SequenceResult<BigRational, BigRational>;

/// Which class the step u -> u + dir mutates: rightward from even u and leftward
/// from odd u use mu_+, the other two use mu_-. Hence x(-1) = mu_-(x(0)).
inline Sign step_class(int u, int dir) {
  const bool even = u % 2 == 0;
  return (dir > 0) == even ? Sign::Plus : Sign::Minus;
}

/// Runs the bipartite belt  ... <-mu_-> (B, x(0), y(0)) <-mu_+> (-B, x(1), y(1)) <-mu_-> (B, x(2), y(2)) ...
/// from `start` over u in [lo, hi] (lo <= 0 <= hi). The first step in each
/// direction is also performed in reversed node order and must give the same seed.
template <class X, class Y>
SequenceResult<X, Y> run_sequence(const BasicSeed<X, Y>& start, int lo, int hi) {
  const ExchangeMatrix& e = start.matrix;
  if (!check_b1(e) || !check_b2(e))
    throw Error(ErrorCode::ConditionsViolated, "exchange matrix violates the bipartite conditions");
  if (lo > 0 || hi < 0) throw Error(ErrorCode::EmptyWindow, "u-range must contain 0");
  SequenceResult<X, Y> out;
  out.lo = lo;
  out.hi = hi;
  out.size = e.size();
  auto record = [&](const BasicSeed<X, Y>& s, int u) {
    for (int i = 0; i < e.size(); ++i) {
      out.x.insert_or_assign({i, u}, s.x[i]);
      out.y.insert_or_assign({i, u}, s.y[i]);
    }
  };
  record(start, 0);
  for (int dir : {1, -1}) {
    BasicSeed<X, Y> s = start;
    for (int u = 0; dir > 0 ? u < hi : u > lo; u += dir) {
      const Sign cls = step_class(u, dir);
      BasicSeed<X, Y> next = mutate_seed_class(s, cls);
      if (u == 0 && !(mutate_seed_class(s, cls, true) == next))
        throw Error(ErrorCode::ConditionsViolated, "composed mutation depends on the order");
      s = std::move(next);
      record(s, u + dir);
    }
  }
  return out;
}

inline SymbolicSequence run_sequence(const ExchangeMatrix& e, int lo, int hi) {
  return run_sequence(initial_seed(e), lo, hi);
}

/// Sign of epsilon(i) (-1)^u.
inline Sign belt_parity(const ExchangeMatrix& e, int i, int u) {
  const bool odd = (u % 2 + 2) % 2 == 1;
  return odd ? flip(e.parity(i)) : e.parity(i);
}

/// Parity lemmas: x_i(u) = x_i(u -+ 1) and y_i(u) = y_i(u +- 1)^{-1} for (i, u)
/// in P_+ (upper sign) or P_- (lower sign).
struct ParityReport {
  int x_checked = 0;
  int y_checked = 0;
  std::vector<LatticeVar> x_failures;
  std::vector<LatticeVar> y_failures;
  bool pass() const { return x_checked > 0 && y_checked > 0 && x_failures.empty() && y_failures.empty(); }
};

template <class X, class Y>
ParityReport check_parity_lemmas(const SequenceResult<X, Y>& seq, const ExchangeMatrix& e) {
  ParityReport r;
  for (int i = 0; i < seq.size; ++i)
    for (int u = seq.lo; u <= seq.hi; ++u) {
      const int s = sign_value(belt_parity(e, i, u));
      if (u - s >= seq.lo && u - s <= seq.hi) {
        ++r.x_checked;
        if (!(seq.x_at(i, u) == seq.x_at(i, u - s))) r.x_failures.push_back({i, 0, u});
      }
      if (u + s >= seq.lo && u + s <= seq.hi) {
        ++r.y_checked;
        if (!(seq.y_at(i, u) == inverse(seq.y_at(i, u + s)))) r.y_failures.push_back({i, 0, u});
      }
    }
  return r;
}

/// T(B) relation at (i, u): T_i(u-1) T_i(u+1) = prod_{B_ji>0} T_j(u)^{B_ji} + prod_{B_ji<0} T_j(u)^{-B_ji}.
/// Variables are encoded as LatticeVar{i, 0, u}.
inline TRelation tb_relation(const ExchangeMatrix& e, int i, int u) {
  TRelation rel;
  rel.center = {i, 0, u};
  rel.lhs = {LatticeVar{i, 0, u - 1}, LatticeVar{i, 0, u + 1}};
  for (int j = 0; j < e.size(); ++j) {
    if (e(j, i) > 0) rel.termA.push_back({{j, 0, u}, e(j, i)});
    if (e(j, i) < 0) rel.termM.push_back({{j, 0, u}, -e(j, i)});
  }
  return rel;
}

/// Y_eps(B) relation at (i, u). For Y_+ and i in I_+ the numerator collects
/// (1 + Y_j)^{B_ji} over B_ji > 0 and the denominator (1 + Y_j^{-1})^{-B_ji} over
/// B_ji < 0; the sign of B_ji is reversed for i in I_-, and again for Y_-.
inline YRelation yb_relation(const ExchangeMatrix& e, int i, int u, Sign eps) {
  YRelation rel;
  rel.center = {i, 0, u};
  rel.lhs = {LatticeVar{i, 0, u - 1}, LatticeVar{i, 0, u + 1}};
  const int s = sign_value(e.parity(i)) * sign_value(eps);
  for (int j = 0; j < e.size(); ++j) {
    const int b = s * e(j, i);
    if (b > 0) rel.numerator.push_back({{j, 0, u}, YKind::OnePlusY, b});
    if (b < 0) rel.denominator.push_back({{j, 0, u}, YKind::OnePlusYinv, -b});
  }
  return rel;
}

template <class V>
using BeltTable = std::map<std::pair<int, int>, V>;

namespace detail {

template <class V>
const V& belt_value(const BeltTable<V>& t, const LatticeVar& v) {
  auto it = t.find({v.a, v.k});
  if (it == t.end()) throw Error(ErrorCode::MissingValue, "no value at " + to_string(v));
  return it->second;
}

template <class V>
V belt_product(const BeltTable<V>& t, const FactorList& f) {
  V p(1);
  for (const auto& x : f) p = p * power(belt_value(t, x.var), x.exponent);
  return p;
}

}  // namespace detail

/// T(B) on every centre (i, u) with lo < u < hi.
template <class V>
CheckReport<V> check_tb(const BeltTable<V>& t, const ExchangeMatrix& e, int lo, int hi) {
  CheckReport<V> r;
  for (int i = 0; i < e.size(); ++i)
    for (int u = lo + 1; u < hi; ++u) {
      const TRelation rel = tb_relation(e, i, u);
      V lhs = detail::belt_value(t, rel.lhs[0]) * detail::belt_value(t, rel.lhs[1]);
      V rhs = detail::belt_product(t, rel.termA) + detail::belt_product(t, rel.termM);
      ++r.checked;
      if (!(lhs == rhs)) r.violations.push_back({rel.center, std::move(lhs), std::move(rhs)});
    }
  return r;
}

template <class X, class Y>
CheckReport<X> check_tb(const SequenceResult<X, Y>& seq, const ExchangeMatrix& e) {
  return check_tb(seq.x, e, seq.lo, seq.hi);
}

template <class V>
V yb_rhs(const YRelation& rel, const BeltTable<V>& t) {
  V num(1), den(1);
  for (const auto& f : rel.numerator) num = num * power(one_plus(detail::belt_value(t, f.var)), f.exponent);
  for (const auto& f : rel.denominator)
    den = den * power(one_plus(inverse(detail::belt_value(t, f.var))), f.exponent);
  return num / den;
}

/// Y_eps(B) on the centres (i, u), lo < u < hi, selected by `centre`
/// (nullopt: every centre).
template <class V>
CheckReport<V> check_yb_table(const BeltTable<V>& t, const ExchangeMatrix& e, Sign eps, int lo, int hi,
                              std::optional<Sign> centre) {
  CheckReport<V> r;
  for (int i = 0; i < e.size(); ++i)
    for (int u = lo + 1; u < hi; ++u) {
      if (centre && belt_parity(e, i, u) != *centre) continue;
      const YRelation rel = yb_relation(e, i, u, eps);
      V lhs = detail::belt_value(t, rel.lhs[0]) * detail::belt_value(t, rel.lhs[1]);
      V rhs = yb_rhs(rel, t);
      ++r.checked;
      if (!(lhs == rhs)) r.violations.push_back({rel.center, std::move(lhs), std::move(rhs)});
    }
  return r;
}

/// Y_eps(B) for the coefficient family: centres in P_{-eps}, so that every
/// variable of a checked relation lies in P_eps.
template <class X, class Y>
CheckReport<Y> check_yb(const SequenceResult<X, Y>& seq, const ExchangeMatrix& e, Sign eps) {
  return check_yb_table(seq.y, e, eps, seq.lo, seq.hi, flip(eps));
}

/// Output of the T -> Y map for T(B).
template <class V>
struct TToYBResult {
  BeltTable<V> y;
  CheckReport<V> one_plus_y;      // 1 + Y = T(u-1)T(u+1) / (negative-exponent monomial)
  CheckReport<V> one_plus_y_inv;  // 1 + Y^-1 = T(u-1)T(u+1) / (positive-exponent monomial)
  CheckReport<V> system;          // Y satisfies Y_eps(B)
  bool pass() const {
    return one_plus_y.pass() && one_plus_y_inv.pass() && system.pass() && system.checked > 0;
  }
};

/// Y_i(u) = prod_j T_j(u)^{s B_ji} with s = +-1 for i in I_+- (eps = +), or the
/// opposite sign (eps = -).
template <class V>
TToYBResult<V> t_to_y_b(const BeltTable<V>& t, const ExchangeMatrix& e, Sign eps, int lo, int hi) {
  TToYBResult<V> out;
  for (int i = 0; i < e.size(); ++i) {
    const int s = sign_value(e.parity(i)) * sign_value(eps);
    for (int u = lo; u <= hi; ++u) {
      FactorList pos, neg;
      for (int j = 0; j < e.size(); ++j) {
        const int b = s * e(j, i);
        if (b > 0) pos.push_back({{j, 0, u}, b});
        if (b < 0) neg.push_back({{j, 0, u}, -b});
      }
      const V p = detail::belt_product(t, pos), n = detail::belt_product(t, neg);
      if (is_zero(n)) throw Error(ErrorCode::ZeroDivisor, "monomial vanishes at (" + std::to_string(i + 1) + "," + std::to_string(u) + ")");
      V y = p / n;
      if (u > lo && u < hi) {
        const V tt = detail::belt_value(t, {i, 0, u - 1}) * detail::belt_value(t, {i, 0, u + 1});
        const LatticeVar c{i, 0, u};
        V lhs = one_plus(y), rhs = tt / n;
        ++out.one_plus_y.checked;
        if (!(lhs == rhs)) out.one_plus_y.violations.push_back({c, lhs, rhs});
        lhs = one_plus(inverse(y));
        rhs = tt / p;
        ++out.one_plus_y_inv.checked;
        if (!(lhs == rhs)) out.one_plus_y_inv.violations.push_back({c, lhs, rhs});
      }
      out.y.emplace(std::pair{i, u}, std::move(y));
    }
  }
  out.system = check_yb_table(out.y, e, eps, lo, hi, std::nullopt);
  return out;
}

/// Every x_i(u) is a Laurent polynomial in the initial cluster.
struct LaurentReport {
  int checked = 0;
  std::vector<LatticeVar> failures;
  bool pass() const { return checked > 0 && failures.empty(); }
};

template <class Y>
LaurentReport laurent_check(const SequenceResult<RationalFunction, Y>& seq) {
  LaurentReport r;
  for (const auto& [key, f] : seq.x) {
    ++r.checked;
    if (!laurent_divide_exact(f.num(), f.den())) r.failures.push_back({key.first, 0, key.second});
  }
  return r;
}

/// Identification of a restricted simply laced system with a bipartite belt.
///
/// Level 2 uses B = B(C); level l >= 3 uses B(C) □ B(C') with C' of type
/// A_{l-1}, I'_+ the odd nodes, and (a, m) at index a (l - 1) + m - 1. A
/// nonbipartite C is replaced by its bipartite double, and T^{(a)}_m(u) goes to
/// node a_+ or a_- according to (-1)^{m+1+u} = + or -.
class Correspondence {
 public:
  Correspondence(const CartanMatrix& cm, int ell) : cm_(cm), level_(SystemLevel::restricted(ell)) {
    if (!is_simply_laced(cm)) throw Error(ErrorCode::NotSimplyLaced, "correspondence needs simply laced C");
    const CartanMatrix* base = &cm_;
    if (!bipartition(cm)) {
      double_.emplace(bipartite_double(cm));
      base = &double_->matrix;
    }
    if (ell == 2) {
      b_.emplace(b_of_c(*base, double_ ? std::optional<Parity>(double_->parity) : std::nullopt));
    } else {
      Parity odd(ell - 1);
      for (int m = 0; m < ell - 1; ++m) odd[m] = m % 2 == 0 ? Sign::Plus : Sign::Minus;
      b_.emplace(square_product(*base, cartan_type_a(ell - 1),
                                double_ ? std::optional<Parity>(double_->parity) : std::nullopt, odd));
    }
  }

  const ExchangeMatrix& exchange() const { return *b_; }
  const SystemLevel& level() const { return level_; }
  bool via_double() const { return double_.has_value(); }

  /// Belt node carrying T^{(a)}_m(u).
  int node(int a, int m, int u) const {
    int base = a;
    if (double_) base = (m + 1 + u) % 2 == 0 ? double_->plus[a] : double_->minus[a];
    return level_.ell() == 2 ? base : square_index(base, m - 1, level_.ell() - 1);
  }
  LatticeVar map(const LatticeVar& v) const { return {node(v.a, v.m, v.k), 0, v.k}; }

  /// Belt node at which the image of the relation centred at (a, m, u) lives:
  /// for a double, the class opposite to that of its variables.
  int centre_node(int a, int m, int u) const {
    if (!double_) return node(a, m, u);
    return node(a, m, u + 1);
  }

 private:
  CartanMatrix cm_;
  SystemLevel level_;
  std::optional<BipartiteDouble> double_;
  std::optional<ExchangeMatrix> b_;
};

struct CorrespondenceReport {
  int t_relations = 0;
  int y_relations = 0;
  int values = 0;
  std::vector<std::string> failures;
  bool via_double = false;
  int belt_size = 0;

  bool pass() const { return t_relations > 0 && y_relations > 0 && values > 0 && failures.empty(); }
};

namespace detail {

inline bool same_t_relation(const TRelation& x, const TRelation& y) {
  auto lx = std::vector<LatticeVar>(x.lhs.begin(), x.lhs.end());
  auto ly = std::vector<LatticeVar>(y.lhs.begin(), y.lhs.end());
  std::sort(lx.begin(), lx.end());
  std::sort(ly.begin(), ly.end());
  if (lx != ly) return false;
  return (x.termA == y.termA && x.termM == y.termM) || (x.termA == y.termM && x.termM == y.termA);
}

inline FactorList map_factors(const Correspondence& c, const FactorList& f) {
  FactorList out;
  for (const auto& x : f) out.push_back({c.map(x.var), x.exponent});
  return aggregate(out);
}

inline std::vector<YFactor> map_factors(const Correspondence& c, const std::vector<YFactor>& f) {
  std::vector<YFactor> out;
  for (const auto& x : f) out.push_back({c.map(x.var), x.kind, x.exponent});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Checks the identification on u in [lo, hi]:
///  * relation level: each T_l(C) relation whose variables lie in one parity
///    class maps onto the T(B) relation at the image centre, and each Y_l(C)
///    relation onto the Y(B) relation (Y_- for l = 2, Y_+ for l >= 3);
///  * value level: the cluster variables of the belt, pulled back to T^{(a)}_m(u),
///    satisfy those T_l(C) relations exactly.
inline CorrespondenceReport correspondence_check(const CartanMatrix& cm, int ell, int lo = -3, int hi = 3) {
  const Correspondence corr(cm, ell);
  const ExchangeMatrix& e = corr.exchange();
  const Sign ysign = ell == 2 ? Sign::Minus : Sign::Plus;
  CorrespondenceReport report;
  report.via_double = corr.via_double();
  report.belt_size = e.size();
  const SymbolicSequence seq = run_sequence(e, lo, hi);

  for (int a = 0; a < cm.rank(); ++a)
    for (int m = 1; m <= ell - 1; ++m)
      for (int u = lo + 1; u < hi; ++u) {
        const std::string where = "(" + std::to_string(a + 1) + "," + std::to_string(m) + "," + std::to_string(u) + ")";
        const int centre = corr.centre_node(a, m, u);

        TRelation tl = t_relation(cm, a, m, u, corr.level());
        TRelation mapped;
        mapped.center = {centre, 0, u};
        mapped.lhs = {corr.map(tl.lhs[0]), corr.map(tl.lhs[1])};
        mapped.termA = detail::map_factors(corr, tl.termA);
        mapped.termM = detail::map_factors(corr, tl.termM);
        ++report.t_relations;
        if (!detail::same_t_relation(mapped, tb_relation(e, centre, u)))
          report.failures.push_back("T-relation " + where + " differs from its belt image");

        YRelation yl = y_relation(cm, a, m, u, corr.level());
        YRelation ymapped;
        ymapped.center = {centre, 0, u};
        ymapped.lhs = {corr.map(yl.lhs[0]), corr.map(yl.lhs[1])};
        std::sort(ymapped.lhs.begin(), ymapped.lhs.end());
        ymapped.numerator = detail::map_factors(corr, yl.numerator);
        ymapped.denominator = detail::map_factors(corr, yl.denominator);
        YRelation yb = yb_relation(e, centre, u, ysign);
        std::sort(yb.lhs.begin(), yb.lhs.end());
        std::sort(yb.numerator.begin(), yb.numerator.end());
        std::sort(yb.denominator.begin(), yb.denominator.end());
        ++report.y_relations;
        if (!(ymapped == yb)) report.failures.push_back("Y-relation " + where + " differs from its belt image");

        // Pulled-back cluster variables satisfy the T_l(C) relation.
        auto value = [&](const LatticeVar& v) -> const RationalFunction& {
          return seq.x_at(corr.node(v.a, v.m, v.k), v.k);
        };
        RationalFunction lhs = value(tl.lhs[0]) * value(tl.lhs[1]);
        RationalFunction rhs = product_of<RationalFunction>(tl.termA, value) +
                               product_of<RationalFunction>(tl.termM, value);
        ++report.values;
        if (!(lhs == rhs)) report.failures.push_back("cluster variables violate the T-relation at " + where);
      }
  return report;
}

}  // namespace tysys
