#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tysys/cartan.hpp"
#include "tysys/error.hpp"

namespace tysys {

/// Index of a T- or Y-variable: node a (0-based), level m, and the spectral
/// coordinate scaled by t, so that u = k / t.
struct LatticeVar {
  int a = 0;
  int m = 0;
  int k = 0;

  friend auto operator<=>(const LatticeVar&, const LatticeVar&) = default;
};

inline std::string to_string(const LatticeVar& v) {
  return "(" + std::to_string(v.a + 1) + "," + std::to_string(v.m) + "," + std::to_string(v.k) + ")";
}

struct Factor {
  LatticeVar var;
  int exponent = 1;

  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// Sorted by variable, exponents aggregated; the canonical multiset form.
using FactorList = std::vector<Factor>;

inline FactorList aggregate(const std::vector<LatticeVar>& vars) {
  std::map<LatticeVar, int> counts;
  for (const auto& v : vars) ++counts[v];
  FactorList out;
  for (const auto& [v, e] : counts) out.push_back({v, e});
  return out;
}

inline FactorList aggregate(const FactorList& factors) {
  std::map<LatticeVar, int> counts;
  for (const auto& f : factors) counts[f.var] += f.exponent;
  FactorList out;
  for (const auto& [v, e] : counts)
    if (e != 0) out.push_back({v, e});
  return out;
}

/// Closed range [lo, hi] of scaled spectral coordinates.
struct Window {
  int lo = 0;
  int hi = 0;

  bool contains(int k) const { return lo <= k && k <= hi; }
  int width() const { return hi - lo + 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

inline void require_nonempty(const Window& w) {
  if (w.lo > w.hi) throw Error(ErrorCode::EmptyWindow, "window [" + std::to_string(w.lo) + "," +
                                                            std::to_string(w.hi) + "] is empty");
}

/// Either the level-ℓ restricted system (levels 1..t_a ℓ - 1, unit boundary at
/// t_a ℓ) or the unrestricted system truncated to levels 1..mcap.
class SystemLevel {
 public:
  static SystemLevel restricted(int ell) {
    if (ell < 2) throw Error(ErrorCode::LevelOutOfRange, "restricted level must be >= 2");
    SystemLevel s;
    s.ell_ = ell;
    return s;
  }
  static SystemLevel unrestricted(int mcap) {
    if (mcap < 1) throw Error(ErrorCode::LevelOutOfRange, "m-cap must be >= 1");
    SystemLevel s;
    s.mcap_ = mcap;
    return s;
  }

  bool is_restricted() const noexcept { return ell_ > 0; }
  int ell() const noexcept { return ell_; }
  int mcap() const noexcept { return mcap_; }

  /// Largest level carried by node a.
  int max_level(const CartanMatrix& cm, int a) const {
    return is_restricted() ? cm.t_a(a) * ell_ - 1 : mcap_;
  }
  /// Level at which node b's T-variable is the unit 1 (0, or t_b ℓ when restricted).
  bool is_unit(const CartanMatrix& cm, int b, int level) const {
    return level == 0 || (is_restricted() && level == cm.t_a(b) * ell_);
  }
  bool in_range(const CartanMatrix& cm, int b, int level) const {
    return level >= 1 && level <= max_level(cm, b);
  }

 private:
  int ell_ = 0;
  int mcap_ = 0;
};

/// Values of a family of lattice variables. Entries are never zero; boundary
/// units are not stored.
template <class V>
class ValueTable {
 public:
  using Map = std::map<LatticeVar, V>;

  void set(const LatticeVar& v, V value) {
    if (is_zero(value)) throw Error(ErrorCode::ZeroDivisor, "zero value for " + to_string(v));
    values_.insert_or_assign(v, std::move(value));
  }
  bool contains(const LatticeVar& v) const { return values_.count(v) != 0; }
  const V* find(const LatticeVar& v) const {
    auto it = values_.find(v);
    return it == values_.end() ? nullptr : &it->second;
  }
  const V& at(const LatticeVar& v) const {
    auto it = values_.find(v);
    if (it == values_.end()) throw Error(ErrorCode::MissingValue, "no value for " + to_string(v));
    return it->second;
  }
  void erase(const LatticeVar& v) { values_.erase(v); }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Smallest window containing every stored coordinate.
  std::optional<Window> span() const {
    if (values_.empty()) return std::nullopt;
    Window w{values_.begin()->first.k, values_.begin()->first.k};
    for (const auto& [v, x] : values_) {
      w.lo = std::min(w.lo, v.k);
      w.hi = std::max(w.hi, v.k);
    }
    return w;
  }
  int max_level(int a) const {
    int m = 0;
    for (const auto& [v, x] : values_)
      if (v.a == a) m = std::max(m, v.m);
    return m;
  }

  friend bool operator==(const ValueTable& x, const ValueTable& y) { return x.values_ == y.values_; }

 private:
  Map values_;
};

/// Longest run of consecutive slices on which every level 1..max_level of every
/// node is present (the leftmost such run on ties).
template <class V>
std::optional<Window> complete_window(const ValueTable<V>& table, const CartanMatrix& cm,
                                      const SystemLevel& level) {
  const auto span = table.span();
  if (!span) return std::nullopt;
  std::optional<Window> best;
  std::optional<int> run_start;
  for (int k = span->lo; k <= span->hi + 1; ++k) {
    bool full = k <= span->hi;
    for (int a = 0; a < cm.rank() && full; ++a)
      for (int m = 1; m <= level.max_level(cm, a) && full; ++m) full = table.contains({a, m, k});
    if (full && !run_start) run_start = k;
    if (!full && run_start) {
      Window w{*run_start, k - 1};
      if (!best || w.width() > best->width()) best = w;
      run_start.reset();
    }
  }
  return best;
}

/// Policy for random free data and resampling after an accidental zero.
struct RetryPolicy {
  int max_retries = 16;
  int bits = kDefaultRandomBits;
};

}  // namespace tysys
