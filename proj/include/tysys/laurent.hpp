#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tysys/error.hpp"
#include "tysys/rational.hpp"

namespace tysys {

/// Values for the generators of an expression, indexed by generator position.
/// Every entry must be nonzero (Laurent monomials are evaluated at negative powers).
using Assignment = std::vector<BigRational>;

/// Sparse multivariate Laurent polynomial over Q.
///
/// Exponent vectors are dense over a generator universe of size nvars(). Operands
/// over different universes are padded with zero exponents to the larger one, so
/// a polynomial built over 2 generators combines with one built over 5. Terms are
/// kept in a lexicographically ordered map; the last entry is the leading term.
class LaurentPoly {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, BigRational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(const BigRational& c, std::size_t nvars = 0) {
    LaurentPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Exponent(nvars, 0), c);
    return p;
  }

  static LaurentPoly generator(std::size_t index, std::size_t nvars) {
    if (index >= nvars) throw Error(ErrorCode::IndexOutOfRange, "generator index");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(std::move(e), BigRational(1));
  }

  static LaurentPoly monomial(Exponent e, const BigRational& c) {
    LaurentPoly p(e.size());
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
  }
  /// Constant term value (0 when absent).
  BigRational constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  bool all_coefficients_positive() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.sign() > 0; });
  }
  bool has_nonnegative_exponents() const {
    for (const auto& [e, c] : terms_)
      for (int v : e)
        if (v < 0) return false;
    return true;
  }

  const std::pair<const Exponent, BigRational>& leading_term() const { return *terms_.rbegin(); }

  /// Returns a copy over a universe of n >= nvars() generators.
  LaurentPoly extended(std::size_t n) const {
    if (n <= nvars_) return *this;
    LaurentPoly p(n);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f.resize(n, 0);
      p.terms_.emplace_hint(p.terms_.end(), std::move(f), c);
    }
    return p;
  }

  /// Componentwise minimum exponent; zero vector for the zero polynomial.
  Exponent min_exponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first) {
        m = e;
        first = false;
        continue;
      }
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
  }

  /// Multiplies by the monomial x^by.
  LaurentPoly shifted(const Exponent& by) const {
    std::size_t n = std::max(nvars_, by.size());
    LaurentPoly src = extended(n);
    LaurentPoly p(n);
    for (const auto& [e, c] : src.terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < by.size(); ++i) f[i] += by[i];
      p.terms_.emplace_hint(p.terms_.end(), std::move(f), c);
    }
    return p;
  }

  /// Positive rational c such that this/c has coprime integer coefficients.
  BigRational content() const {
    if (terms_.empty()) return BigRational(1);
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
      mpz_class n = abs(c.numerator());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
      mpz_class d = c.denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return BigRational(g, l);
  }

  LaurentPoly scaled(const BigRational& s) const {
    if (s.is_zero()) return LaurentPoly(nvars_);
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) c *= s;
    return p;
  }

  LaurentPoly pow(unsigned e) const {
    LaurentPoly result = constant(BigRational(1), nvars_);
    LaurentPoly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  BigRational evaluate(std::span<const BigRational> at) const {
    if (at.size() < nvars_) throw Error(ErrorCode::MissingValue, "assignment shorter than universe");
    BigRational sum(0);
    for (const auto& [e, c] : terms_) {
      BigRational term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) term *= at[i].pow(e[i]);
      sum += term;
    }
    return sum;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, BigRational(1)); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, BigRational(-1)); }
  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return a.scaled(BigRational(-1)); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    std::size_t n = std::max(a.nvars_, b.nvars_);
    if (a.nvars_ != n) return a.extended(n) * b;
    if (b.nvars_ != n) return a * b.extended(n);
    LaurentPoly out(n);
    Exponent f(n);
    for (const auto& [e1, c1] : a.terms_) {
      for (const auto& [e2, c2] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) f[i] = e1[i] + e2[i];
        auto [it, inserted] = out.terms_.try_emplace(f, c1 * c2);
        if (!inserted) {
          it->second += c1 * c2;
          if (it->second.is_zero()) out.terms_.erase(it);
        }
      }
    }
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
    std::size_t n = std::max(a.nvars_, b.nvars_);
    return a.extended(n).terms_ == b.extended(n).terms_;
  }

 private:
  LaurentPoly& accumulate(const LaurentPoly& o, const BigRational& sign) {
    if (o.nvars_ > nvars_) *this = extended(o.nvars_);
    const LaurentPoly& src = o.nvars_ == nvars_ ? o : o.extended(nvars_);
    for (const auto& [e, c] : src.terms_) {
      auto [it, inserted] = terms_.try_emplace(e, c * sign);
      if (!inserted) {
        it->second += c * sign;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }
inline LaurentPoly poly_neg(const LaurentPoly& a) { return -a; }

/// p / q in the Laurent ring, or nullopt when q does not divide p there.
///
/// Both operands are first stripped of their monomial parts (units of the Laurent
/// ring); the remaining polynomials are divided with the lex-order division
/// algorithm. A single divisor leaves a zero remainder iff it divides.
inline std::optional<LaurentPoly> laurent_divide_exact(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "division by the zero polynomial");
  std::size_t n = std::max(p.nvars(), q.nvars());
  if (p.is_zero()) return LaurentPoly(n);

  LaurentPoly::Exponent pmin = p.extended(n).min_exponents();
  LaurentPoly::Exponent qmin = q.extended(n).min_exponents();
  LaurentPoly::Exponent neg_p(n), neg_q(n), net(n);
  for (std::size_t i = 0; i < n; ++i) {
    neg_p[i] = -pmin[i];
    neg_q[i] = -qmin[i];
    net[i] = pmin[i] - qmin[i];
  }
  LaurentPoly rem = p.extended(n).shifted(neg_p);
  const LaurentPoly divisor = q.extended(n).shifted(neg_q);
  if (divisor.is_monomial()) {
    const auto& [e, c] = divisor.leading_term();
    return rem.scaled(c.inverse()).shifted(net);
  }

  const auto& [lead_e, lead_c] = divisor.leading_term();
  const BigRational lead_inv = lead_c.inverse();
  LaurentPoly quotient(n);
  LaurentPoly::Exponent step(n);
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading_term();
    for (std::size_t i = 0; i < n; ++i) {
      step[i] = re[i] - lead_e[i];
      if (step[i] < 0) return std::nullopt;
    }
    LaurentPoly t = LaurentPoly::monomial(step, rc * lead_inv);
    quotient += t;
    rem -= t * divisor;
  }
  return quotient.shifted(net);
}

}  // namespace tysys
