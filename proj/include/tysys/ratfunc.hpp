#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "tysys/error.hpp"
#include "tysys/laurent.hpp"
#include "tysys/rational.hpp"

namespace tysys {

namespace detail {

/// Removes whole-polynomial common factors cheaply: if one side divides the
/// other exactly the quotient replaces it. `accept` filters admissible quotients.
template <class Accept>
void cancel_by_division(LaurentPoly& num, LaurentPoly& den, Accept accept) {
  if (den.is_monomial() || num.is_zero()) return;
  if (auto q = laurent_divide_exact(num, den); q && accept(*q)) {
    num = std::move(*q);
    den = LaurentPoly::constant(BigRational(1), num.nvars());
    return;
  }
  if (num.is_monomial()) return;
  if (auto q = laurent_divide_exact(den, num); q && accept(*q)) {
    den = std::move(*q);
    num = LaurentPoly::constant(BigRational(1), den.nvars());
  }
}

}  // namespace detail

/// Quotient of two Laurent polynomials.
///
/// Reduction is deliberately partial: the denominator is stripped of its monomial
/// part and integer content (leading coefficient positive), and a denominator that
/// divides the numerator exactly is absorbed. No multivariate gcd is computed, so
/// equality is decided by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(LaurentPoly::constant(BigRational(1))) {}
  RationalFunction(int c)  // NOLINT(google-explicit-constructor)
      : num_(LaurentPoly::constant(BigRational(c))), den_(LaurentPoly::constant(BigRational(1))) {}
  RationalFunction(const BigRational& c)  // NOLINT(google-explicit-constructor)
      : num_(LaurentPoly::constant(c)), den_(LaurentPoly::constant(BigRational(1))) {}
  RationalFunction(LaurentPoly num)  // NOLINT(google-explicit-constructor)
      : num_(std::move(num)), den_(LaurentPoly::constant(BigRational(1), num_.nvars())) {
    normalize();
  }
  RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RationalFunction generator(std::size_t index, std::size_t nvars) {
    return RationalFunction(LaurentPoly::generator(index, nvars));
  }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  std::size_t nvars() const noexcept { return std::max(num_.nvars(), den_.nvars()); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the value lies in the Laurent ring of the generators.
  bool is_laurent() const { return laurent_divide_exact(num_, den_).has_value(); }

  RationalFunction inverse() const {
    if (is_zero()) throw Error(ErrorCode::InverseOfZero, "inverse of the zero rational function");
    return RationalFunction(den_, num_);
  }

  RationalFunction pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RationalFunction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  }

  BigRational evaluate(std::span<const BigRational> at) const {
    BigRational d = den_.evaluate(at);
    if (d.is_zero()) throw Error(ErrorCode::EvalDivisionByZero, "denominator vanishes at assignment");
    return num_.evaluate(at) / d;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    return RationalFunction(-a.num_, a.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    // cross-cancel before multiplying
    LaurentPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    auto any = [](const LaurentPoly&) { return true; };
    detail::cancel_by_division(an, bd, any);
    detail::cancel_by_division(bn, ad, any);
    return RationalFunction(an * bn, ad * bd);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.inverse();
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  /// Exact equality: a.num * b.den == b.num * a.den.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::InverseOfZero, "zero denominator");
    std::size_t n = std::max(num_.nvars(), den_.nvars());
    num_ = num_.extended(n);
    den_ = den_.extended(n);
    if (num_.is_zero()) {
      den_ = LaurentPoly::constant(BigRational(1), n);
      return;
    }
    LaurentPoly::Exponent m = den_.min_exponents();
    for (auto& v : m) v = -v;
    den_ = den_.shifted(m);
    num_ = num_.shifted(m);
    detail::cancel_by_division(num_, den_, [](const LaurentPoly&) { return true; });
    if (!den_.is_monomial()) {
      m = den_.min_exponents();
      for (auto& v : m) v = -v;
      den_ = den_.shifted(m);
      num_ = num_.shifted(m);
    }
    BigRational c = den_.content();
    if (den_.leading_term().second.sign() < 0) c = -c;
    if (den_.is_monomial()) c = den_.leading_term().second;
    if (!c.is_one()) {
      BigRational inv = c.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }
inline RationalFunction inverse(const RationalFunction& f) { return f.inverse(); }
inline RationalFunction one_plus(const RationalFunction& f) { return RationalFunction(1) + f; }
inline RationalFunction power(const RationalFunction& f, long e) { return f.pow(e); }

inline RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) { return a + b; }
inline RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) { return a * b; }
inline RationalFunction rf_inv(const RationalFunction& a) { return a.inverse(); }
inline bool eq_exact(const RationalFunction& a, const RationalFunction& b) { return a == b; }
inline BigRational evaluate(const RationalFunction& f, std::span<const BigRational> at) {
  return f.evaluate(at);
}
inline BigRational evaluate(const BigRational& v, std::span<const BigRational>) { return v; }

}  // namespace tysys
