#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "tysys/error.hpp"
#include "tysys/laurent.hpp"
#include "tysys/rational.hpp"

namespace tysys {

/// Element of the universal semifield: a ratio of two polynomials with strictly
/// positive coefficients and nonnegative exponents. There is no subtraction; every
/// operation builds its result from sums and products of positive polynomials, so
/// positivity holds by construction and is re-asserted on every construction.
class SemifieldElement {
 public:
  SemifieldElement() : num_(LaurentPoly::constant(BigRational(1))), den_(num_) {}
  SemifieldElement(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }
  /// Positive integer constant; throws NotPositive otherwise.
  explicit SemifieldElement(int c)
      : SemifieldElement(LaurentPoly::constant(BigRational(c)), LaurentPoly::constant(BigRational(1))) {}

  static SemifieldElement one(std::size_t nvars = 0) {
    return SemifieldElement(LaurentPoly::constant(BigRational(1), nvars),
                            LaurentPoly::constant(BigRational(1), nvars));
  }
  static SemifieldElement generator(std::size_t index, std::size_t nvars) {
    return SemifieldElement(LaurentPoly::generator(index, nvars),
                            LaurentPoly::constant(BigRational(1), nvars));
  }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  std::size_t nvars() const noexcept { return std::max(num_.nvars(), den_.nvars()); }

  SemifieldElement inverse() const { return SemifieldElement(den_, num_); }
  /// 1 + e = (den + num) / den.
  SemifieldElement one_plus() const { return SemifieldElement(den_ + num_, den_); }

  SemifieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    SemifieldElement r = one(nvars());
    for (long i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  BigRational evaluate(std::span<const BigRational> at) const {
    BigRational d = den_.evaluate(at);
    if (d.is_zero()) throw Error(ErrorCode::EvalDivisionByZero, "denominator vanishes at assignment");
    return num_.evaluate(at) / d;
  }

  friend SemifieldElement operator+(const SemifieldElement& a, const SemifieldElement& b) {
    if (a.den_ == b.den_) return SemifieldElement(a.num_ + b.num_, a.den_);
    return SemifieldElement(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend SemifieldElement operator*(const SemifieldElement& a, const SemifieldElement& b) {
    LaurentPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    cancel(an, bd);
    cancel(bn, ad);
    return SemifieldElement(an * bn, ad * bd);
  }
  friend SemifieldElement operator/(const SemifieldElement& a, const SemifieldElement& b) {
    return a * b.inverse();
  }

  /// Exact equality by cross-multiplication.
  friend bool operator==(const SemifieldElement& a, const SemifieldElement& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  static bool admissible(const LaurentPoly& p) {
    return !p.is_zero() && p.all_coefficients_positive() && p.has_nonnegative_exponents();
  }

  static void cancel(LaurentPoly& num, LaurentPoly& den) {
    if (den.is_constant() || num.is_constant()) return;
    if (auto q = laurent_divide_exact(num, den); q && admissible(*q)) {
      num = std::move(*q);
      den = LaurentPoly::constant(BigRational(1), num.nvars());
      return;
    }
    if (auto q = laurent_divide_exact(den, num); q && admissible(*q)) {
      den = std::move(*q);
      num = LaurentPoly::constant(BigRational(1), den.nvars());
    }
  }

  void normalize() {
    if (!admissible(num_) || !admissible(den_)) {
      throw Error(ErrorCode::NotPositive,
                  "semifield element needs nonzero polynomials with positive coefficients");
    }
    std::size_t n = std::max(num_.nvars(), den_.nvars());
    num_ = num_.extended(n);
    den_ = den_.extended(n);
    LaurentPoly::Exponent a = num_.min_exponents(), b = den_.min_exponents();
    bool shift = false;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = -std::min(a[i], b[i]);
      shift = shift || a[i] != 0;
    }
    if (shift) {
      num_ = num_.shifted(a);
      den_ = den_.shifted(a);
    }
    cancel(num_, den_);
    BigRational c = den_.content();
    if (!c.is_one()) {
      BigRational inv = c.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline SemifieldElement inverse(const SemifieldElement& e) { return e.inverse(); }
inline SemifieldElement one_plus(const SemifieldElement& e) { return e.one_plus(); }
inline SemifieldElement power(const SemifieldElement& e, long k) { return e.pow(k); }
inline bool is_zero(const SemifieldElement&) { return false; }

inline SemifieldElement sf_add(const SemifieldElement& a, const SemifieldElement& b) { return a + b; }
inline SemifieldElement sf_mul(const SemifieldElement& a, const SemifieldElement& b) { return a * b; }
inline SemifieldElement sf_inv(const SemifieldElement& a) { return a.inverse(); }
inline SemifieldElement sf_one_plus(const SemifieldElement& a) { return a.one_plus(); }
inline bool eq_exact(const SemifieldElement& a, const SemifieldElement& b) { return a == b; }
inline BigRational evaluate(const SemifieldElement& e, std::span<const BigRational> at) {
  return e.evaluate(at);
}

}  // namespace tysys
