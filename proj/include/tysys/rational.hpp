#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include "tysys/error.hpp"

namespace tysys {

/// Exact rational number backed by GMP. Always canonical: den > 0, gcd = 1.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  BigRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::InverseOfZero, "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit BigRational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q" or "p".
  static BigRational parse(std::string_view text) {
    mpq_class q;
    std::string s(text);
    if (s.empty() || q.set_str(s, 10) != 0) {
      throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    }
    if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    return BigRational(std::move(q));
  }

  const mpq_class& raw() const noexcept { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_one() const noexcept { return v_ == 1; }
  int sign() const noexcept { return sgn(v_); }

  /// Always "p/q", also for integers ("3/1").
  std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

  BigRational inverse() const {
    if (is_zero()) throw Error(ErrorCode::InverseOfZero, "inverse of 0");
    return BigRational(mpq_class(1) / v_);
  }

  /// Integer power, negative exponents allowed for nonzero values.
  BigRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return BigRational(n, d);
  }

  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.is_zero()) throw Error(ErrorCode::InverseOfZero, "division by 0");
    v_ /= o.v_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.v_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.v_; }

 private:
  mpq_class v_;
};

inline bool is_zero(const BigRational& r) { return r.is_zero(); }
inline BigRational inverse(const BigRational& r) { return r.inverse(); }
inline BigRational one_plus(const BigRational& r) { return r + BigRational(1); }
inline BigRational power(const BigRational& r, long e) { return r.pow(e); }

/// Deterministic 64-bit engine used everywhere randomness is needed.
using Rng = std::mt19937_64;

inline constexpr int kDefaultRandomBits = 8;

/// num uniform in [-2^bits, 2^bits] \ {0}, den uniform in [1, 2^bits], then reduced.
inline BigRational random_nonzero_rational(Rng& rng, int bits = kDefaultRandomBits) {
  const long bound = 1L << bits;
  std::uniform_int_distribution<long> num_dist(-bound, bound - 1);
  std::uniform_int_distribution<long> den_dist(1, bound);
  long num = num_dist(rng);
  if (num >= 0) ++num;  // shift [0, bound-1] to [1, bound]
  return BigRational(mpz_class(num), mpz_class(den_dist(rng)));
}

/// Strictly positive variant used for semifield assignments.
inline BigRational random_positive_rational(Rng& rng, int bits = kDefaultRandomBits) {
  const long bound = 1L << bits;
  std::uniform_int_distribution<long> dist(1, bound);
  long num = dist(rng);
  return BigRational(mpz_class(num), mpz_class(dist(rng)));
}

/// Independent sub-stream derived from a parent seed and a label.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace tysys
