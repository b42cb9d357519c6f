#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tysys/cartan.hpp"
#include "tysys/error.hpp"

namespace tysys {

/// Skew-symmetrizable integer matrix with an optional parity I = I+ ⊔ I-.
class ExchangeMatrix {
 public:
  /// Validates skew-symmetrizability and computes a primitive skew-symmetrizer.
  explicit ExchangeMatrix(IntMatrix b, std::optional<Parity> parity = std::nullopt)
      : b_(std::move(b)), parity_(std::move(parity)) {
    validate_shape();
    d_ = detail::propagate_symmetrizer(b_, -1, ErrorCode::NotSkewSymmetrizable);
  }

  /// Uses the given skew-symmetrizer instead of computing one; it must satisfy
  /// d_i B_ij == -d_j B_ji.
  ExchangeMatrix(IntMatrix b, std::vector<int> d, std::optional<Parity> parity)
      : b_(std::move(b)), d_(std::move(d)), parity_(std::move(parity)) {
    validate_shape();
    if (d_.size() != b_.size()) throw Error(ErrorCode::NotSkewSymmetrizable, "symmetrizer has wrong length");
    for (std::size_t i = 0; i < b_.size(); ++i) {
      if (d_[i] <= 0) throw Error(ErrorCode::NotSkewSymmetrizable, "symmetrizer entry is not positive");
      for (std::size_t j = 0; j < b_.size(); ++j)
        if (d_[i] * b_[i][j] != -d_[j] * b_[j][i])
          throw Error(ErrorCode::NotSkewSymmetrizable, "d does not skew-symmetrize B");
    }
  }

  int size() const noexcept { return static_cast<int>(b_.size()); }
  int operator()(int i, int j) const { return b_.at(i).at(j); }
  const IntMatrix& entries() const noexcept { return b_; }
  const std::vector<int>& skew_symmetrizer() const noexcept { return d_; }

  bool has_parity() const noexcept { return parity_.has_value(); }
  const Parity& parity() const {
    if (!parity_) throw Error(ErrorCode::NoParity, "exchange matrix has no parity assignment");
    return *parity_;
  }
  Sign parity(int i) const { return parity().at(i); }
  ExchangeMatrix with_parity(Parity p) const { return ExchangeMatrix(b_, d_, std::move(p)); }

  ExchangeMatrix negated() const {
    IntMatrix m = b_;
    for (auto& row : m)
      for (auto& v : row) v = -v;
    return ExchangeMatrix(std::move(m), d_, parity_);
  }

  /// Entrywise equality of B; symmetrizer and parity are not compared.
  friend bool operator==(const ExchangeMatrix& x, const ExchangeMatrix& y) { return x.b_ == y.b_; }

 private:
  void validate_shape() {
    detail::require_square(b_, ErrorCode::NotSkewSymmetrizable);
    const std::size_t n = b_.size();
    if (parity_ && parity_->size() != n) throw Error(ErrorCode::IndexOutOfRange, "parity has wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      if (b_[i][i] != 0) throw Error(ErrorCode::NotSkewSymmetrizable, "nonzero diagonal entry");
      for (std::size_t j = 0; j < n; ++j)
        if ((b_[i][j] == 0) != (b_[j][i] == 0) || (b_[i][j] != 0 && (b_[i][j] > 0) == (b_[j][i] > 0)))
          throw Error(ErrorCode::NotSkewSymmetrizable, "sign pattern is not skew");
    }
  }

  IntMatrix b_;
  std::vector<int> d_;
  std::optional<Parity> parity_;
};

inline void require_index(const ExchangeMatrix& e, int k) {
  if (k < 0 || k >= e.size())
    throw Error(ErrorCode::IndexOutOfRange, "mutation index " + std::to_string(k + 1) + " out of range");
}

/// B'_ij = -B_ij if k in {i, j}, else B_ij + (|B_ik| B_kj + B_ik |B_kj|) / 2.
inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& e, int k) {
  require_index(e, k);
  const int n = e.size();
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k)
        m[i][j] = -e(i, j);
      else
        m[i][j] = e(i, j) + (std::abs(e(i, k)) * e(k, j) + e(i, k) * std::abs(e(k, j))) / 2;
    }
  return ExchangeMatrix(std::move(m), e.skew_symmetrizer(),
                        e.has_parity() ? std::optional<Parity>(e.parity()) : std::nullopt);
}

/// Nodes of the parity class `s`, ascending.
inline std::vector<int> parity_class(const ExchangeMatrix& e, Sign s) {
  std::vector<int> out;
  for (int i = 0; i < e.size(); ++i)
    if (e.parity(i) == s) out.push_back(i);
  return out;
}

/// Composition of mu_i over the class `s` in the given order.
inline ExchangeMatrix mutate_class(const ExchangeMatrix& e, Sign s, bool reverse = false) {
  auto nodes = parity_class(e, s);
  if (reverse) std::reverse(nodes.begin(), nodes.end());
  ExchangeMatrix out = e;
  for (int k : nodes) out = mutate_matrix(out, k);
  return out;
}

/// Nonzero entries only between the two parity classes.
inline bool check_b1(const ExchangeMatrix& e) {
  for (int i = 0; i < e.size(); ++i)
    for (int j = 0; j < e.size(); ++j)
      if (e(i, j) != 0 && e.parity(i) == e.parity(j)) return false;
  return true;
}

/// mu_+(B) == mu_-(B) == -B.
inline bool check_b2(const ExchangeMatrix& e) {
  const ExchangeMatrix neg = e.negated();
  return mutate_class(e, Sign::Plus) == neg && mutate_class(e, Sign::Minus) == neg;
}

/// Bilinear form of the composed-mutation condition: for i, j in the same class,
/// the sum of B_ik B_kj over k with both factors positive equals the sum over k
/// with both negative.
inline bool check_bb(const ExchangeMatrix& e) {
  const int n = e.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (e.parity(i) != e.parity(j)) continue;
      long pos = 0, neg = 0;
      for (int k = 0; k < n; ++k) {
        const long p = static_cast<long>(e(i, k)) * e(k, j);
        if (e(i, k) > 0 && e(k, j) > 0) pos += p;
        if (e(i, k) < 0 && e(k, j) < 0) neg += p;
      }
      if (pos != neg) return false;
    }
  return true;
}

namespace detail {

inline void require_bipartite(const CartanMatrix& cm, const Parity& parity) {
  if (static_cast<int>(parity.size()) != cm.rank()) throw Error(ErrorCode::NotBipartite, "parity has wrong length");
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = 0; j < cm.rank(); ++j)
      if (cm.adjacent(i, j) && parity[i] == parity[j])
        throw Error(ErrorCode::NotBipartite, "nodes " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                                 " are adjacent and share a parity class");
}

inline Parity parity_or_bipartition(const CartanMatrix& cm, const std::optional<Parity>& parity) {
  if (parity) {
    require_bipartite(cm, *parity);
    return *parity;
  }
  auto p = bipartition(cm);
  if (!p) throw Error(ErrorCode::NotBipartite, "Cartan matrix has an odd cycle");
  return *p;
}

}  // namespace detail

/// B_ij = -C_ij on I+ x I-, C_ij on I- x I+, 0 otherwise. The parity defaults to
/// cartan::bipartition.
inline ExchangeMatrix b_of_c(const CartanMatrix& cm, const std::optional<Parity>& parity = std::nullopt) {
  const Parity p = detail::parity_or_bipartition(cm, parity);
  const int r = cm.rank();
  IntMatrix b(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      if (p[i] == Sign::Plus && p[j] == Sign::Minus) b[i][j] = -cm(i, j);
      if (p[i] == Sign::Minus && p[j] == Sign::Plus) b[i][j] = cm(i, j);
    }
  return ExchangeMatrix(std::move(b), cm.d(), p);
}

/// Node (i, i') of the square product is i * |I'| + i'.
inline int square_index(int i, int ip, int size2) { return i * size2 + ip; }

/// Square product B(C) □ B(C') on I x I' with (I x I')+ = (I+ x I'+) ⊔ (I- x I'-).
///
/// With B_xy > 0 read as an arrow x -> y, the arrows run around the square
///   (+-) -> (--) -> (-+) -> (++) -> (+-),
/// horizontal ones (I' index fixed) weighted by -C, vertical ones by -C'.
inline ExchangeMatrix square_product(const CartanMatrix& c1, const CartanMatrix& c2,
                                     const std::optional<Parity>& parity1 = std::nullopt,
                                     const std::optional<Parity>& parity2 = std::nullopt) {
  const Parity p1 = detail::parity_or_bipartition(c1, parity1);
  const Parity p2 = detail::parity_or_bipartition(c2, parity2);
  const int n1 = c1.rank(), n2 = c2.rank(), n = n1 * n2;
  auto kind = [&](int i, int ip) { return std::pair{p1[i], p2[ip]}; };
  const auto pp = std::pair{Sign::Plus, Sign::Plus}, pm = std::pair{Sign::Plus, Sign::Minus},
             mp = std::pair{Sign::Minus, Sign::Plus}, mm = std::pair{Sign::Minus, Sign::Minus};
  IntMatrix b(n, std::vector<int>(n, 0));
  std::vector<int> d(n);
  Parity parity(n);
  for (int i = 0; i < n1; ++i)
    for (int ip = 0; ip < n2; ++ip) {
      const int x = square_index(i, ip, n2);
      d[x] = c1.d(i) * c2.d(ip);
      parity[x] = p1[i] == p2[ip] ? Sign::Plus : Sign::Minus;
      for (int j = 0; j < n1; ++j)
        for (int jp = 0; jp < n2; ++jp) {
          const int y = square_index(j, jp, n2);
          const auto ki = kind(i, ip), kj = kind(j, jp);
          int v = 0;
          if (ip == jp && i != j) {
            if ((ki == mp && kj == pp) || (ki == pm && kj == mm)) v = -c1(i, j);
            if ((ki == pp && kj == mp) || (ki == mm && kj == pm)) v = c1(i, j);
          }
          if (i == j && ip != jp) {
            if ((ki == pp && kj == pm) || (ki == mm && kj == mp)) v = -c2(ip, jp);
            if ((ki == pm && kj == pp) || (ki == mp && kj == mm)) v = c2(ip, jp);
          }
          b[x][y] = v;
        }
    }
  return ExchangeMatrix(std::move(b), std::move(d), std::move(parity));
}

}  // namespace tysys
