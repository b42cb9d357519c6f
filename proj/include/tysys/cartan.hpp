#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tysys/error.hpp"
#include "tysys/rational.hpp"

namespace tysys {

using IntMatrix = std::vector<std::vector<int>>;

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// A parity assignment I = I+ ⊔ I-, one sign per node.
using Parity = std::vector<Sign>;

namespace detail {

inline void require_square(const IntMatrix& m, ErrorCode code) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw Error(code, "matrix is not square");
}

/// Positive integer vector d with d_i * m_ij == sign * d_j * m_ji for every pair,
/// primitive on each connected component. Ratios d_j/d_i are propagated along the
/// nonzero pattern by BFS; any inconsistency around a cycle raises `code`.
inline std::vector<int> propagate_symmetrizer(const IntMatrix& m, int sign, ErrorCode code) {
  const std::size_t n = m.size();
  std::vector<std::optional<BigRational>> ratio(n);
  std::vector<int> d(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (ratio[root]) continue;
    std::vector<std::size_t> component{root};
    ratio[root] = BigRational(1);
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      std::size_t i = todo.front();
      todo.pop();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || m[i][j] == 0) continue;
        // d_i m_ij = sign d_j m_ji  =>  d_j = d_i m_ij / (sign m_ji)
        BigRational dj = *ratio[i] * BigRational(m[i][j]) / BigRational(sign * m[j][i]);
        if (!ratio[j]) {
          if (dj.sign() <= 0) throw Error(code, "symmetrizer would be nonpositive");
          ratio[j] = dj;
          component.push_back(j);
          todo.push(j);
        } else if (*ratio[j] != dj) {
          throw Error(code, "inconsistent symmetrizer ratios around a cycle");
        }
      }
    }
    mpz_class lcm_den = 1;
    for (std::size_t i : component) {
      mpz_class den = ratio[i]->denominator();
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    }
    mpz_class g = 0;
    std::vector<mpz_class> scaled;
    for (std::size_t i : component) {
      mpz_class v = ratio[i]->numerator() * (lcm_den / ratio[i]->denominator());
      scaled.push_back(v);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    for (std::size_t c = 0; c < component.size(); ++c) {
      mpz_class v = scaled[c] / g;
      if (!v.fits_sint_p()) throw Error(code, "symmetrizer entry overflows int");
      d[component[c]] = static_cast<int>(v.get_si());
    }
  }
  return d;
}

}  // namespace detail

/// Symmetrizable generalized Cartan matrix with its minimal symmetrizer.
///
/// Immutable after construction. Nodes are 0-based internally; file formats and
/// reports use 1-based labels.
class CartanMatrix {
 public:
  /// Validates the generalized Cartan axioms and computes d, t and t_a.
  /// Throws NotGeneralizedCartan or NotSymmetrizable.
  explicit CartanMatrix(IntMatrix entries) : c_(std::move(entries)) {
    if (c_.empty()) throw Error(ErrorCode::NotGeneralizedCartan, "empty matrix");
    detail::require_square(c_, ErrorCode::NotGeneralizedCartan);
    const int r = rank();
    for (int i = 0; i < r; ++i) {
      if (c_[i][i] != 2) throw Error(ErrorCode::NotGeneralizedCartan, "diagonal entry is not 2");
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        if (c_[i][j] > 0) throw Error(ErrorCode::NotGeneralizedCartan, "positive off-diagonal entry");
        if ((c_[i][j] == 0) != (c_[j][i] == 0))
          throw Error(ErrorCode::NotGeneralizedCartan, "zero pattern is not symmetric");
      }
    }
    d_ = detail::propagate_symmetrizer(c_, 1, ErrorCode::NotSymmetrizable);
    t_ = 1;
    for (int v : d_) t_ = std::lcm(t_, v);
    for (int v : d_) t_a_.push_back(t_ / v);
  }

  int rank() const noexcept { return static_cast<int>(c_.size()); }
  int operator()(int i, int j) const { return c_.at(i).at(j); }
  const IntMatrix& entries() const noexcept { return c_; }
  const std::vector<int>& d() const noexcept { return d_; }
  int d(int a) const { return d_.at(a); }
  int t() const noexcept { return t_; }
  const std::vector<int>& t_a() const noexcept { return t_a_; }
  int t_a(int a) const { return t_a_.at(a); }
  int max_d() const { return *std::max_element(d_.begin(), d_.end()); }

  /// a ~ b iff C_ab < 0.
  bool adjacent(int a, int b) const { return a != b && c_.at(a).at(b) < 0; }
  std::vector<int> neighbors(int a) const {
    std::vector<int> out;
    for (int b = 0; b < rank(); ++b)
      if (adjacent(a, b)) out.push_back(b);
    return out;
  }

  bool is_connected() const {
    std::vector<bool> seen(rank(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : neighbors(a)) {
        if (seen[b]) continue;
        seen[b] = true;
        stack.push_back(b);
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
  }

  friend bool operator==(const CartanMatrix& a, const CartanMatrix& b) { return a.c_ == b.c_; }

 private:
  IntMatrix c_;
  std::vector<int> d_;
  int t_ = 1;
  std::vector<int> t_a_;
};

inline CartanMatrix new_cartan(IntMatrix entries) { return CartanMatrix(std::move(entries)); }

/// C_ij < -1 forces d_i = -C_ji = 1.
inline bool is_tamely_laced(const CartanMatrix& cm) {
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = 0; j < cm.rank(); ++j)
      if (i != j && cm(i, j) < -1 && !(cm.d(i) == 1 && cm(j, i) == -1)) return false;
  return true;
}

inline bool is_simply_laced(const CartanMatrix& cm) {
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = 0; j < cm.rank(); ++j)
      if (i != j && cm(i, j) != 0 && cm(i, j) != -1) return false;
  return true;
}

inline void require_tamely_laced(const CartanMatrix& cm) {
  if (!is_tamely_laced(cm)) throw Error(ErrorCode::NotTamelyLaced, "Cartan matrix is not tamely laced");
}

/// Two-coloring of the adjacency graph, or nullopt if an odd cycle exists.
/// The lowest-index node of each component is placed in I+.
inline std::optional<Parity> bipartition(const CartanMatrix& cm) {
  const int r = cm.rank();
  std::vector<std::optional<Sign>> color(r);
  for (int root = 0; root < r; ++root) {
    if (color[root]) continue;
    color[root] = Sign::Plus;
    std::queue<int> todo;
    todo.push(root);
    while (!todo.empty()) {
      int a = todo.front();
      todo.pop();
      for (int b : cm.neighbors(a)) {
        if (!color[b]) {
          color[b] = flip(*color[a]);
          todo.push(b);
        } else if (*color[b] == *color[a]) {
          return std::nullopt;
        }
      }
    }
  }
  Parity p;
  for (const auto& c : color) p.push_back(*c);
  return p;
}

/// Result of doubling: node a of C maps to plus[a] and minus[a] of the double.
struct BipartiteDouble {
  CartanMatrix matrix;
  std::vector<int> plus;
  std::vector<int> minus;
  Parity parity;
};

/// Bipartite double of a simply laced, nonbipartite, connected C. Node a becomes
/// a+ = a and a- = r + a; off-diagonal entries C_ij (i != j) are placed on the
/// (i+, j-) and (i-, j+) positions only.
inline BipartiteDouble bipartite_double(const CartanMatrix& cm) {
  if (!is_simply_laced(cm)) throw Error(ErrorCode::NotSimplyLaced, "bipartite double needs simply laced C");
  if (bipartition(cm)) throw Error(ErrorCode::AlreadyBipartite, "C is already bipartite");
  if (!cm.is_connected()) throw Error(ErrorCode::Disconnected, "C is decomposable");
  const int r = cm.rank();
  IntMatrix m(2 * r, std::vector<int>(2 * r, 0));
  std::vector<int> plus(r), minus(r);
  for (int i = 0; i < r; ++i) {
    plus[i] = i;
    minus[i] = r + i;
  }
  for (int a = 0; a < 2 * r; ++a) m[a][a] = 2;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j) {
        m[plus[i]][minus[j]] = cm(i, j);
        m[minus[i]][plus[j]] = cm(i, j);
      }
  Parity parity(2 * r, Sign::Minus);
  for (int i = 0; i < r; ++i) parity[plus[i]] = Sign::Plus;
  return BipartiteDouble{CartanMatrix(std::move(m)), std::move(plus), std::move(minus), std::move(parity)};
}

/// Cartan matrix of type A_n (n >= 1).
inline CartanMatrix cartan_type_a(int n) {
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 2;
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
  }
  return CartanMatrix(std::move(m));
}

}  // namespace tysys
