#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tysys/cartan.hpp"
#include "tysys/cluster.hpp"
#include "tysys/exchange.hpp"
#include "tysys/tsystem.hpp"
#include "tysys/ysystem.hpp"

namespace tysys::acceptance {

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no limit
  std::string detail;
};

// ---- fixtures ------------------------------------------------------------

inline CartanMatrix example44() { return CartanMatrix({{2, -1, 0, 0}, {-3, 2, -2, -2}, {0, -1, 2, -1}, {0, -1, -1, 2}}); }
inline CartanMatrix b2_like() { return CartanMatrix({{2, -1}, {-2, 2}}); }
inline CartanMatrix g2_like() { return CartanMatrix({{2, -1}, {-3, 2}}); }
inline CartanMatrix affine_a1() { return CartanMatrix({{2, -2}, {-2, 2}}); }
inline CartanMatrix triangle() { return CartanMatrix({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}); }

/// Finite-type Cartan matrices of rank <= 4, C_ij = 2(a_i, a_j)/(a_i, a_i).
inline std::vector<std::pair<std::string, IntMatrix>> finite_types_rank_le_4() {
  return {
      {"A1", {{2}}},
      {"A2", {{2, -1}, {-1, 2}}},
      {"A3", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}},
      {"A4", {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}},
      {"B2", {{2, -1}, {-2, 2}}},
      {"B3", {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}},
      {"B4", {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -2, 2}}},
      {"C2", {{2, -2}, {-1, 2}}},
      {"C3", {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}},
      {"C4", {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -2}, {0, 0, -1, 2}}},
      {"D4", {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}},
      {"F4", {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}},
      {"G2", {{2, -1}, {-3, 2}}},
  };
}

/// The 7-node exchange matrix with I+ = {2, 3} (1-based).
inline ExchangeMatrix example7() {
  IntMatrix b(7, std::vector<int>(7, 0));
  auto arrow = [&](int i, int j, int v) {
    b[i - 1][j - 1] = v;
    b[j - 1][i - 1] = -v;
  };
  arrow(2, 1, 2);
  arrow(1, 3, 2);
  for (int j : {4, 5, 6, 7}) arrow(3, j, 1);
  for (int j : {4, 5, 6, 7}) arrow(j, 2, 1);
  Parity p(7, Sign::Minus);
  p[1] = p[2] = Sign::Plus;
  return ExchangeMatrix(std::move(b), std::move(p));
}

inline std::map<LatticeVar, int> as_map(const FactorList& f) {
  std::map<LatticeVar, int> out;
  for (const auto& x : f) out[x.var] += x.exponent;
  return out;
}

/// Random nonzero values for one node on levels 1..levels and slices in `w`.
inline ValueTable<BigRational> random_table(Rng& rng, int levels, const Window& w, int node = 0) {
  ValueTable<BigRational> t;
  for (int m = 1; m <= levels; ++m)
    for (int k = w.lo; k <= w.hi; ++k) t.set({node, m, k}, random_nonzero_rational(rng));
  return t;
}

/// Random skew-symmetrizable matrix satisfying the parity condition on
/// nonzero entries: B_ij = c d_j / g, B_ji = -c d_i / g with g = gcd(d_i, d_j).
inline ExchangeMatrix random_parity_matrix(Rng& rng, int n) {
  std::uniform_int_distribution<int> dd(1, 3), cc(-2, 2), coin(0, 1);
  std::vector<int> d(n);
  Parity p(n);
  for (int i = 0; i < n; ++i) {
    d[i] = dd(rng);
    p[i] = coin(rng) ? Sign::Plus : Sign::Minus;
  }
  IntMatrix b(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (p[i] == p[j]) continue;
      const int c = cc(rng), g = std::gcd(d[i], d[j]);
      b[i][j] = c * d[j] / g;
      b[j][i] = -c * d[i] / g;
    }
  return ExchangeMatrix(std::move(b), std::move(d), std::move(p));
}

/// B(C) of a random bipartite symmetrizable C (a random forest with edge
/// weights compatible with a random symmetrizer); satisfies both conditions.
inline ExchangeMatrix random_bipartite_b_of_c(Rng& rng, int n) {
  std::uniform_int_distribution<int> dd(1, 3), coin(0, 2);
  std::vector<int> d(n);
  for (auto& x : d) x = dd(rng);
  IntMatrix c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  for (int j = 1; j < n; ++j) {
    if (coin(rng) == 0) continue;
    const int i = std::uniform_int_distribution<int>(0, j - 1)(rng);
    const int l = std::lcm(d[i], d[j]);
    // d_i C_ij = d_j C_ji = -lcm(d_i, d_j)
    c[i][j] = -l / d[i];
    c[j][i] = -l / d[j];
  }
  return b_of_c(CartanMatrix(std::move(c)));
}

// ---- criteria --------------------------------------------------------------

inline std::pair<bool, std::string> criterion1() {
  std::ostringstream out;
  bool ok = true;
  const CartanMatrix c = example44();
  const bool ex = c.d() == std::vector<int>{3, 1, 2, 2} && c.t() == 6 && is_tamely_laced(c);
  out << "example d=(" << c.d(0) << "," << c.d(1) << "," << c.d(2) << "," << c.d(3) << ") t=" << c.t()
      << " tamely=" << is_tamely_laced(c);
  ok = ok && ex;
  const bool affine_rejected = !is_tamely_laced(affine_a1());
  out << "; A1^(1) rejected=" << affine_rejected;
  ok = ok && affine_rejected;
  int finite_ok = 0;
  const auto finite = finite_types_rank_le_4();
  for (const auto& [name, m] : finite) {
    if (is_tamely_laced(CartanMatrix(m)))
      ++finite_ok;
    else
      out << "; " << name << " NOT tamely laced";
  }
  out << "; finite types tamely laced " << finite_ok << "/" << finite.size();
  ok = ok && finite_ok == static_cast<int>(finite.size());
  return {ok, out.str()};
}

inline std::pair<bool, std::string> criterion2() {
  const std::vector<std::pair<std::string, CartanMatrix>> ms = {
      {"example44", example44()}, {"B2-like", b2_like()}, {"G2-like", g2_like()}, {"A3", cartan_type_a(3)}};
  int compared = 0, mismatches = 0;
  for (const auto& [name, cm] : ms)
    for (int a = 0; a < cm.rank(); ++a)
      for (int m = 1; m <= 6; ++m)
        for (int k = 0; k < 20; ++k) {
          const auto direct = as_map(m_term(cm, a, m, k));
          ++compared;
          if (direct != as_map(m_term_unified(cm, a, m, k)) || direct != g_exponents(cm, a, m, k)) ++mismatches;
        }
  return {mismatches == 0, std::to_string(compared) + " M-terms compared, " + std::to_string(mismatches) + " mismatches"};
}

inline std::pair<bool, std::string> criterion3(Rng& rng) {
  std::ostringstream out;
  bool ok = true;
  for (int p = 1; p <= 3; ++p) {
    // level p*(m+1) <= 2p restricts to m = 1; slices cover u - 2p .. u + 2p
    const Window centres{0, 29};
    const auto values = random_table(rng, 2 * p, {centres.lo - 2 * p, centres.hi + 2 * p});
    const auto r = identity_check_1(p, centres, values);
    out << "id1 p=" << p << ": " << r.centers - r.failures << "/" << r.centers << "; ";
    ok = ok && r.centers >= 30 && r.failures == 0;
  }
  for (int d = 1; d <= 3; ++d) {
    const Window centres{0, 29};
    // m ranges over 1..d*top - 1 for levels 1..top; keep one level-m block
    const auto values = random_table(rng, 2, {centres.lo - 2 * d - 1, centres.hi + 2 * d + 1});
    const auto r = identity_check_2(d, centres, values);
    out << "id2 d=" << d << ": " << r.centers - r.failures << "/" << r.centers << "; ";
    ok = ok && r.centers >= 30 && r.failures == 0;
  }
  return {ok, out.str()};
}

inline std::pair<bool, std::string> criterion4(Rng& rng) {
  struct Case {
    std::string name;
    CartanMatrix cm;
    int ell;
  };
  const std::vector<Case> cases = {{"A2", cartan_type_a(2), 2}, {"A2", cartan_type_a(2), 3}, {"A3", cartan_type_a(3), 2},
                                   {"A3", cartan_type_a(3), 3}, {"B2-like", b2_like(), 2}};
  std::ostringstream out;
  bool ok = true;
  for (const auto& c : cases) {
    const SystemLevel level = SystemLevel::restricted(c.ell);
    const Window window{0, 39};
    const auto t = propagate_t(c.cm, level, window, {}, rng);
    const auto tc = check_t_solution(t, enumerate_relations(c.cm, level, window));
    const auto image = t_to_y(c.cm, level, t);
    const auto yw = complete_window(image.y, c.cm, level);
    CheckReport<BigRational> yc;
    if (yw) yc = check_y_solution(image.y, enumerate_y_relations(c.cm, level, *yw));
    const bool pass = tc.pass() && yw && yc.checked > 0 && yc.pass() && image.pass() &&
                      image.one_plus_y.checked > 0 && image.boundary.centers > 0;
    out << c.name << " l=" << c.ell << ": Y-relations " << yc.checked - yc.violations.size() << "/" << yc.checked
        << ", 1+Y " << image.one_plus_y.checked - image.one_plus_y.violations.size() << "/" << image.one_plus_y.checked
        << ", 1+1/Y " << image.one_plus_y_inv.checked - image.one_plus_y_inv.violations.size() << "/"
        << image.one_plus_y_inv.checked << ", boundary " << image.boundary.centers - image.boundary.failures << "/"
        << image.boundary.centers << (pass ? "" : " FAIL") << "; ";
    ok = ok && pass;
  }
  return {ok, out.str()};
}

/// Window, m-cap and output level used for the reconstruction roundtrip.
inline constexpr int kRoundtripSlices = 16;
inline constexpr int kRoundtripCap = 6;
inline constexpr int kRoundtripLevel = 3;

inline std::pair<bool, std::string> criterion5(Rng& rng) {
  const std::vector<std::pair<std::string, CartanMatrix>> ms = {
      {"A3", cartan_type_a(3)}, {"B2-like", b2_like()}, {"example44", example44()}};
  std::ostringstream out;
  bool ok = true;
  for (const auto& [name, cm] : ms) {
    const SystemLevel cap = SystemLevel::unrestricted(kRoundtripCap);
    const Window window{0, kRoundtripSlices - 1};
    const auto y = propagate_y(cm, cap, window, {}, rng);
    const auto yc = check_y_solution(y, enumerate_y_relations(cm, cap, window));
    YToTOptions opt;
    opt.max_level = kRoundtripLevel;
    const auto r1 = y_to_t(cm, y, rng, opt);
    const auto r2 = y_to_t(cm, y, rng, opt);
    const auto rt1 = check_roundtrip(cm, y, r1.t);
    const auto rt2 = check_roundtrip(cm, y, r2.t);
    const auto tc = check_t_solution(r1.t, enumerate_relations(cm, SystemLevel::unrestricted(r1.max_level), r1.interior));
    const bool distinct = !(r1.t == r2.t);
    const auto i1 = t_to_y(cm, SystemLevel::unrestricted(kRoundtripLevel), r1.t).y;
    const auto i2 = t_to_y(cm, SystemLevel::unrestricted(kRoundtripLevel), r2.t).y;
    const bool same_image = i1 == i2 && !i1.empty();
    std::string groups;
    for (const auto& g : r1.groups) {
      groups += "{";
      for (std::size_t i = 0; i < g.size(); ++i) groups += (i ? "," : "") + std::to_string(g[i] + 1);
      groups += "}";
    }
    // nodes are solved in groups of equal d, ascending
    bool groups_ok = true;
    int prev = 0;
    std::size_t covered = 0;
    for (const auto& g : r1.groups) {
      covered += g.size();
      for (int a : g) groups_ok = groups_ok && cm.d(a) == cm.d(g.front()) && cm.d(a) > prev;
      if (!g.empty()) prev = cm.d(g.front());
    }
    groups_ok = groups_ok && covered == static_cast<std::size_t>(cm.rank());
    const bool pass = yc.pass() && rt1.pass() && rt2.pass() && tc.pass() && tc.checked > 0 && distinct &&
                      same_image && groups_ok;
    out << name << ": interior [" << r1.interior.lo << "," << r1.interior.hi << "] levels<=" << r1.max_level
        << " groups " << groups << ", roundtrip " << rt1.mismatches.checked - rt1.mismatches.violations.size() << "/"
        << rt1.mismatches.checked << ", T-relations " << tc.checked - tc.violations.size() << "/" << tc.checked
        << ", distinct T " << distinct << ", same image " << same_image << (pass ? "" : " FAIL") << "; ";
    ok = ok && pass;
  }
  return {ok, out.str()};
}

inline std::pair<bool, std::string> criterion6() {
  const std::vector<std::pair<std::string, CartanMatrix>> ms = {
      {"example44", example44()}, {"B2-like", b2_like()}, {"G2-like", g2_like()}, {"A3", cartan_type_a(3)}};
  const SystemLevel level = SystemLevel::unrestricted(1000);
  int compared = 0, mismatches = 0;
  for (const auto& [name, cm] : ms)
    for (int a = 0; a < cm.rank(); ++a)
      for (int m = 1; m <= 6; ++m)
        for (int k = 0; k < 20; ++k) {
          ++compared;
          if (!(y_relation_via_transpose(cm, a, m, k) == y_relation(cm, a, m, k, level))) ++mismatches;
        }
  bool counts = true;
  for (int p = 1; p <= 4; ++p) counts = counts && static_cast<int>(z_term_raw(0, p, 3, 0).size()) == p * p;
  return {mismatches == 0 && counts, std::to_string(compared) + " Y-relations compared, " + std::to_string(mismatches) +
                                         " mismatches; Z-term factor counts p^2 for p<=4: " + (counts ? "yes" : "no")};
}

inline std::pair<bool, std::string> criterion7(Rng& rng) {
  std::ostringstream out;
  bool ok = true;
  int involutions = 0, bad_involutions = 0;
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const ExchangeMatrix e = random_parity_matrix(rng, size(rng));
    for (int k = 0; k < e.size(); ++k) {
      ++involutions;
      const ExchangeMatrix once = mutate_matrix(e, k);
      if (!(mutate_matrix(once, k) == e) || once.skew_symmetrizer() != e.skew_symmetrizer()) ++bad_involutions;
    }
  }
  int seed_involutions = 0, bad_seed = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const ExchangeMatrix e = random_parity_matrix(rng, 3);
    const Seed s = initial_seed(e);
    for (int k = 0; k < e.size(); ++k) {
      ++seed_involutions;
      if (!(mutate_seed(mutate_seed(s, k), k) == s)) ++bad_seed;
    }
  }
  int orders = 0, bad_orders = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const ExchangeMatrix e = random_parity_matrix(rng, size(rng));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      ++orders;
      if (!(mutate_class(e, s) == mutate_class(e, s, true))) ++bad_orders;
    }
  }
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const Seed seed = initial_seed(b_of_c(cartan_type_a(3)));
    ++orders;
    if (!(mutate_seed_class(seed, s) == mutate_seed_class(seed, s, true))) ++bad_orders;
  }
  out << "matrix involutions " << involutions - bad_involutions << "/" << involutions << ", seed involutions "
      << seed_involutions - bad_seed << "/" << seed_involutions << ", order independence " << orders - bad_orders
      << "/" << orders;
  ok = ok && bad_involutions == 0 && bad_seed == 0 && bad_orders == 0;

  const ExchangeMatrix e7 = example7();
  const bool ex7 = check_b1(e7) && check_b2(e7) && check_bb(e7);
  out << "; 7-node example b1/b2/bb " << (ex7 ? "true" : "false");
  ok = ok && ex7;

  int agree = 0, both_true = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ExchangeMatrix e = trial % 2 ? random_parity_matrix(rng, size(rng)) : random_bipartite_b_of_c(rng, size(rng));
    const bool b2 = check_b2(e), bb = check_bb(e);
    if (b2 == bb) ++agree;
    if (b2 && bb) ++both_true;
  }
  out << "; b2 == bb on " << agree << "/100 (" << both_true << " satisfy both)";
  ok = ok && agree == 100 && both_true > 0 && both_true < 100;
  return {ok, out.str()};
}

inline std::pair<bool, std::string> criterion8() {
  const CartanMatrix a2 = cartan_type_a(2), a3 = cartan_type_a(3);
  const std::vector<std::pair<std::string, ExchangeMatrix>> es = {
      {"B(A2)", b_of_c(a2)}, {"B(A3)", b_of_c(a3)}, {"B(A2)xB(A2)", square_product(a2, a2)}};
  std::ostringstream out;
  bool ok = true;
  for (const auto& [name, e] : es) {
    const auto seq = run_sequence(e, -6, 6);
    const auto par = check_parity_lemmas(seq, e);
    const auto tb = check_tb(seq, e);
    const auto yp = check_yb(seq, e, Sign::Plus);
    const auto ym = check_yb(seq, e, Sign::Minus);
    const auto typ = t_to_y_b(seq.x, e, Sign::Plus, seq.lo, seq.hi);
    const auto tym = t_to_y_b(seq.x, e, Sign::Minus, seq.lo, seq.hi);
    const auto lc = laurent_check(seq);
    const bool pass = par.pass() && tb.pass() && tb.checked > 0 && yp.pass() && yp.checked > 0 && ym.pass() &&
                      ym.checked > 0 && typ.pass() && tym.pass() && lc.pass();
    out << name << ": parity " << par.pass() << ", T(B) " << tb.checked - tb.violations.size() << "/" << tb.checked
        << ", Y+ " << yp.checked - yp.violations.size() << "/" << yp.checked << ", Y- "
        << ym.checked - ym.violations.size() << "/" << ym.checked << ", T->Y(+/-) " << typ.pass() << tym.pass()
        << ", Laurent " << lc.checked - lc.failures.size() << "/" << lc.checked << (pass ? "" : " FAIL") << "; ";
    ok = ok && pass;
  }
  return {ok, out.str()};
}

inline std::pair<bool, std::string> criterion9() {
  const std::vector<std::tuple<std::string, CartanMatrix, int>> cases = {
      {"A3", cartan_type_a(3), 2}, {"A2", cartan_type_a(2), 3}, {"triangle", triangle(), 2}};
  std::ostringstream out;
  bool ok = true;
  for (const auto& [name, cm, ell] : cases) {
    const auto r = correspondence_check(cm, ell);
    out << name << " l=" << ell << (r.via_double ? " (doubled)" : "") << ": T " << r.t_relations << ", Y "
        << r.y_relations << ", values " << r.values << ", failures " << r.failures.size() << "; ";
    ok = ok && r.pass();
  }
  return {ok, out.str()};
}

inline std::pair<bool, std::string> criterion10(Rng& rng) {
  const auto scan = period_scan(cartan_type_a(2), 2, 10, rng);
  if (!scan.period) return {false, "no period <= 10 slices"};
  return {true, "period " + std::to_string(*scan.period) + " slices"};
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<std::pair<bool, std::string>(Rng&)> run;
};

inline std::vector<Criterion> criteria() {
  return {
      {1, "Cartan classification", 1.0, [](Rng&) { return criterion1(); }},
      {2, "unified M-term equivalence", 5.0, [](Rng&) { return criterion2(); }},
      {3, "telescoping identities", 0.0, criterion3},
      {4, "T to Y on restricted systems", 30.0, criterion4},
      {5, "Y to T roundtrip", 60.0, criterion5},
      {6, "transposed-exponent Y-system", 0.0, [](Rng&) { return criterion6(); }},
      {7, "cluster engine", 30.0, criterion7},
      {8, "bipartite belt lemmas", 120.0, [](Rng&) { return criterion8(); }},
      {9, "correspondence", 0.0, [](Rng&) { return criterion9(); }},
      {10, "periodicity smoke test", 5.0, criterion10},
  };
}

/// Runs one criterion with RNG stream `id` of `seed`; exceptions count as failure.
inline Outcome run(const Criterion& c, std::uint64_t seed) {
  Outcome o{c.id, c.name, false, 0, c.limit_seconds, {}};
  Rng rng = derive_rng(seed, static_cast<std::uint64_t>(c.id));
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [pass, detail] = c.run(rng);
    o.pass = pass;
    o.detail = std::move(detail);
  } catch (const std::exception& e) {
    o.detail = std::string("exception: ") + e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.limit_seconds > 0 && o.seconds > o.limit_seconds) {
    o.pass = false;
    o.detail += " [time limit " + std::to_string(o.limit_seconds) + " s exceeded]";
  }
  return o;
}

inline std::vector<Outcome> run_all(std::uint64_t seed) {
  std::vector<Outcome> out;
  for (const auto& c : criteria()) out.push_back(run(c, seed));
  return out;
}

inline std::string format_line(const Outcome& o) {
  std::ostringstream s;
  s << (o.pass ? "PASS" : "FAIL") << " [" << o.id << "] " << o.name << " (" << std::fixed;
  s.precision(2);
  s << o.seconds << " s";
  if (o.limit_seconds > 0) s << " / limit " << o.limit_seconds << " s";
  s << "): " << o.detail;
  return s.str();
}

}  // namespace tysys::acceptance
