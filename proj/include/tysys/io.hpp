#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tysys/cartan.hpp"
#include "tysys/cluster.hpp"
#include "tysys/error.hpp"
#include "tysys/exchange.hpp"
#include "tysys/lattice.hpp"
#include "tysys/laurent.hpp"
#include "tysys/ratfunc.hpp"
#include "tysys/semifield.hpp"
#include "tysys/tsystem.hpp"
#include "tysys/ysystem.hpp"

namespace tysys {

using Json = nlohmann::ordered_json;

/// Square integer matrix as read from the text format, plus an optional parity.
struct MatrixText {
  IntMatrix entries;
  std::optional<Parity> parity;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

/// Text format: the size r on the first content line, then r rows of r integers.
/// A trailing line `+: i j ...` lists the 1-based nodes of I+; all others are in
/// I-. `#` starts a comment.
inline MatrixText parse_matrix_text(std::istream& in) {
  MatrixText out;
  std::string raw;
  int lineno = 0;
  std::optional<int> size;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (line.rfind("+:", 0) == 0) {
      if (!size || static_cast<int>(out.entries.size()) != *size) detail::parse_fail(lineno, "parity line before matrix rows");
      if (out.parity) detail::parse_fail(lineno, "duplicate parity line");
      Parity p(*size, Sign::Minus);
      std::istringstream ss(line.substr(2));
      int node = 0;
      while (ss >> node) {
        if (node < 1 || node > *size) detail::parse_fail(lineno, "parity node " + std::to_string(node) + " out of range");
        p[node - 1] = Sign::Plus;
      }
      if (!ss.eof()) detail::parse_fail(lineno, "malformed parity line");
      out.parity = std::move(p);
      continue;
    }
    std::istringstream ss(line);
    std::vector<int> row;
    int v = 0;
    while (ss >> v) row.push_back(v);
    if (!ss.eof()) detail::parse_fail(lineno, "expected integers");
    if (!size) {
      if (row.size() != 1 || row[0] < 1) detail::parse_fail(lineno, "expected a positive matrix size");
      size = row[0];
      continue;
    }
    if (out.parity) detail::parse_fail(lineno, "matrix row after parity line");
    if (static_cast<int>(out.entries.size()) == *size) detail::parse_fail(lineno, "too many rows");
    if (static_cast<int>(row.size()) != *size)
      detail::parse_fail(lineno, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(*size));
    out.entries.push_back(std::move(row));
  }
  if (!size) throw Error(ErrorCode::ParseError, "empty matrix file");
  if (static_cast<int>(out.entries.size()) != *size)
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(*size) + " rows, found " +
                                           std::to_string(out.entries.size()));
  return out;
}

inline MatrixText read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return parse_matrix_text(in);
}

inline CartanMatrix read_cartan_file(const std::string& path) { return CartanMatrix(read_matrix_file(path).entries); }

inline ExchangeMatrix read_exchange_file(const std::string& path) {
  MatrixText t = read_matrix_file(path);
  return ExchangeMatrix(std::move(t.entries), std::move(t.parity));
}

inline std::string format_matrix_text(const IntMatrix& m, const std::optional<Parity>& parity = std::nullopt) {
  std::ostringstream out;
  out << m.size() << '\n';
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  if (parity) {
    out << "+:";
    for (std::size_t i = 0; i < parity->size(); ++i)
      if ((*parity)[i] == Sign::Plus) out << ' ' << i + 1;
    out << '\n';
  }
  return out.str();
}

// ---- JSON --------------------------------------------------------------------

inline Json to_json(const LatticeVar& v) { return Json{{"a", v.a + 1}, {"m", v.m}, {"k", v.k}}; }

/// Cluster variables (m == 0) are written as {"i", "u"}.
inline Json belt_var_json(const LatticeVar& v) { return Json{{"i", v.a + 1}, {"u", v.k}}; }

inline Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [exp, coeff] : p.terms()) terms.push_back(Json::array({coeff.str(), exp}));
  return terms;
}

/// {"vars": n, "num": [[coeff, [exponents]], ...], "den": [...]}
template <class F>
Json expression_json(const F& f) {
  return Json{{"vars", f.nvars()}, {"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline Json value_json(const BigRational& v) { return v.str(); }
inline Json value_json(const RationalFunction& f) { return expression_json(f); }
inline Json value_json(const SemifieldElement& f) { return expression_json(f); }

/// Array of {"tag", "a", "m", "k", "value"} sorted by (a, m, k); a is 1-based.
template <class V>
Json table_to_json(const ValueTable<V>& table, const std::string& tag) {
  Json out = Json::array();
  for (const auto& [v, x] : table)
    out.push_back(Json{{"tag", tag}, {"a", v.a + 1}, {"m", v.m}, {"k", v.k}, {"value", value_json(x)}});
  return out;
}

/// Accepts the bare array or any report object carrying it under "table".
inline ValueTable<BigRational> table_from_json(const Json& doc, const std::string& tag) {
  const Json& j = doc.is_object() && doc.contains("table") ? doc.at("table") : doc;
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "value table must be a JSON array");
  ValueTable<BigRational> out;
  for (const auto& e : j) {
    try {
      if (e.at("tag").get<std::string>() != tag)
        throw Error(ErrorCode::ParseError, "expected tag " + tag + ", found " + e.at("tag").get<std::string>());
      const LatticeVar v{e.at("a").get<int>() - 1, e.at("m").get<int>(), e.at("k").get<int>()};
      if (v.a < 0) throw Error(ErrorCode::ParseError, "node index must be >= 1");
      out.set(v, BigRational::parse(e.at("value").get<std::string>()));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::ParseError, std::string("malformed table entry: ") + ex.what());
    }
  }
  return out;
}

inline ValueTable<BigRational> read_table_file(const std::string& path, const std::string& tag) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + ex.what());
  }
  return table_from_json(j, tag);
}

inline Json factors_json(const FactorList& f) {
  Json out = Json::array();
  for (const auto& x : f) out.push_back(Json{{"var", to_json(x.var)}, {"exp", x.exponent}});
  return out;
}

inline Json to_json(const TRelation& r) {
  return Json{{"center", to_json(r.center)},
              {"lhs", Json::array({to_json(r.lhs[0]), to_json(r.lhs[1])})},
              {"termA", factors_json(r.termA)},
              {"termM", factors_json(r.termM)}};
}

inline Json to_json(const YRelation& r) {
  auto side = [](const std::vector<YFactor>& f) {
    Json out = Json::array();
    for (const auto& x : f)
      out.push_back(Json{{"var", to_json(x.var)},
                         {"kind", x.kind == YKind::OnePlusY ? "1+Y" : "1+1/Y"},
                         {"exp", x.exponent}});
    return out;
  };
  return Json{{"center", to_json(r.center)},
              {"lhs", Json::array({to_json(r.lhs[0]), to_json(r.lhs[1])})},
              {"numerator", side(r.numerator)},
              {"denominator", side(r.denominator)}};
}

template <class V>
Json violations_json(const CheckReport<V>& r, bool belt = false) {
  Json out = Json::array();
  for (const auto& v : r.violations)
    out.push_back(Json{{"center", belt ? belt_var_json(v.center) : to_json(v.center)},
                       {"lhs", value_json(v.lhs)},
                       {"rhs", value_json(v.rhs)}});
  return out;
}

template <class X, class Y>
Json sequence_json(const SequenceResult<X, Y>& seq) {
  Json xs = Json::array(), ys = Json::array();
  for (const auto& [key, v] : seq.x) xs.push_back(Json{{"i", key.first + 1}, {"u", key.second}, {"value", value_json(v)}});
  for (const auto& [key, v] : seq.y) ys.push_back(Json{{"i", key.first + 1}, {"u", key.second}, {"value", value_json(v)}});
  return Json{{"u_range", Json::array({seq.lo, seq.hi})}, {"x", xs}, {"y", ys}};
}

}  // namespace tysys
