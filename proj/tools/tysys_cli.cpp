#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tysys/acceptance.hpp"
#include "tysys/io.hpp"
#include "tysys/tysys.hpp"

namespace {

using tysys::Json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Sub-stream ids; every command draws only from derive_rng(seed, stream).
enum Stream : std::uint64_t { kSolveT = 1, kSolveY, kYToT, kIdentities, kCluster, kPeriod };

struct RunConfig {
  std::uint64_t seed = 1;
  std::string window_text = "0..15";
  std::string level_text = "unrestricted";
  int mcap = 6;
  int retries = 16;
  bool numeric = false;
  std::string out;

  tysys::Window window() const {
    const auto dots = window_text.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--window", "expected A..B, got " + window_text);
    try {
      tysys::Window w{std::stoi(window_text.substr(0, dots)), std::stoi(window_text.substr(dots + 2))};
      tysys::require_nonempty(w);
      return w;
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--window", "expected A..B, got " + window_text);
    }
  }

  tysys::SystemLevel level() const {
    if (level_text == "unrestricted") return tysys::SystemLevel::unrestricted(mcap);
    try {
      return tysys::SystemLevel::restricted(std::stoi(level_text));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--level", "expected an integer >= 2 or 'unrestricted', got " + level_text);
    }
  }

  tysys::RetryPolicy policy() const {
    tysys::RetryPolicy p;
    p.max_retries = retries;
    return p;
  }

  tysys::Rng rng(Stream s) const { return tysys::derive_rng(seed, s); }

  Json json() const {
    Json j{{"seed", seed}, {"mode", numeric ? "numeric" : "exact"}, {"retries", retries}};
    if (level_text == "unrestricted")
      j["level"] = Json{{"unrestricted", true}, {"mcap", mcap}};
    else
      j["level"] = level_text;
    j["window"] = window_text;
    return j;
  }
};

// Accumulates labelled violations for one report.
class Violations {
 public:
  template <class V>
  void add(const std::string& check, const tysys::CheckReport<V>& r, bool belt = false) {
    for (auto v : tysys::violations_json(r, belt)) {
      v["check"] = check;
      list_.push_back(std::move(v));
    }
  }
  void add(const std::string& check, const std::vector<tysys::LatticeVar>& centres, bool belt) {
    for (const auto& c : centres)
      list_.push_back(Json{{"check", check}, {"center", belt ? tysys::belt_var_json(c) : tysys::to_json(c)}});
  }
  void add(const std::string& check, const std::string& message) {
    list_.push_back(Json{{"check", check}, {"message", message}});
  }
  bool empty() const { return list_.empty(); }
  const Json& json() const { return list_; }

 private:
  Json list_ = Json::array();
};

template <class V>
Json summary(const tysys::CheckReport<V>& r) {
  return Json{{"checked", r.checked}, {"violations", r.violations.size()}};
}

Json summary(const tysys::IdentityReport& r) { return Json{{"centers", r.centers}, {"failures", r.failures}}; }

Json window_json(const tysys::Window& w) { return Json::array({w.lo, w.hi}); }

int emit(const RunConfig& cfg, Json body, bool pass, const Violations& violations) {
  Json report;
  report["pass"] = pass && violations.empty();
  report["violations"] = violations.json();
  report["config"] = cfg.json();
  for (auto& [k, v] : body.items()) report[k] = std::move(v);
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw tysys::Error(tysys::ErrorCode::ParseError, "cannot write " + cfg.out);
    f << text;
  }
  return report["pass"].get<bool>() ? kExitPass : kExitFail;
}

Json int_vector_json(const std::vector<int>& v, int offset = 0) {
  Json out = Json::array();
  for (int x : v) out.push_back(x + offset);
  return out;
}

Json parity_json(const tysys::Parity& p) {
  Json plus = Json::array(), minus = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) (p[i] == tysys::Sign::Plus ? plus : minus).push_back(i + 1);
  return Json{{"plus", plus}, {"minus", minus}};
}

// ---- cartan ------------------------------------------------------------------

int cartan_check(const RunConfig& cfg, const std::string& file) {
  const tysys::MatrixText text = tysys::read_matrix_file(file);
  Violations violations;
  Json body{{"file", file}, {"matrix", text.entries}};
  try {
    const tysys::CartanMatrix cm(text.entries);
    const bool tame = tysys::is_tamely_laced(cm);
    const auto parity = tysys::bipartition(cm);
    body["generalized_cartan"] = true;
    body["symmetrizable"] = true;
    body["d"] = cm.d();
    body["t"] = cm.t();
    body["t_a"] = cm.t_a();
    body["tamely_laced"] = tame;
    body["simply_laced"] = tysys::is_simply_laced(cm);
    body["bipartite"] = parity.has_value();
    if (parity) body["parity"] = parity_json(*parity);
    body["connected"] = cm.is_connected();
    if (!tame) violations.add("tamely_laced", "some C_ij < -1 without d_i = -C_ji = 1");
  } catch (const tysys::Error& e) {
    violations.add(std::string(tysys::error_name(e.code())), e.what());
  }
  return emit(cfg, body, true, violations);
}

// ---- sys ---------------------------------------------------------------------

int sys_gen(const RunConfig& cfg, const std::string& file, bool y) {
  const auto cm = tysys::read_cartan_file(file);
  Json rels = Json::array();
  std::size_t count = 0;
  if (y) {
    for (const auto& r : tysys::enumerate_y_relations(cm, cfg.level(), cfg.window())) rels.push_back(tysys::to_json(r));
  } else {
    for (const auto& r : tysys::enumerate_relations(cm, cfg.level(), cfg.window())) rels.push_back(tysys::to_json(r));
  }
  count = rels.size();
  return emit(cfg, Json{{"file", file}, {"system", y ? "Y" : "T"}, {"count", count}, {"relations", rels}}, true, {});
}

tysys::ValueTable<tysys::BigRational> optional_table(const std::string& path, const std::string& tag) {
  if (path.empty()) return {};
  return tysys::read_table_file(path, tag);
}

int sys_solve(const RunConfig& cfg, const std::string& file, bool y, const std::string& in) {
  const auto cm = tysys::read_cartan_file(file);
  const auto level = cfg.level();
  const auto window = cfg.window();
  Violations violations;
  Json body{{"file", file}};
  if (y) {
    auto rng = cfg.rng(kSolveY);
    const auto table = tysys::propagate_y(cm, level, window, optional_table(in, "Y"), rng, cfg.policy());
    const auto check = tysys::check_y_solution(table, tysys::enumerate_y_relations(cm, level, window));
    violations.add("y_relation", check);
    body["check"] = summary(check);
    body["table"] = tysys::table_to_json(table, "Y");
  } else {
    if (!level.is_restricted())
      throw tysys::Error(tysys::ErrorCode::Unsupported, "solve-t propagates restricted systems only; pass --level L");
    auto rng = cfg.rng(kSolveT);
    const auto table = tysys::propagate_t(cm, level, window, optional_table(in, "T"), rng, cfg.policy());
    const auto check = tysys::check_t_solution(table, tysys::enumerate_relations(cm, level, window));
    violations.add("t_relation", check);
    body["check"] = summary(check);
    body["table"] = tysys::table_to_json(table, "T");
  }
  return emit(cfg, body, true, violations);
}

int sys_t2y(const RunConfig& cfg, const std::string& file, const std::string& in) {
  const auto cm = tysys::read_cartan_file(file);
  const auto level = cfg.level();
  const auto t = tysys::read_table_file(in, "T");
  Violations violations;
  Json body{{"file", file}, {"input", in}};
  const auto tw = tysys::complete_window(t, cm, level);
  if (!tw) throw tysys::Error(tysys::ErrorCode::MissingValue, "T table has no slice with every level present");
  body["t_window"] = window_json(*tw);
  const auto tc = tysys::check_t_solution(t, tysys::enumerate_relations(cm, level, *tw));
  violations.add("t_relation", tc);
  body["t_check"] = summary(tc);
  const auto image = tysys::t_to_y(cm, level, t);
  violations.add("one_plus_y", image.one_plus_y);
  violations.add("one_plus_y_inv", image.one_plus_y_inv);
  body["one_plus_y"] = summary(image.one_plus_y);
  body["one_plus_y_inv"] = summary(image.one_plus_y_inv);
  if (level.is_restricted()) {
    body["boundary"] = summary(image.boundary);
    if (image.boundary.failures > 0)
      violations.add("boundary", std::to_string(image.boundary.failures) + " slices with boundary quantity != 1");
  }
  const auto yw = tysys::complete_window(image.y, cm, level);
  if (yw) {
    const auto yc = tysys::check_y_solution(image.y, tysys::enumerate_y_relations(cm, level, *yw));
    violations.add("y_relation", yc);
    body["y_window"] = window_json(*yw);
    body["y_check"] = summary(yc);
  } else {
    violations.add("y_relation", "image has no complete slice");
  }
  body["table"] = tysys::table_to_json(image.y, "Y");
  return emit(cfg, body, true, violations);
}

int sys_y2t(const RunConfig& cfg, const std::string& file, const std::string& in, const std::string& free,
            bool roundtrip, int max_level) {
  const auto cm = tysys::read_cartan_file(file);
  if (cfg.level().is_restricted())
    throw tysys::Error(tysys::ErrorCode::Unsupported, "y2t reconstructs unrestricted systems only");
  const auto y = tysys::read_table_file(in, "Y");
  tysys::YToTOptions opt;
  opt.free = free == "unit" ? tysys::FreeChoice::Unit : tysys::FreeChoice::Random;
  opt.max_level = max_level;
  opt.policy = cfg.policy();
  auto rng = cfg.rng(kYToT);
  const auto r = tysys::y_to_t(cm, y, rng, opt);
  Violations violations;
  Json groups = Json::array();
  for (const auto& g : r.groups) groups.push_back(int_vector_json(g, 1));
  Json free_vars = Json::array();
  for (const auto& v : r.free_vars) free_vars.push_back(tysys::to_json(v));
  Json body{{"file", file},         {"input", in},           {"interior", window_json(r.interior)},
            {"max_level", r.max_level}, {"origin", r.origin}, {"free", free},
            {"groups", groups},     {"free_vars", free_vars}};
  const auto tc = tysys::check_t_solution(
      r.t, tysys::enumerate_relations(cm, tysys::SystemLevel::unrestricted(r.max_level), r.interior));
  violations.add("t_relation", tc);
  body["t_check"] = summary(tc);
  if (roundtrip) {
    const auto rt = tysys::check_roundtrip(cm, y, r.t);
    violations.add("roundtrip", rt.mismatches);
    body["roundtrip"] = summary(rt.mismatches);
    if (rt.mismatches.checked == 0) violations.add("roundtrip", "no Y-value could be compared");
  }
  body["table"] = tysys::table_to_json(r.t, "T");
  return emit(cfg, body, true, violations);
}

int sys_identities(const RunConfig& cfg, const std::string& file) {
  const auto cm = tysys::read_cartan_file(file);
  const auto window = cfg.window();
  auto rng = cfg.rng(kIdentities);
  std::set<int> ds(cm.d().begin(), cm.d().end());
  Violations violations;
  Json results = Json::array();
  for (int p : ds) {
    // fully random single-node table covering every offset either identity reaches
    const int levels = 2 * p + 1, pad = 2 * p + 2;
    tysys::ValueTable<tysys::BigRational> values;
    for (int m = 1; m <= levels; ++m)
      for (int k = window.lo - pad; k <= window.hi + pad; ++k) values.set({0, m, k}, tysys::random_nonzero_rational(rng));
    const auto r1 = tysys::identity_check_1(p, window, values);
    const auto r2 = tysys::identity_check_2(p, window, values);
    results.push_back(Json{{"p", p}, {"identity_1", summary(r1)}, {"identity_2", summary(r2)}});
    if (!r1.pass()) violations.add("identity_1", "p=" + std::to_string(p) + ": " + std::to_string(r1.failures) + " failures");
    if (!r2.pass()) violations.add("identity_2", "d_b=" + std::to_string(p) + ": " + std::to_string(r2.failures) + " failures");
  }
  return emit(cfg, Json{{"file", file}, {"results", results}}, true, violations);
}

// ---- cluster -------------------------------------------------------------------

// Symbolic runs beyond this many steps switch to numeric seeds.
constexpr int kMaxSymbolicSteps = 14;

std::pair<int, int> step_range(int steps) {
  if (steps < 1) throw CLI::ValidationError("--steps", "must be >= 1");
  return {-(steps / 2), steps - steps / 2};
}

bool numeric_mode(const RunConfig& cfg, int steps) {
  if (cfg.numeric) return true;
  if (steps > kMaxSymbolicSteps) {
    std::cerr << "warning: " << steps << " steps exceed the symbolic limit of " << kMaxSymbolicSteps
              << "; using random numeric seeds\n";
    return true;
  }
  return false;
}

template <class X, class Y>
void verify_sequence(const tysys::SequenceResult<X, Y>& seq, const tysys::ExchangeMatrix& e, Json& body,
                     Violations& violations) {
  const auto parity = tysys::check_parity_lemmas(seq, e);
  violations.add("x_parity", parity.x_failures, true);
  violations.add("y_parity", parity.y_failures, true);
  body["parity"] = Json{{"x_checked", parity.x_checked}, {"y_checked", parity.y_checked}};
  const auto tb = tysys::check_tb(seq, e);
  violations.add("t_b", tb, true);
  body["t_b"] = summary(tb);
  for (auto eps : {tysys::Sign::Plus, tysys::Sign::Minus}) {
    const std::string tag = eps == tysys::Sign::Plus ? "+" : "-";
    const auto yb = tysys::check_yb(seq, e, eps);
    violations.add("y_b" + tag, yb, true);
    body["y_b" + tag] = summary(yb);
    const auto image = tysys::t_to_y_b(seq.x, e, eps, seq.lo, seq.hi);
    violations.add("t_to_y" + tag + ":one_plus_y", image.one_plus_y, true);
    violations.add("t_to_y" + tag + ":one_plus_y_inv", image.one_plus_y_inv, true);
    violations.add("t_to_y" + tag + ":system", image.system, true);
    body["t_to_y" + tag] = Json{{"one_plus_y", summary(image.one_plus_y)},
                                {"one_plus_y_inv", summary(image.one_plus_y_inv)},
                                {"system", summary(image.system)}};
  }
}

int cluster_run(const RunConfig& cfg, const std::string& file, int steps, bool verify) {
  const auto e = tysys::read_exchange_file(file);
  const auto [lo, hi] = step_range(steps);
  Violations violations;
  const bool b1 = tysys::check_b1(e), b2 = tysys::check_b2(e);
  Json body{{"file", file}, {"steps", steps}, {"b1", b1}, {"b2", b2}};
  if (!b1) violations.add("b1", "an entry links two nodes of the same parity class");
  if (!b2) violations.add("b2", "mu_+(B) or mu_-(B) differs from -B");
  if (!b1 || !b2) return emit(cfg, body, false, violations);
  if (numeric_mode(cfg, steps)) {
    auto rng = cfg.rng(kCluster);
    const auto seq = tysys::run_sequence(tysys::random_numeric_seed(e, rng), lo, hi);
    body["mode"] = "numeric";
    if (verify) {
      verify_sequence(seq, e, body, violations);
      body["laurent"] = "skipped in numeric mode";
    } else {
      body["sequence"] = tysys::sequence_json(seq);
    }
  } else {
    const auto seq = tysys::run_sequence(e, lo, hi);
    body["mode"] = "exact";
    if (verify) {
      verify_sequence(seq, e, body, violations);
      const auto laurent = tysys::laurent_check(seq);
      violations.add("laurent", laurent.failures, true);
      body["laurent"] = Json{{"checked", laurent.checked}, {"failures", laurent.failures.size()}};
    } else {
      body["sequence"] = tysys::sequence_json(seq);
    }
  }
  return emit(cfg, body, true, violations);
}

int cluster_correspond(const RunConfig& cfg, const std::string& file, int ell, int range) {
  const auto cm = tysys::read_cartan_file(file);
  const auto r = tysys::correspondence_check(cm, ell, -range, range);
  Violations violations;
  for (const auto& f : r.failures) violations.add("correspondence", f);
  Json body{{"file", file},          {"level", ell},
            {"via_double", r.via_double}, {"belt_size", r.belt_size},
            {"t_relations", r.t_relations}, {"y_relations", r.y_relations},
            {"values", r.values}};
  return emit(cfg, body, r.pass(), violations);
}

// ---- period / verify -------------------------------------------------------------

int period_scan(const RunConfig& cfg, const std::string& file, int max_period) {
  const auto cm = tysys::read_cartan_file(file);
  const auto level = cfg.level();
  if (!level.is_restricted()) throw tysys::Error(tysys::ErrorCode::Unsupported, "period scan needs --level L");
  auto rng = cfg.rng(kPeriod);
  const auto scan = tysys::period_scan(cm, level.ell(), max_period, rng);
  Violations violations;
  if (!scan.period) violations.add("period", "no period <= " + std::to_string(max_period) + " slices");
  Json body{{"file", file}, {"max_period", max_period}};
  body["period"] = scan.period ? Json(*scan.period) : Json(nullptr);
  return emit(cfg, body, true, violations);
}

int verify_all(const RunConfig& cfg) {
  Violations violations;
  Json criteria = Json::array();
  for (const auto& c : tysys::acceptance::criteria()) {
    const auto o = tysys::acceptance::run(c, cfg.seed);
    std::cerr << tysys::acceptance::format_line(o) << '\n';
    criteria.push_back(Json{{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"detail", o.detail}});
    if (!o.pass) violations.add("criterion " + std::to_string(o.id), o.detail);
  }
  return emit(cfg, Json{{"criteria", criteria}}, true, violations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-system, Y-system and cluster-algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed and --out are accepted after any subcommand
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed for every random choice")->capture_default_str();
  app.add_option("--out", cfg.out, "write the JSON report here instead of stdout");

  auto add_system_options = [&](CLI::App* c) {
    c->add_option("--level", cfg.level_text, "restricted level L >= 2, or 'unrestricted'")->capture_default_str();
    c->add_option("--mcap", cfg.mcap, "highest level of an unrestricted system")->capture_default_str();
    c->add_option("--window", cfg.window_text, "slice range A..B of the scaled coordinate k")->capture_default_str();
    c->add_option("--retries", cfg.retries, "resampling attempts after an accidental zero")->capture_default_str();
  };

  std::string file, in, free = "random";
  int steps = 12, ell = 2, range = 3, max_period = 10, max_level = 0;
  bool roundtrip = false;
  std::function<int()> action;

  auto* cartan = app.add_subcommand("cartan", "Cartan matrix tools")->require_subcommand(1);
  auto* ccheck = cartan->add_subcommand("check", "validate and classify a Cartan matrix");
  ccheck->add_option("file", file)->required()->check(CLI::ExistingFile);
  ccheck->callback([&] { action = [&] { return cartan_check(cfg, file); }; });

  auto* sys = app.add_subcommand("sys", "T- and Y-system tools")->require_subcommand(1);
  for (const auto& [name, is_y] : std::vector<std::pair<std::string, bool>>{{"gen-t", false}, {"gen-y", true}}) {
    auto* c = sys->add_subcommand(name, is_y ? "dump Y-relations" : "dump T-relations");
    c->add_option("file", file)->required()->check(CLI::ExistingFile);
    add_system_options(c);
    c->callback([&, y = is_y] { action = [&, y] { return sys_gen(cfg, file, y); }; });
  }
  for (const auto& [name, is_y] : std::vector<std::pair<std::string, bool>>{{"solve-t", false}, {"solve-y", true}}) {
    auto* c = sys->add_subcommand(name, is_y ? "propagate a Y-system and self-check" : "propagate a T-system and self-check");
    c->add_option("file", file)->required()->check(CLI::ExistingFile);
    c->add_option("--in", in, "initial values (JSON table)")->check(CLI::ExistingFile);
    add_system_options(c);
    c->callback([&, y = is_y] { action = [&, y] { return sys_solve(cfg, file, y, in); }; });
  }
  auto* t2y = sys->add_subcommand("t2y", "map a T-table to Y and verify");
  t2y->add_option("file", file)->required()->check(CLI::ExistingFile);
  t2y->add_option("--in", in, "T-table (JSON)")->required()->check(CLI::ExistingFile);
  add_system_options(t2y);
  t2y->callback([&] { action = [&] { return sys_t2y(cfg, file, in); }; });

  auto* y2t = sys->add_subcommand("y2t", "reconstruct a T-table from an unrestricted Y-table");
  y2t->add_option("file", file)->required()->check(CLI::ExistingFile);
  y2t->add_option("--in", in, "Y-table (JSON)")->required()->check(CLI::ExistingFile);
  y2t->add_option("--free", free, "values of the free T-variables")->check(CLI::IsMember({"random", "unit"}))->capture_default_str();
  y2t->add_option("--max-level", max_level, "highest T-level to output (0: automatic)")->capture_default_str();
  y2t->add_flag("--roundtrip", roundtrip, "map back to Y and compare with the input");
  add_system_options(y2t);
  y2t->callback([&] { action = [&] { return sys_y2t(cfg, file, in, free, roundtrip, max_level); }; });

  auto* ids = sys->add_subcommand("identities", "telescoping identities on random tables");
  ids->add_option("file", file)->required()->check(CLI::ExistingFile);
  add_system_options(ids);
  ids->callback([&] { action = [&] { return sys_identities(cfg, file); }; });

  auto* cluster = app.add_subcommand("cluster", "cluster algebra tools")->require_subcommand(1);
  for (const auto& [name, verify] : std::vector<std::pair<std::string, bool>>{{"run", false}, {"verify", true}}) {
    auto* c = cluster->add_subcommand(name, verify ? "check the bipartite belt lemmas" : "run the bipartite belt");
    c->add_option("file", file)->required()->check(CLI::ExistingFile);
    c->add_option("--steps", steps, "number of belt steps")->capture_default_str();
    c->add_flag("--numeric", cfg.numeric, "use random rational seeds instead of symbolic ones");
    c->callback([&, v = verify] { action = [&, v] { return cluster_run(cfg, file, steps, v); }; });
  }
  auto* corr = cluster->add_subcommand("correspond", "compare T_l(C) and Y_l(C) with the belt of the associated B");
  corr->add_option("file", file)->required()->check(CLI::ExistingFile);
  corr->add_option("--level", ell, "level l >= 2")->required();
  corr->add_option("--range", range, "belt runs over u in [-R, R]")->capture_default_str();
  corr->callback([&] {
    cfg.level_text = std::to_string(ell);
    action = [&] { return cluster_correspond(cfg, file, ell, range); };
  });

  auto* period = app.add_subcommand("period", "periodicity tools")->require_subcommand(1);
  auto* scan = period->add_subcommand("scan", "detect the period of a restricted Y-orbit");
  scan->add_option("file", file)->required()->check(CLI::ExistingFile);
  scan->add_option("--max-period", max_period, "largest period tried")->capture_default_str();
  add_system_options(scan);
  scan->callback([&] { action = [&] { return period_scan(cfg, file, max_period); }; });

  auto* verify = app.add_subcommand("verify", "acceptance suite")->require_subcommand(1);
  verify->add_subcommand("all", "run every acceptance criterion")->callback([&] {
    action = [&] { return verify_all(cfg); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tysys::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
