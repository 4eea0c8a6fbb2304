#include "buildwalk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "buildwalk/affine_c2.hpp"
#include "buildwalk/building_models.hpp"
#include "buildwalk/coxeter.hpp"
#include "buildwalk/hecke.hpp"
#include "buildwalk/polygon_reps.hpp"
#include "buildwalk/rng.hpp"

namespace buildwalk::cli {

namespace {

const char* const kVersion = BUILDWALK_VERSION;

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> formats;  // first entry is the default
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"polygon-pn", "p⁽ⁿ⁾(x,y) for every Weyl distance from the character formula", {"csv", "json"}},
      {"polygon-mix", "exact total variation and its character bound for the simple walk", {"csv", "json"}},
      {"quadrangle-closed-form", "closed-form return probability and bound on quadrangles", {"csv", "json"}},
      {"feit-higman", "character inner products and multiplicity rationality", {"json"}},
      {"param-check", "necessary divisibility conditions on (m, q, r)", {"json"}},
      {"c2-exact", "C̃₂ vertex walk coefficients from the recursion", {"csv", "json"}},
      {"c2-spectral", "C̃₂ vertex walk by Plancherel quadrature vs the recursion", {"csv", "json"}},
      {"c2-llt", "C̃₂ return probabilities against the local limit asymptote", {"json", "csv"}},
      {"model-audit", "build an explicit polygon and audit its geometry", {"json"}},
      {"simulate", "seeded Monte Carlo simple walk on an explicit polygon", {"csv", "json"}},
      {"a2-rho", "Ã₂ chamber walk spectral radius", {"json"}},
      {"fuchsian-check", "Fuchsian condition and thick building existence", {"json"}},
  };
  return list;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw UsageError("unknown subcommand '" + name + "'");
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag --") + flag);
  return *v;
}

Rational need_rational(const std::optional<std::string>& v, const char* flag) {
  try {
    return parse_rational(need(v, flag));
  } catch (const Error& e) {
    throw UsageError(std::string("--") + flag + ": " + e.what());
  }
}

mpz_class need_integer(const std::optional<std::string>& v, const char* flag) {
  const Rational x = need_rational(v, flag);
  if (x.get_den() != 1) throw UsageError(std::string("--") + flag + " must be an integer");
  return x.get_num();
}

int need_small_integer(const std::optional<std::string>& v, const char* flag) {
  const mpz_class x = need_integer(v, flag);
  if (!x.fits_sint_p()) throw UsageError(std::string("--") + flag + " is out of range");
  return static_cast<int>(x.get_si());
}

int need_steps(RunConfig& c) {
  const int n = need(c.n, "n");
  if (n < 0) throw UsageError("--n must be ≥ 0");
  return n;
}

bool rational_mode(RunConfig& c) {
  if (!c.mode) c.mode = "rational";
  const std::string mode = *c.mode;
  if (mode != "rational" && mode != "float") throw UsageError("--mode must be rational or float");
  return mode == "rational";
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  int a = 0;
  int b = 0;
  bool ok = x != std::string::npos;
  if (ok) {
    const char* s = text.data();
    auto r1 = std::from_chars(s, s + x, a);
    auto r2 = std::from_chars(s + x + 1, s + text.size(), b);
    ok = r1.ec == std::errc() && r1.ptr == s + x && r2.ec == std::errc() && r2.ptr == s + text.size();
  }
  if (!ok || a < 2 || b < 2) throw UsageError("--grid must look like 200x200 with sides ≥ 2");
  return {a, b};
}

// Report writers -----------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<nlohmann::json> json_rows;

  void add(std::vector<std::string> csv, nlohmann::json json) {
    rows.push_back(std::move(csv));
    json_rows.push_back(std::move(json));
  }
};

struct Report {
  nlohmann::json result = nlohmann::json::object();
  std::optional<Table> table;
};

std::string dec(double x) { return format_decimal(x); }
std::string dec(const Rational& x) { return format_decimal(x.get_d()); }

void emit(const RunConfig& config, const Command& cmd, const Report& report, std::ostream& out) {
  const std::string format = config.format.value_or(cmd.formats.front());
  if (std::find(cmd.formats.begin(), cmd.formats.end(), format) == cmd.formats.end()) {
    throw UsageError("format '" + format + "' is not available for " + cmd.name);
  }
  RunConfig resolved = config;
  resolved.format = format;
  const nlohmann::json cfg = resolved.to_json();

  std::ostringstream body;
  if (format == "json") {
    nlohmann::json doc = {{"tool", "buildwalk"}, {"version", kVersion}, {"config", cfg}, {"result", report.result}};
    if (report.table) doc["rows"] = report.table->json_rows;
    body << doc.dump(2) << '\n';
  } else {
    if (!report.table) throw UsageError("no tabular output for " + cmd.name);
    body << "# buildwalk " << kVersion << '\n';
    body << "# config " << cfg.dump() << '\n';
    for (std::size_t i = 0; i < report.table->columns.size(); ++i) body << (i ? "," : "") << report.table->columns[i];
    body << '\n';
    for (const auto& row : report.table->rows) {
      for (std::size_t i = 0; i < row.size(); ++i) body << (i ? "," : "") << row[i];
      body << '\n';
    }
  }
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open output file " + *config.out);
    file << body.str();
  } else {
    out << body.str();
  }
}

// Rank-2 polygons ------------------------------------------------------------

struct PolygonInput {
  int m;
  Rational q;
  Rational r;
};

PolygonInput polygon_input(RunConfig& c) {
  if (!c.r) c.r = c.q;
  PolygonInput in{need(c.m, "m"), need_rational(c.q, "q"), need_rational(c.r, "r")};
  if (in.m < 2) throw UsageError("--m must be ≥ 2");
  return in;
}

Report polygon_pn(RunConfig& c) {
  const auto in = polygon_input(c);
  const int n = need_steps(c);
  const auto alg = make_dihedral_algebra(in.m, in.q, in.r);
  const auto& sys = alg->system();
  Report rep;
  rep.table = Table{{"n", "word", "p_n"}, {}, {}};
  if (rational_mode(c)) {
    if (!exact_tower_applies(in.m, in.q, in.r)) {
      throw Error(ErrorKind::InvalidInput, "rational mode needs cos(2πj/m) and √(qr) in ℚ(√2,√3); use --mode float");
    }
    const auto table = make_character_table<Surd>(alg);
    const auto spec = simple_random_walk<Rational>(alg);
    for (int s = 0; s <= n; ++s) {
      const auto values = pn_characters_all(table, spec, s);
      for (std::size_t w = 0; w < sys.size(); ++w) {
        const Rational p = values[w].as_rational();
        rep.table->add({std::to_string(s), sys.element(w).to_string(), dec(p)},
                       {{"n", s}, {"word", sys.element(w).to_string()}, {"p_n", to_string(p)}});
      }
    }
  } else {
    const auto table = make_character_table<double>(alg);
    const auto spec = simple_random_walk<double>(alg);
    for (int s = 0; s <= n; ++s) {
      const auto values = pn_characters_all(table, spec, s);
      for (std::size_t w = 0; w < sys.size(); ++w) {
        rep.table->add({std::to_string(s), sys.element(w).to_string(), dec(values[w])},
                       {{"n", s}, {"word", sys.element(w).to_string()}, {"p_n", values[w]}});
      }
    }
  }
  rep.result["chambers"] = to_string(alg->chamber_count());
  return rep;
}

// ½ Σ_w |a_w − q_w/|Δ||, the total variation of an isotropic distribution.
template <class S>
S isotropic_tv(const HeckeElement<S>& h) {
  const auto& alg = h.algebra();
  const S total = ScalarTraits<S>::from_rational(alg.chamber_count());
  S tv(0);
  for (std::size_t w = 0; w < alg.size(); ++w) {
    tv += detail::abs_value(S(h.coeff(w) - ScalarTraits<S>::from_rational(alg.qw(w)) / total));
  }
  return tv / S(2);
}

template <class S>
void polygon_mix_rows(const HeckeAlgebraPtr& alg, int n, Report& rep) {
  const auto table = make_character_table<double>(alg);
  const auto spec_float = simple_random_walk<double>(alg);
  const auto steps = n_step_sequence(simple_random_walk<S>(alg), n);
  bool dominated = true;
  for (int s = 0; s <= n; ++s) {
    const S p_oo = steps[s].coeff(0);
    const S tv = isotropic_tv(steps[s]);
    const double bound = tv_upper_bound(table, spec_float, s);
    if (ScalarTraits<S>::to_double(tv) > bound + 1e-12) dominated = false;
    nlohmann::json row = {{"n", s}, {"tv_bound", bound}};
    if constexpr (ScalarTraits<S>::exact) {
      row["p_n_oo"] = to_string(p_oo);
      row["tv_exact"] = to_string(tv);
    } else {
      row["p_n_oo"] = p_oo;
      row["tv_exact"] = tv;
    }
    rep.table->add({std::to_string(s), dec(p_oo), dec(tv), dec(bound)}, row);
  }
  rep.result["bound_dominates"] = dominated;
}

Report polygon_mix(RunConfig& c) {
  const auto in = polygon_input(c);
  const int n = need_steps(c);
  const auto alg = make_dihedral_algebra(in.m, in.q, in.r);
  Report rep;
  rep.table = Table{{"n", "p_n_oo", "tv_exact", "tv_bound"}, {}, {}};
  if (rational_mode(c)) {
    polygon_mix_rows<Rational>(alg, n, rep);
  } else {
    polygon_mix_rows<double>(alg, n, rep);
  }
  rep.result["chambers"] = to_string(alg->chamber_count());
  return rep;
}

Report quadrangle_closed_form(RunConfig& c) {
  if (!c.r) c.r = c.q;
  const Rational q = need_rational(c.q, "q");
  const Rational r = need_rational(c.r, "r");
  const int n = need_steps(c);
  const auto k = quadrangle_constants(q, r);
  Report rep;
  rep.result = {{"k", {to_string(k.k[0]), to_string(k.k[1]), to_string(k.k[2]), to_string(k.k[3])}},
                {"lambda1", to_string(k.lambda1)},
                {"lambda2", to_string(k.lambda2)},
                {"lambda3", to_string(k.lambda3)},
                {"lambda_plus", k.lambda_plus},
                {"lambda_minus", k.lambda_minus},
                {"chambers", to_string(k.chamber_count)}};
  rep.table = Table{{"n", "p_n_oo", "tv_bound"}, {}, {}};
  for (int s = 0; s <= n; ++s) {
    const auto v = quadrangle_srw_closed_form(q, r, s);
    rep.table->add({std::to_string(s), dec(v.p_n_oo), dec(v.tv_bound)},
                   {{"n", s}, {"p_n_oo", v.p_n_oo}, {"tv_bound", v.tv_bound}});
  }
  return rep;
}

Report feit_higman(RunConfig& c) {
  const auto in = polygon_input(c);
  Report rep;
  rep.result = to_json(feit_higman_check(in.m, in.q, in.r));
  return rep;
}

Report param_check(RunConfig& c) {
  const int m = need(c.m, "m");
  if (!c.r) c.r = c.q;
  const mpz_class q = need_integer(c.q, "q");
  const mpz_class r = need_integer(c.r, "r");
  Report rep;
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& res : parameter_constraints(m, q, r)) {
    list.push_back({{"name", res.name}, {"passed", res.passed}});
    all = all && res.passed;
  }
  nlohmann::json known = nlohmann::json::array();
  for (const auto& entry : known_parameter_catalogue()) {
    const bool same = entry.m == m && ((q == entry.q && r == entry.r) || (q == entry.r && r == entry.q));
    if (same) known.push_back(entry.source);
  }
  rep.result = {{"constraints", list}, {"all_passed", all}, {"known_examples", known}};
  return rep;
}

// C̃₂ -------------------------------------------------------------------------

C2Params c2_params(RunConfig& c) {
  if (!c.r) c.r = c.q;
  return C2Params(need_rational(c.q, "q"), need_rational(c.r, "r"));
}

template <class S>
void c2_exact_rows(const C2Params& p, int n, Report& rep) {
  auto dist = LatticeDistribution<S>::point(0, 0);
  for (int s = 0; s <= n; ++s) {
    if (s > 0) dist = right_mul_generator(p, dist, C2Generator::A01);
    for (const auto& [pt, a] : dist.terms()) {
      const auto [k, l] = pt;
      nlohmann::json row = {{"n", s}, {"k", k}, {"l", l}};
      S prob;
      if constexpr (ScalarTraits<S>::exact) {
        prob = a / vertex_count(p, k, l);
        row["a_kl"] = to_string(a);
        row["p"] = to_string(prob);
      } else {
        prob = a / vertex_count_float(p, k, l);
        row["a_kl"] = a;
        row["p"] = prob;
      }
      rep.table->add({std::to_string(s), std::to_string(k), std::to_string(l), dec(a), dec(prob)}, row);
    }
  }
}

Report c2_exact(RunConfig& c) {
  const auto p = c2_params(c);
  const int n = need_steps(c);
  Report rep;
  rep.table = Table{{"n", "k", "l", "a_kl", "p"}, {}, {}};
  if (rational_mode(c)) {
    c2_exact_rows<Rational>(p, n, rep);
  } else {
    c2_exact_rows<double>(p, n, rep);
  }
  rep.result["walk"] = "A(0,1)";
  return rep;
}

Report c2_spectral(RunConfig& c) {
  const auto p = c2_params(c);
  const int n = need_steps(c);
  const auto [n1, n2] = parse_grid(*(c.grid = c.grid.value_or("200x200")));
  const QuadratureGrid grid(n1, n2);
  std::vector<LatticePoint> targets;
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; k + l <= 3; ++l) targets.emplace_back(k, l);
  }
  const auto walk = simple_vertex_walk<double>();
  const auto spectral = pn_spectral_table(p, walk, n, targets, grid);
  const auto exact = exact_n_step_series(p, walk, n, targets);
  Report rep;
  rep.table = Table{{"n", "k", "l", "p_spectral", "error_estimate", "max_imaginary", "p_exact", "abs_diff"}, {}, {}};
  double worst = 0.0;
  for (int s = 0; s <= n; ++s) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto [k, l] = targets[t];
      const auto& est = spectral[s][t];
      const double pe = exact[s][t] / vertex_count_float(p, k, l);
      const double diff = std::abs(est.value - pe);
      worst = std::max(worst, diff);
      rep.table->add({std::to_string(s), std::to_string(k), std::to_string(l), dec(est.value), dec(est.error_estimate),
                      dec(est.max_imaginary), dec(pe), dec(diff)},
                     {{"n", s},
                      {"k", k},
                      {"l", l},
                      {"p_spectral", est.value},
                      {"error_estimate", est.error_estimate},
                      {"max_imaginary", est.max_imaginary},
                      {"p_exact", pe},
                      {"abs_diff", diff}});
    }
  }
  rep.result = {{"grid", grid.to_json()},
                {"max_abs_diff", worst},
                {"orthogonality_residual", orthogonality_check(p, grid, 3)},
                {"plancherel_constant", plancherel_constant(p)}};
  return rep;
}

Report c2_llt(RunConfig& c) {
  const auto p = c2_params(c);
  const int n = need_steps(c);
  if (n < 1) throw UsageError("--n must be ≥ 1 for c2-llt");
  std::vector<int> checkpoints;
  for (int shift = 3; shift >= 0; --shift) {
    const int v = n >> shift;
    if (v >= 1 && (checkpoints.empty() || checkpoints.back() != v)) checkpoints.push_back(v);
  }
  const auto series = exact_n_step_series(p, simple_vertex_walk<double>(), 2 * n, {{0, 0}});
  Report rep;
  rep.table = Table{{"n", "p_2n_exact", "asymptote", "ratio", "displayed_asymptote", "displayed_ratio"}, {}, {}};
  for (int v : checkpoints) {
    const auto llt = srw_llt_asymptote(p, v);
    const double exact = series[2 * v][0];
    const double ratio = exact / llt.asymptote;
    const double displayed_ratio = exact / llt.displayed_asymptote;
    rep.table->add({std::to_string(v), dec(exact), dec(llt.asymptote), dec(ratio), dec(llt.displayed_asymptote),
                    dec(displayed_ratio)},
                   {{"n", v},
                    {"p_2n_exact", exact},
                    {"asymptote", llt.asymptote},
                    {"ratio", ratio},
                    {"displayed_asymptote", llt.displayed_asymptote},
                    {"displayed_ratio", displayed_ratio}});
  }
  const auto llt = srw_llt_asymptote(p, n);
  rep.result = {{"rho", llt.rho},
                {"leading_constant", llt.leading_constant},
                {"displayed_constant", llt.displayed_constant},
                {"asymptote_form", "leading_constant * rho^(2n) * n^-5"}};
  return rep;
}

// Explicit models -------------------------------------------------------------

ChamberSet chamber_set(RunConfig& c) {
  const ModelKind kind = parse_model_kind(need(c.kind, "kind"));
  if (!c.r) c.r = c.q;
  const int q = need_small_integer(c.q, "q");
  const int r = need_small_integer(c.r, "r");
  return ChamberSet(build_model(kind, q, r));
}

Report model_audit(RunConfig& c) {
  const auto cs = chamber_set(c);
  const auto geo = audit_geometry(cs.model());
  const auto audit = audit_chamber_set(cs);
  const auto& sys = cs.system();
  nlohmann::json census = nlohmann::json::object();
  for (std::size_t w = 0; w < sys.size(); ++w) census[sys.element(w).to_string()] = cs.sphere(0, w).size();
  bool intersections = true;
  try {
    intersection_table(cs);
  } catch (const Error&) {
    intersections = false;
  }
  Report rep;
  rep.result = {{"points", cs.model().point_count()},
                {"lines", cs.model().line_count()},
                {"chambers", cs.size()},
                {"diameter", geo.diameter},
                {"girth", geo.girth},
                {"regular", geo.regular},
                {"geometry_passed", geo.passed},
                {"panel_sizes", audit.panel_sizes},
                {"sphere_census", audit.sphere_census},
                {"transposition", audit.transposition},
                {"sphere_sizes", census},
                {"intersection_numbers_consistent", intersections},
                {"srw_stationary", is_stationary(cs, simple_random_walk<Rational>(cs.algebra()))},
                {"model", to_json(cs.model())}};
  return rep;
}

Report simulate_cmd(RunConfig& c) {
  const auto cs = chamber_set(c);
  const int n = need_steps(c);
  const std::uint64_t seed = need(c.seed, "seed");
  const std::uint64_t trials = *(c.trials = c.trials.value_or(100000));
  if (trials < 1) throw UsageError("--trials must be ≥ 1");
  const auto spec = simple_random_walk<double>(cs.algebra());
  const auto result = simulate(cs, spec, n, trials, seed);
  const auto exact = exact_evolution(cs, spec, n);
  const auto& sys = cs.system();
  Report rep;
  rep.table = Table{{"chamber_id", "point", "line", "probability", "weyl_word"}, {}, {}};
  double max_z = 0.0;
  for (std::size_t x = 0; x < cs.size(); ++x) {
    const double freq = static_cast<double>(result.counts[x]) / static_cast<double>(trials);
    const double sd = std::sqrt(exact[x] * (1.0 - exact[x]) / static_cast<double>(trials));
    if (sd > 0.0) max_z = std::max(max_z, std::abs(freq - exact[x]) / sd);
    const auto [pt, ln] = cs.flag(x);
    const std::string word = sys.element(cs.delta(0, x)).to_string();
    rep.table->add({std::to_string(x), std::to_string(pt), std::to_string(ln), dec(freq), word},
                   {{"chamber_id", x},
                    {"point", pt},
                    {"line", ln},
                    {"count", result.counts[x]},
                    {"probability", freq},
                    {"exact", exact[x]},
                    {"weyl_word", word}});
  }
  rep.result = {{"rng", SplitMix64::kName}, {"start", 0}, {"max_binomial_z", max_z}};
  return rep;
}

Report a2_rho(RunConfig& c) {
  const Rational q = need_rational(c.q, "q");
  if (q <= 1) throw Error(ErrorKind::InvalidInput, "q must be > 1");
  Report rep;
  rep.result = {{"q", to_string(q)}, {"rho", a2_chamber_spectral_radius(q.get_d())}};
  return rep;
}

Report fuchsian_check(RunConfig& c) {
  const auto& k = need(c.k, "k");
  Report rep;
  rep.result = {{"k", k}, {"class", std::string(to_string(fuchsian_admissible(k)))}};
  return rep;
}

Report dispatch(RunConfig& c) {
  static const std::map<std::string, Report (*)(RunConfig&)> table = {
      {"polygon-pn", polygon_pn},   {"polygon-mix", polygon_mix}, {"quadrangle-closed-form", quadrangle_closed_form},
      {"feit-higman", feit_higman}, {"param-check", param_check}, {"c2-exact", c2_exact},
      {"c2-spectral", c2_spectral}, {"c2-llt", c2_llt},           {"model-audit", model_audit},
      {"simulate", simulate_cmd},   {"a2-rho", a2_rho},           {"fuchsian-check", fuchsian_check},
  };
  return table.at(c.command)(c);
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"command", command}};
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  put("m", m);
  put("q", q);
  put("r", r);
  put("n", n);
  put("grid", grid);
  put("trials", trials);
  put("seed", seed);
  put("mode", mode);
  put("out", out);
  put("format", format);
  put("kind", kind);
  put("k", k);
  return j;
}

void RunConfig::merge_defaults(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  static const std::vector<std::string> known = {"m",    "q",      "r",   "n",      "grid", "trials",
                                                 "seed", "mode",   "out", "format", "kind", "k"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("unknown config key '" + key + "'");
  }
  auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  try {
    if (!m && j.contains("m")) m = j["m"].get<int>();
    if (!q && j.contains("q")) q = text(j["q"]);
    if (!r && j.contains("r")) r = text(j["r"]);
    if (!n && j.contains("n")) n = j["n"].get<int>();
    if (!grid && j.contains("grid")) grid = j["grid"].get<std::string>();
    if (!trials && j.contains("trials")) trials = j["trials"].get<std::uint64_t>();
    if (!seed && j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    if (!mode && j.contains("mode")) mode = j["mode"].get<std::string>();
    if (!out && j.contains("out")) out = j["out"].get<std::string>();
    if (!format && j.contains("format")) format = j["format"].get<std::string>();
    if (!kind && j.contains("kind")) kind = j["kind"].get<std::string>();
    if (!k && j.contains("k")) k = j["k"].get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

std::vector<std::string> subcommands() {
  std::vector<std::string> out;
  for (const auto& c : commands()) out.push_back(c.name);
  return out;
}

void run(const RunConfig& config, std::ostream& out) {
  const Command& cmd = find_command(config.command);
  RunConfig resolved = config;
  const Report report = dispatch(resolved);
  emit(resolved, cmd, report, out);
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walks on Coxeter groups and buildings", "buildwalk"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  RunConfig config;
  int m = 0, n = 0;
  std::string q, r, grid, mode, out_path, format, kind, config_path;
  std::uint64_t trials = 0, seed = 0;
  std::vector<int> k;
  std::map<std::string, CLI::Option*> opts;
  for (const auto& cmd : commands()) app.add_subcommand(cmd.name, cmd.help)->fallthrough();
  opts["m"] = app.add_option("--m", m, "polygon order or Coxeter label");
  opts["q"] = app.add_option("--q", q, "thickness parameter q (integer or p/q)");
  opts["r"] = app.add_option("--r", r, "thickness parameter r (defaults to q)");
  opts["n"] = app.add_option("--n,--steps", n, "number of steps");
  opts["grid"] = app.add_option("--grid", grid, "quadrature grid N1xN2");
  opts["trials"] = app.add_option("--trials", trials, "Monte Carlo trials");
  opts["seed"] = app.add_option("--seed", seed, "Monte Carlo seed");
  opts["mode"] = app.add_option("--mode", mode, "scalar mode: rational or float");
  opts["out"] = app.add_option("--out", out_path, "output file (default stdout)");
  opts["format"] = app.add_option("--format", format, "csv or json");
  opts["kind"] = app.add_option("--kind", kind, "model kind for model-audit and simulate");
  opts["k"] = app.add_option("--k", k, "polygon angle denominators for fuchsian-check")->delimiter(',');
  app.add_option("--config", config_path, "JSON config file; flags take precedence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run 'buildwalk --help' for usage\n";
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  auto given = [&](const char* key) { return opts.at(key)->count() > 0; };
  if (given("m")) config.m = m;
  if (given("q")) config.q = q;
  if (given("r")) config.r = r;
  if (given("n")) config.n = n;
  if (given("grid")) config.grid = grid;
  if (given("trials")) config.trials = trials;
  if (given("seed")) config.seed = seed;
  if (given("mode")) config.mode = mode;
  if (given("out")) config.out = out_path;
  if (given("format")) config.format = format;
  if (given("kind")) config.kind = kind;
  if (given("k")) config.k = k;

  try {
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw UsageError("cannot read config file " + config_path);
      nlohmann::json j;
      try {
        file >> j;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
      }
      config.merge_defaults(j);
    }
    run(config, out);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    nlohmann::json obj = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
                          {"version", kVersion},
                          {"config", config.to_json()}};
    out << obj.dump(2) << '\n';
    return 1;
  }
}

}  // namespace buildwalk::cli
