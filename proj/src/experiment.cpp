#include "trotter/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "trotter/bessel.hpp"
#include "trotter/bounds.hpp"
#include "trotter/dense_oracle.hpp"
#include "trotter/hydrogen.hpp"

namespace trotter {
namespace {

using json = nlohmann::ordered_json;

// Every floating-point number leaving this module passes through here, so CSV
// cells and JSON values carry exactly nine significant digits.
std::string format9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// JSON numbers are the parse-back of the nine-digit rendering; serializing the
// rounded double reproduces those digits, keeping artifacts byte-stable.
json jnum(double v) { return json(std::strtod(format9(v).c_str(), nullptr)); }

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(const std::string& source, const std::string& message) {
  throw ConfigError(source + ": " + message);
}

long parse_long(const std::string& source, const std::string& key,
                const std::string& token) {
  try {
    size_t pos = 0;
    long v = std::stol(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(source, "key '" + key + "' expects an integer, got '" + token + "'");
  }
}

double parse_double(const std::string& source, const std::string& key,
                    const std::string& token) {
  try {
    size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size() || !std::isfinite(v))
      throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(source,
         "key '" + key + "' expects a finite number, got '" + token + "'");
  }
}

bool parse_bool(const std::string& source, const std::string& key,
                const std::string& token) {
  if (token == "true") return true;
  if (token == "false") return false;
  fail(source, "key '" + key + "' expects true or false, got '" + token + "'");
}

// Switching times are exact: each token is an integer or a ratio p/q.
Rational parse_rational(const std::string& source, const std::string& key,
                        const std::string& token) {
  size_t slash = token.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(token));
    boost::multiprecision::cpp_int num(token.substr(0, slash));
    boost::multiprecision::cpp_int den(token.substr(slash + 1));
    if (den == 0) throw std::invalid_argument(token);
    return Rational(num, den);
  } catch (const std::exception&) {
    fail(source, "key '" + key + "' expects rationals like 1/2, got '" + token +
                     "'");
  }
}

// Tracks which config keys a runner consumed, so anything left over is
// reported as unknown before any computation starts.
struct Reader {
  const ExperimentConfig& cfg;
  std::set<std::string> used;

  const std::string& source() const { return cfg.source; }

  bool has(const std::string& key) {
    if (!cfg.values.count(key)) return false;
    used.insert(key);
    return true;
  }

  std::string require(const std::string& key) {
    auto it = cfg.values.find(key);
    if (it == cfg.values.end())
      fail(cfg.source, "missing required key '" + key + "' for kind '" +
                           cfg.kind + "'");
    used.insert(key);
    return it->second;
  }

  std::string get(const std::string& key, const std::string& fallback) {
    return has(key) ? cfg.values.at(key) : fallback;
  }

  long get_long(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    return parse_long(cfg.source, key, trim(cfg.values.at(key)));
  }

  long require_long(const std::string& key) {
    return parse_long(cfg.source, key, trim(require(key)));
  }

  double get_double(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return parse_double(cfg.source, key, trim(cfg.values.at(key)));
  }

  double require_double(const std::string& key) {
    return parse_double(cfg.source, key, trim(require(key)));
  }

  bool get_bool(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    return parse_bool(cfg.source, key, trim(cfg.values.at(key)));
  }

  std::vector<std::string> require_tokens(const std::string& key) {
    auto toks = split_tokens(require(key));
    if (toks.empty())
      fail(cfg.source, "key '" + key + "' must be a non-empty list");
    return toks;
  }

  std::vector<long> require_longs(const std::string& key, long minimum) {
    std::vector<long> out;
    for (const auto& tok : require_tokens(key)) {
      long v = parse_long(cfg.source, key, tok);
      if (v < minimum)
        fail(cfg.source, "key '" + key + "' entries must be >= " +
                             std::to_string(minimum) + ", got " + tok);
      out.push_back(v);
    }
    return out;
  }

  void finish() {
    for (const auto& [key, value] : cfg.values)
      if (!used.count(key))
        fail(cfg.source,
             "unknown key '" + key + "' for kind '" + cfg.kind + "'");
  }
};

HydrogenLevel read_level(Reader& r) {
  long n = r.get_long("n", 1);
  long l = r.get_long("l", 0);
  if (n < 1) fail(r.source(), "key 'n' must be a positive principal number");
  if (l < 0 || l >= n)
    fail(r.source(), "key 'l' must satisfy 0 <= l < n");
  return HydrogenLevel{static_cast<int>(n), static_cast<int>(l), 0};
}

// A formula is either a named construction selected by 'order' alone, or an
// explicit switching-time list 'taus' of declared 'order', optionally starting
// on the H2 slot.
ProductFormula read_formula(Reader& r) {
  if (r.has("taus")) {
    long order = r.require_long("order");
    bool swap = r.get_bool("starts_with_h2", false);
    std::vector<Algebraic> taus;
    for (const auto& tok : r.require_tokens("taus"))
      taus.emplace_back(parse_rational(r.source(), "taus", tok));
    try {
      return ProductFormula(std::move(taus), static_cast<int>(order), swap);
    } catch (const std::invalid_argument& e) {
      fail(r.source(), std::string("key 'taus': ") + e.what());
    }
  }
  if (r.has("starts_with_h2"))
    fail(r.source(), "key 'starts_with_h2' requires an explicit 'taus' list");
  long order = r.get_long("order", 1);
  if (order == 1) return first_order_formula();
  if (order == 2 || order == 4 || order == 6)
    return suzuki_times(static_cast<int>(order));
  fail(r.source(),
       "key 'order' must be 1, 2, 4, or 6 when no 'taus' list is given");
}

struct Ctx {
  std::filesystem::path out;
  unsigned long long seed = 0;
  std::vector<std::string> basenames;
  json results = json::object();
  RunResult result;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// Curve artifact: one row per requested step count, fixed two-column header.
void emit_csv(Ctx& ctx, const std::string& name,
              const std::vector<std::pair<long, double>>& rows) {
  std::string text = "N,error\n";
  for (const auto& [n, err] : rows)
    text += std::to_string(n) + "," + format9(err) + "\n";
  write_file(ctx.out / name, text);
  ctx.basenames.push_back(name);
  ctx.result.artifacts.push_back((ctx.out / name).string());
}

void add_assertion(Ctx& ctx, const std::string& name, bool passed,
                   const std::string& detail) {
  ctx.result.assertions.push_back({name, passed, detail});
  if (!passed) ctx.result.passed = false;
}

std::optional<ScalingReport> fit_curve(
    const std::vector<std::pair<long, double>>& rows) {
  if (rows.size() < 4) return std::nullopt;
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, err] : rows) {
    if (err <= 0.0) return std::nullopt;
    pts.emplace_back(static_cast<double>(n), err);
  }
  return slope_fit(pts);
}

json fit_json(const std::optional<ScalingReport>& fit) {
  if (!fit) return nullptr;
  return json{{"slope", jnum(fit->slope)},
              {"intercept", jnum(fit->intercept)},
              {"residual_rms", jnum(fit->residual_rms)}};
}

// Kendall rank statistic between step count and curve value; negative means
// the value trends downward as the step count grows.
double kendall_tau(const std::vector<std::pair<long, double>>& rows) {
  long concordant = 0;
  long discordant = 0;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j) {
      double dn = static_cast<double>(rows[j].first - rows[i].first);
      double dx = rows[j].second - rows[i].second;
      if (dn * dx > 0) ++concordant;
      if (dn * dx < 0) ++discordant;
    }
  double pairs = 0.5 * static_cast<double>(rows.size()) *
                 static_cast<double>(rows.size() - 1);
  return pairs > 0 ? static_cast<double>(concordant - discordant) / pairs : 0.0;
}

// Declared slope assertion "target tolerance", applied to every named curve.
struct SlopeSpec {
  double target = 0;
  double tolerance = 0;
};

std::optional<SlopeSpec> read_slope_spec(Reader& r, size_t samples) {
  if (!r.has("assert_slope")) return std::nullopt;
  auto toks = split_tokens(r.cfg.values.at("assert_slope"));
  if (toks.size() != 2)
    fail(r.source(), "key 'assert_slope' expects two numbers: target tolerance");
  SlopeSpec spec{parse_double(r.source(), "assert_slope", toks[0]),
                 parse_double(r.source(), "assert_slope", toks[1])};
  if (spec.tolerance <= 0)
    fail(r.source(), "key 'assert_slope' tolerance must be positive");
  if (samples < 4)
    fail(r.source(), "key 'assert_slope' needs at least four entries in n_list");
  return spec;
}

void check_slope(Ctx& ctx, const std::string& name, const SlopeSpec& spec,
                 const std::optional<ScalingReport>& fit) {
  if (!fit) {
    add_assertion(ctx, name, false, "curve has a non-positive value, no fit");
    return;
  }
  bool ok = std::abs(fit->slope - spec.target) <= spec.tolerance;
  add_assertion(ctx, name, ok,
                "slope " + format9(fit->slope) + (ok ? " within " : " outside ") +
                    format9(spec.target) + " +/- " + format9(spec.tolerance));
}

void check_monotone(Ctx& ctx, const std::string& name,
                    const std::vector<std::pair<long, double>>& rows) {
  bool ok = true;
  for (size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].second < rows[i - 1].second)) ok = false;
  add_assertion(ctx, name, ok,
                ok ? "errors strictly decrease along n_list"
                   : "errors do not strictly decrease along n_list");
}

// Symmetric pointwise relative difference, largest over the shared step list.
double max_rel_diff(const std::vector<std::pair<long, double>>& a,
                    const std::vector<std::pair<long, double>>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double denom = std::max(std::abs(a[i].second), std::abs(b[i].second));
    if (denom > 0)
      worst = std::max(worst, std::abs(a[i].second - b[i].second) / denom);
  }
  return worst;
}

std::vector<std::pair<long, double>> as_rows(
    const std::vector<CurvePoint>& curve) {
  std::vector<std::pair<long, double>> rows;
  for (const auto& p : curve) rows.emplace_back(p.steps, p.error);
  return rows;
}

// ---------------------------------------------------------------------------
// bound-derivation: exact symbolic error bound of the configured formula.

void run_bound_derivation(Reader& r, Ctx& ctx) {
  ProductFormula pf = read_formula(r);
  bool simplify = r.get_bool("simplify", true);
  std::optional<long> expect_terms;
  if (r.has("assert_term_count"))
    expect_terms = r.require_long("assert_term_count");
  r.finish();

  BoundExpression be = derive_bound(pf, simplify);
  LooseBound lb = loose_bound(pf);

  json terms = json::array();
  for (const auto& [word, coeff] : be.terms)
    terms.push_back(json{{"word", word},
                         {"exact", coeff.to_exact_string()},
                         {"value", jnum(coeff.to_double())}});
  json realizable = json::array();
  for (const auto& word : lb.realizable_words) realizable.push_back(word);

  ctx.results = json{
      {"order", pf.order()},
      {"slots", pf.slots()},
      {"simplify_zero_eigenstate", simplify},
      {"global_factor",
       "t^" + std::to_string(be.time_power) + "/N^" +
           std::to_string(be.step_power)},
      {"term_count", be.terms.size()},
      {"terms", terms},
      {"loose_bound",
       json{{"tau_star", lb.tau_star.to_exact_string()},
            {"tau_star_value", jnum(lb.tau_star.to_double())},
            {"word_length", lb.word_length},
            {"realizable_words", realizable}}}};

  if (expect_terms)
    add_assertion(ctx, "term_count",
                  static_cast<long>(be.terms.size()) == *expect_terms,
                  std::to_string(be.terms.size()) + " terms, expected " +
                      std::to_string(*expect_terms));
}

// ---------------------------------------------------------------------------
// hydrogen-bound-curve: closed-form bound values over the step list.

void run_hydrogen_bound_curve(Reader& r, Ctx& ctx) {
  HydrogenLevel level = read_level(r);
  long order = r.get_long("order", 1);
  if (order != 1 && order != 2)
    fail(r.source(), "key 'order' must be 1 or 2 for hydrogen-bound-curve");
  bool potential_outer = r.get_bool("potential_outer", false);
  if (potential_outer && order != 2)
    fail(r.source(), "key 'potential_outer' applies only to order 2");
  double t = r.get_double("t", 1.0);
  if (t <= 0) fail(r.source(), "key 't' must be positive");
  std::vector<long> steps = r.require_longs("n_list", 1);
  auto slope_spec = read_slope_spec(r, steps.size());
  r.finish();

  std::vector<std::pair<long, double>> rows;
  if (order == 1) {
    for (long N : steps)
      rows.emplace_back(N, first_order_bound(level, ReducedTime(t), N));
  } else {
    SecondOrderData data = second_order_data(level, potential_outer);
    for (long N : steps)
      rows.emplace_back(N, second_order_fractional(data, t, N));
  }
  emit_csv(ctx, "curve.csv", rows);

  auto fit = fit_curve(rows);
  json terms = json::array();
  if (order == 1)
    for (const auto& term : first_order_terms(level))
      terms.push_back(json{{"coefficient", jnum(term.coefficient)},
                           {"t_power", jnum(term.t_power)},
                           {"n_power", jnum(term.n_power)}});
  ctx.results = json{{"n", level.n},
                     {"l", level.l},
                     {"order", order},
                     {"potential_outer", potential_outer},
                     {"t", jnum(t)},
                     {"terms", terms},
                     {"first", jnum(rows.front().second)},
                     {"last", jnum(rows.back().second)},
                     {"fit", fit_json(fit)}};

  if (slope_spec) check_slope(ctx, "slope", *slope_spec, fit);
}

// ---------------------------------------------------------------------------
// sim-sweep: measured Trotter error curves in the spherical-Bessel simulator,
// one curve per entry of modes_list.

void run_sim_sweep(Reader& r, Ctx& ctx) {
  std::string state = r.get("state", "level");
  if (state != "level" && state != "sto3g")
    fail(r.source(), "key 'state' must be level or sto3g");
  std::optional<HydrogenLevel> level;
  if (state == "level") {
    level = read_level(r);
  } else if (r.has("n") || r.has("l")) {
    fail(r.source(), "state = sto3g fixes the radial function; drop 'n'/'l'");
  }
  ProductFormula pf = read_formula(r);
  double t = r.get_double("t", 1.0);
  if (t <= 0) fail(r.source(), "key 't' must be positive");
  std::vector<long> steps = r.require_longs("n_list", 1);
  double radius = r.require_double("radius");
  if (radius <= 0) fail(r.source(), "key 'radius' must be positive");
  std::vector<long> modes_list = r.require_longs("modes_list", 8);
  std::string reference = r.get("reference", "discrete");
  if (reference != "discrete" && reference != "level")
    fail(r.source(), "key 'reference' must be discrete or level");
  if (reference == "level" && state == "sto3g")
    fail(r.source(), "reference = level needs a hydrogen eigenstate, not sto3g");
  double loss_threshold = r.get_double("loss_threshold", 1e-6);
  auto slope_spec = read_slope_spec(r, steps.size());
  std::optional<double> rel_spec;
  if (r.has("assert_max_rel_diff")) {
    rel_spec = r.require_double("assert_max_rel_diff");
    if (modes_list.size() < 2)
      fail(r.source(),
           "key 'assert_max_rel_diff' needs at least two entries in modes_list");
  }
  bool monotone = r.get_bool("assert_monotone", false);
  r.finish();

  // The sto3g profile is normalized by continuum quadrature on [0, radius],
  // so the reported projection loss measures basis truncation alone.
  std::function<double(double)> profile;
  if (state == "sto3g") {
    using boost::math::quadrature::gauss_kronrod;
    double norm2 = gauss_kronrod<double, 61>::integrate(
        [](double u) {
          double f = sto3g_state(u);
          return u * u * f * f;
        },
        0.0, radius, 10);
    double scale = 1.0 / std::sqrt(norm2);
    profile = [scale](double u) { return scale * sto3g_state(u); };
  }

  json curves = json::array();
  std::vector<std::vector<std::pair<long, double>>> all_rows;
  for (long modes : modes_list) {
    BesselBasis basis;
    try {
      basis = build_basis(level ? level->l : 0, radius, static_cast<int>(modes));
    } catch (const std::invalid_argument& e) {
      fail(r.source(), std::string("key 'modes_list': ") + e.what());
    }
    Projection proj = level ? project_level(basis, *level)
                            : project_function(basis, profile);
    if (proj.loss > loss_threshold) {
      std::ostringstream os;
      os << "projection loss " << proj.loss << " exceeds " << loss_threshold
         << " for the basis with R = " << radius << " and " << modes
         << " modes";
      throw std::runtime_error(os.str());
    }
    std::vector<CurvePoint> curve;
    if (reference == "level") {
      CurveOptions opts;
      opts.projection_loss_threshold = loss_threshold;
      curve = trotter_error_curve(*level, pf, t, steps, basis, opts);
    } else {
      curve = trotter_error_curve(proj.state, pf, t, steps);
    }
    auto rows = as_rows(curve);
    emit_csv(ctx, "sweep_modes" + std::to_string(modes) + ".csv", rows);
    auto fit = fit_curve(rows);
    curves.push_back(json{{"modes", modes},
                          {"projection_loss", jnum(proj.loss)},
                          {"first", jnum(rows.front().second)},
                          {"last", jnum(rows.back().second)},
                          {"fit", fit_json(fit)}});
    if (slope_spec)
      check_slope(ctx, "slope(modes=" + std::to_string(modes) + ")",
                  *slope_spec, fit);
    if (monotone)
      check_monotone(ctx, "monotone(modes=" + std::to_string(modes) + ")",
                     rows);
    all_rows.push_back(std::move(rows));
  }

  double worst_rel = 0.0;
  for (size_t i = 0; i < all_rows.size(); ++i)
    for (size_t j = i + 1; j < all_rows.size(); ++j)
      worst_rel = std::max(worst_rel, max_rel_diff(all_rows[i], all_rows[j]));

  ctx.results = json{{"state", state},
                     {"reference", reference},
                     {"t", jnum(t)},
                     {"radius", jnum(radius)},
                     {"curves", curves},
                     {"max_rel_diff",
                      all_rows.size() > 1 ? jnum(worst_rel) : json(nullptr)}};

  if (rel_spec)
    add_assertion(ctx, "max_rel_diff", worst_rel <= *rel_spec,
                  format9(worst_rel) +
                      (worst_rel <= *rel_spec ? " within " : " exceeds ") +
                      format9(*rel_spec));
}

// ---------------------------------------------------------------------------
// ionization: bound-space leakage of the Trotterized evolution over the step
// list, next to the leakage of the exact discrete evolution.

void run_ionization(Reader& r, Ctx& ctx) {
  HydrogenLevel level = read_level(r);
  ProductFormula pf = read_formula(r);
  double t = r.get_double("t", 1.0);
  if (t <= 0) fail(r.source(), "key 't' must be positive");
  std::vector<long> steps = r.require_longs("n_list", 1);
  double radius = r.require_double("radius");
  if (radius <= 0) fail(r.source(), "key 'radius' must be positive");
  long modes = r.require_long("modes");
  long n_max = r.require_long("n_max");
  if (n_max < level.n)
    fail(r.source(), "key 'n_max' must include the initial level");
  bool expect_negative = r.get_bool("assert_kendall_negative", false);
  if (expect_negative && steps.size() < 2)
    fail(r.source(),
         "key 'assert_kendall_negative' needs at least two entries in n_list");
  std::optional<double> leak_spec;
  if (r.has("assert_exact_leakage_max"))
    leak_spec = r.require_double("assert_exact_leakage_max");
  r.finish();

  BesselBasis basis;
  try {
    basis = build_basis(level.l, radius, static_cast<int>(modes));
  } catch (const std::invalid_argument& e) {
    fail(r.source(), std::string("key 'modes': ") + e.what());
  }
  Projection proj = project_level(basis, level);
  double exact_leak = bound_space_leakage(exact_evolve(proj.state, t),
                                          static_cast<int>(n_max));
  std::vector<std::pair<long, double>> rows;
  for (long N : steps)
    rows.emplace_back(N, ionization_probability(level, pf, t, N, basis,
                                                static_cast<int>(n_max)));
  emit_csv(ctx, "ionization.csv", rows);

  std::optional<double> tau;
  if (rows.size() >= 2) tau = kendall_tau(rows);
  ctx.results = json{{"n", level.n},
                     {"l", level.l},
                     {"t", jnum(t)},
                     {"radius", jnum(radius)},
                     {"modes", modes},
                     {"n_max", n_max},
                     {"projection_loss", jnum(proj.loss)},
                     {"exact_leakage", jnum(exact_leak)},
                     {"kendall_tau", tau ? jnum(*tau) : json(nullptr)},
                     {"first", jnum(rows.front().second)},
                     {"last", jnum(rows.back().second)}};

  if (expect_negative)
    add_assertion(ctx, "kendall_negative", *tau < 0,
                  "kendall tau " + format9(*tau) +
                      (*tau < 0 ? " is negative" : " is not negative"));
  if (leak_spec)
    add_assertion(ctx, "exact_leakage", exact_leak <= *leak_spec,
                  format9(exact_leak) +
                      (exact_leak <= *leak_spec ? " within " : " exceeds ") +
                      format9(*leak_spec));
}

// ---------------------------------------------------------------------------
// order-comparison: error against applied unitary count for several formula
// orders on the same initial state. The N column of each CSV carries the
// total fused unitary count realizing that row's step count.

void run_order_comparison(Reader& r, Ctx& ctx) {
  HydrogenLevel level = read_level(r);
  double t = r.get_double("t", 1.0);
  if (t <= 0) fail(r.source(), "key 't' must be positive");
  std::vector<long> steps = r.require_longs("n_list", 1);
  double radius = r.require_double("radius");
  if (radius <= 0) fail(r.source(), "key 'radius' must be positive");
  long modes = r.require_long("modes");
  std::vector<long> orders{1, 2, 4};
  if (r.has("orders")) {
    orders.clear();
    for (const auto& tok : r.require_tokens("orders")) {
      long p = parse_long(r.source(), "orders", tok);
      if (p != 1 && p != 2 && p != 4)
        fail(r.source(), "key 'orders' entries must be 1, 2, or 4");
      if (std::find(orders.begin(), orders.end(), p) != orders.end())
        fail(r.source(), "key 'orders' entries must be distinct");
      orders.push_back(p);
    }
  }
  double loss_threshold = r.get_double("loss_threshold", 1e-6);
  bool monotone = r.get_bool("assert_monotone", false);
  bool ordering = r.get_bool("assert_ordering", false);
  if (ordering && orders.size() < 2)
    fail(r.source(), "key 'assert_ordering' needs at least two orders");
  r.finish();

  BesselBasis basis;
  try {
    basis = build_basis(level.l, radius, static_cast<int>(modes));
  } catch (const std::invalid_argument& e) {
    fail(r.source(), std::string("key 'modes': ") + e.what());
  }
  Projection proj = project_level(basis, level);
  if (proj.loss > loss_threshold) {
    std::ostringstream os;
    os << "projection loss " << proj.loss << " exceeds " << loss_threshold
       << " for the basis with R = " << radius << " and " << modes << " modes";
    throw std::runtime_error(os.str());
  }

  json per_order = json::array();
  std::vector<double> final_errors;
  for (long p : orders) {
    ProductFormula pf = p == 1 ? first_order_formula()
                               : suzuki_times(static_cast<int>(p));
    auto curve = trotter_error_curve(proj.state, pf, t, steps);
    std::vector<std::pair<long, double>> csv_rows;
    json rows = json::array();
    std::vector<std::pair<long, double>> step_rows;
    for (const auto& point : curve) {
      long unitaries = fused_unitary_count(pf, point.steps);
      csv_rows.emplace_back(unitaries, point.error);
      step_rows.emplace_back(point.steps, point.error);
      rows.push_back(json{{"steps", point.steps},
                          {"unitaries", unitaries},
                          {"error", jnum(point.error)}});
    }
    emit_csv(ctx, "order" + std::to_string(p) + ".csv", csv_rows);
    auto fit = fit_curve(step_rows);
    per_order.push_back(json{{"order", p},
                             {"slots", pf.slots()},
                             {"rows", rows},
                             {"fit", fit_json(fit)}});
    if (monotone)
      check_monotone(ctx, "monotone(order=" + std::to_string(p) + ")",
                     step_rows);
    final_errors.push_back(step_rows.back().second);
  }

  ctx.results = json{{"n", level.n},
                     {"l", level.l},
                     {"t", jnum(t)},
                     {"radius", jnum(radius)},
                     {"modes", modes},
                     {"projection_loss", jnum(proj.loss)},
                     {"orders", per_order}};

  if (ordering) {
    bool ok = true;
    for (size_t i = 1; i < final_errors.size(); ++i)
      if (!(final_errors[i] < final_errors[i - 1])) ok = false;
    add_assertion(ctx, "ordering", ok,
                  ok ? "higher orders end with strictly smaller error"
                     : "higher orders do not end with strictly smaller error");
  }
}

// ---------------------------------------------------------------------------
// oracle-battery: seeded random Hermitian pairs checked against the derived
// bounds; the CSV records the largest measured error per step count.

void run_oracle_battery(Reader& r, Ctx& ctx) {
  long dim = r.get_long("dim", 4);
  if (dim < 2 || dim > 64)
    fail(r.source(), "key 'dim' must lie in [2, 64]");
  long trials = r.get_long("trials", 100);
  if (trials < 1) fail(r.source(), "key 'trials' must be positive");
  double t = r.get_double("t", 1.0);
  if (t <= 0) fail(r.source(), "key 't' must be positive");
  std::vector<long> steps = r.require_longs("n_list", 1);
  std::vector<long> orders{1, 2, 4};
  if (r.has("orders")) {
    orders.clear();
    for (const auto& tok : r.require_tokens("orders")) {
      long p = parse_long(r.source(), "orders", tok);
      if (p != 1 && p != 2 && p != 4)
        fail(r.source(), "key 'orders' entries must be 1, 2, or 4");
      orders.push_back(p);
    }
  }
  bool expect_clean = r.get_bool("assert_no_violations", true);
  r.finish();

  std::vector<ProductFormula> formulas;
  for (long p : orders)
    formulas.push_back(p == 1 ? first_order_formula()
                              : suzuki_times(static_cast<int>(p)));

  std::mt19937_64 rng(ctx.seed);
  long violations = 0;
  double max_ratio = 0.0;
  json worst = nullptr;
  std::vector<double> peak(steps.size(), 0.0);
  for (long trial = 0; trial < trials; ++trial) {
    HermitianPair pair = random_pair(static_cast<int>(dim), rng);
    for (size_t oi = 0; oi < formulas.size(); ++oi)
      for (size_t ni = 0; ni < steps.size(); ++ni) {
        BoundValidation v =
            bound_validation(pair, formulas[oi], t, steps[ni]);
        if (!v.holds) ++violations;
        peak[ni] = std::max(peak[ni], v.measured);
        double ratio = v.bound > 0 ? v.measured / v.bound : 0.0;
        if (ratio > max_ratio) {
          max_ratio = ratio;
          worst = json{{"trial", trial},
                       {"order", orders[oi]},
                       {"steps", steps[ni]},
                       {"measured", jnum(v.measured)},
                       {"bound", jnum(v.bound)}};
        }
      }
  }

  std::vector<std::pair<long, double>> rows;
  for (size_t ni = 0; ni < steps.size(); ++ni)
    rows.emplace_back(steps[ni], peak[ni]);
  emit_csv(ctx, "battery.csv", rows);

  json order_list = json::array();
  for (long p : orders) order_list.push_back(p);
  ctx.results = json{{"dim", dim},
                     {"trials", trials},
                     {"orders", order_list},
                     {"t", jnum(t)},
                     {"violations", violations},
                     {"max_ratio", jnum(max_ratio)},
                     {"worst", worst}};

  if (expect_clean)
    add_assertion(ctx, "no_violations", violations == 0,
                  std::to_string(violations) + " of " +
                      std::to_string(trials * static_cast<long>(
                                                  formulas.size() *
                                                  steps.size())) +
                      " checks violated the bound");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source) {
  ExperimentConfig cfg;
  cfg.source = source;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(source, "line " + std::to_string(line_no) +
                       " is not a 'key = value' entry");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() ||
        key.find_first_not_of(
            "abcdefghijklmnopqrstuvwxyz0123456789_") != std::string::npos)
      fail(source, "line " + std::to_string(line_no) +
                       " has an invalid key '" + key + "'");
    if (cfg.values.count(key) || (key == "kind" && !cfg.kind.empty()))
      fail(source, "duplicate key '" + key + "'");
    if (key == "kind")
      cfg.kind = value;
    else
      cfg.values[key] = value;
  }
  if (cfg.kind.empty()) fail(source, "missing required key 'kind'");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << f.rdbuf();
  return parse_config_text(text.str(), path);
}

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{
      "bound-derivation", "hydrogen-bound-curve", "sim-sweep",
      "ionization",       "order-comparison",     "oracle-battery"};
  return kinds;
}

RunResult run_experiment(const ExperimentConfig& config,
                         const RunOptions& options) {
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), config.kind) == kinds.end()) {
    std::string known;
    for (const auto& k : kinds) known += (known.empty() ? "" : ", ") + k;
    fail(config.source,
         "unknown kind '" + config.kind + "'; expected one of " + known);
  }

  Reader reader{config, {}};
  // The output directory is resolved by the caller; the seed default keeps
  // seedless runs deterministic. A config seed stays consumed (and valid)
  // even when the command line overrides it.
  reader.has("output_dir");
  unsigned long long config_seed =
      static_cast<unsigned long long>(reader.get_long("seed", 12345));
  unsigned long long seed = options.seed ? *options.seed : config_seed;

  Ctx ctx;
  ctx.out = options.output_dir;
  ctx.seed = seed;
  std::error_code ec;
  std::filesystem::create_directories(ctx.out, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" +
                             ctx.out.string() + "': " + ec.message());

  if (config.kind == "bound-derivation")
    run_bound_derivation(reader, ctx);
  else if (config.kind == "hydrogen-bound-curve")
    run_hydrogen_bound_curve(reader, ctx);
  else if (config.kind == "sim-sweep")
    run_sim_sweep(reader, ctx);
  else if (config.kind == "ionization")
    run_ionization(reader, ctx);
  else if (config.kind == "order-comparison")
    run_order_comparison(reader, ctx);
  else
    run_oracle_battery(reader, ctx);

  json assertions = json::array();
  for (const auto& a : ctx.result.assertions)
    assertions.push_back(
        json{{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});

  json config_echo = json::object();
  config_echo["kind"] = config.kind;
  for (const auto& [key, value] : config.values) config_echo[key] = value;

  json artifact_names = json::array();
  for (const auto& name : ctx.basenames) artifact_names.push_back(name);

  json summary = json{{"kind", config.kind},
                      {"config", config_echo},
                      {"seed", seed},
                      {"artifacts", artifact_names},
                      {"results", ctx.results},
                      {"assertions", assertions},
                      {"passed", ctx.result.passed}};
  write_file(ctx.out / "summary.json", summary.dump(2) + "\n");
  ctx.result.artifacts.push_back((ctx.out / "summary.json").string());
  return ctx.result;
}

}  // namespace trotter
