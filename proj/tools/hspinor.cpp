// hspinor: profiles, reflection scan, asymptotic table, flat-limit study and
// verification suites, written as CSV or JSON.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hspinor/bessel_repr.hpp"
#include "hspinor/dirac.hpp"
#include "hspinor/parallel.hpp"
#include "hspinor/scalar.hpp"
#include "hspinor/verify.hpp"
#include "hspinor/weyl.hpp"

using json = nlohmann::json;
using namespace hspinor;

namespace {

enum Exit { ok = 0, verification_failed = 1, config_error = 2, numerical_error = 3, inconclusive = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- effective configuration ----

struct RunConfig {
  std::optional<double> epsilon, k1, k2, mass;
  std::optional<std::string> helicity, type, rep, equation, variant, branch, suite;
  std::optional<double> zmin, zmax;
  std::optional<int> points;
  std::optional<std::string> format, out;
  std::optional<double> tol;
  std::optional<std::vector<double>> eps_list, radii;
  std::optional<int> log_grid, window_points;
  std::optional<double> eps_min, eps_max, x3_min, x3_max;
  std::optional<std::string> inject_fault;
};

// one config key: how to fill it from a config file when the flag was not given
struct Field {
  std::string key;
  std::function<bool()> is_set;
  std::function<void(const json&)> load;
};

std::string flag_of(const std::string& key) {
  std::string f = "--" + key;
  for (auto& ch : f)
    if (ch == '_') ch = '-';
  return f;
}

template <class T>
CLI::Option* bind_opt(CLI::App* app, std::vector<Field>& fields, const std::string& key, std::optional<T>& slot,
          const std::string& help) {
  auto* o = app->add_option_function<T>(flag_of(key), [&slot](const T& v) { slot = v; }, help);
  fields.push_back({key, [&slot] { return slot.has_value(); }, [&slot](const json& j) { slot = j.get<T>(); }});
  return o;
}

// flags win; then the file; defaults are applied by the commands
void load_config(const std::string& path, const std::vector<Field>& fields) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  // a JSON output file can be fed back: its metadata carries the effective config
  if (j.contains("metadata") && j["metadata"].contains("config")) j = j["metadata"]["config"];
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Field* f = nullptr;
    for (const auto& x : fields)
      if (x.key == it.key()) f = &x;
    if (!f) throw ConfigError("unknown config key '" + it.key() + "' for this command");
    if (f->is_set()) continue;
    try {
      f->load(it.value());
    } catch (const json::exception&) {
      throw ConfigError("config key '" + it.key() + "' has the wrong type");
    }
  }
}

int parse_helicity(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return +1;
  if (s == "-" || s == "-1") return -1;
  throw ConfigError("helicity must be + or - (got '" + s + "')");
}
std::string helicity_str(int h) { return h > 0 ? "+" : "-"; }

dirac::SolutionType parse_type(const std::string& s) {
  try {
    return dirac::type_from_string(s);
  } catch (const std::exception&) {
    throw ConfigError("type must be I or II (got '" + s + "')");
  }
}

void check_grid(double zmin, double zmax, int n) {
  if (!(n >= 16)) throw ConfigError("points must be at least 16");
  if (!std::isfinite(zmin) || !std::isfinite(zmax) || !(zmin < zmax)) throw ConfigError("zmin must be below zmax");
}

// ---- output ----

using Cell = std::variant<double, long long, std::string, bool>;

struct Output {
  std::string command;
  json config;
  json meta = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return csv_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

void write_output(const Output& o, const std::string& format, const std::string& path) {
  std::ostringstream os;
  if (format == "csv") {
    os << "# tool: hspinor " << version << "\n";
    os << "# command: " << o.command << "\n";
    os << "# config: " << o.config.dump() << "\n";
    for (auto it = o.meta.begin(); it != o.meta.end(); ++it) os << "# " << it.key() << ": " << it.value().dump() << "\n";
    for (std::size_t i = 0; i < o.columns.size(); ++i) os << (i ? "," : "") << o.columns[i];
    os << "\n";
    for (const auto& r : o.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
  } else {
    json j;
    j["metadata"] = o.meta;
    j["metadata"]["tool"] = "hspinor";
    j["metadata"]["version"] = std::string(version);
    j["metadata"]["command"] = o.command;
    j["metadata"]["config"] = o.config;
    j["columns"] = o.columns;
    json rows = json::array();
    for (const auto& r : o.rows) {
      json row = json::array();
      for (const auto& c : r) row.push_back(json_cell(c));
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    os << j.dump(1) << "\n";
  }
  if (path.empty() || path == "-") {
    std::cout << os.str();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  f << os.str();
}

// continuity-based unwrapping along the grid
std::vector<double> unwrap(const std::vector<Complex>& v) {
  std::vector<double> ph(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double a = std::arg(v[i]);
    if (i > 0) a += 2.0 * M_PI * std::round((ph[i - 1] - a) / (2.0 * M_PI));
    ph[i] = a;
  }
  return ph;
}

std::string out_format(const RunConfig& c) {
  const std::string f = c.format.value_or("csv");
  if (f != "csv" && f != "json") throw ConfigError("format must be csv or json (got '" + f + "')");
  return f;
}

// ---- commands ----

Output cmd_eval(const RunConfig& c) {
  Output o;
  o.command = "eval";
  const std::string eq = c.equation.value_or("dirac");
  const std::string rep = c.rep.value_or("kummer");
  if (eq != "scalar" && eq != "dirac" && eq != "weyl")
    throw ConfigError("equation must be scalar, dirac or weyl (got '" + eq + "')");
  if (rep != "kummer" && eq != "dirac") throw ConfigError("rep " + rep + " exists only for the dirac equation");

  json cfg;
  cfg["equation"] = eq;
  std::vector<std::string> names;
  std::function<std::vector<Complex>(double)> eval;
  double zmin = 0.0, zmax = 0.0;
  int n = 0;

  if (eq == "scalar") {
    scalar::ScalarParams p{c.epsilon.value_or(5.0), c.k1.value_or(3.0), c.k2.value_or(4.0)};
    p.validate();
    const auto v = scalar::variant_from_string(c.variant.value_or("f1"));
    const auto def = scalar::default_grid(p);
    zmin = c.zmin.value_or(def.front());
    zmax = c.zmax.value_or(def.back());
    n = c.points.value_or(512);
    cfg["epsilon"] = p.epsilon;
    cfg["k1"] = p.k1;
    cfg["k2"] = p.k2;
    cfg["variant"] = std::string(scalar::to_string(v));
    o.meta["critical_point"] = scalar::critical_point(p);
    names = {"f"};
    eval = [p, v](double z) { return std::vector<Complex>{scalar::scalar_solution(v, p, z).v}; };
  } else if (eq == "weyl") {
    weyl::WeylParams p{c.epsilon.value_or(3.0), c.k1.value_or(1.0), c.k2.value_or(2.0),
                       parse_helicity(c.helicity.value_or("-"))};
    p.validate();
    const auto t = parse_type(c.type.value_or("I"));
    const auto def = weyl::standard_grid(p, 2);
    zmin = c.zmin.value_or(def.front());
    zmax = c.zmax.value_or(def.back());
    n = c.points.value_or(512);
    cfg["epsilon"] = p.epsilon;
    cfg["k1"] = p.k1;
    cfg["k2"] = p.k2;
    cfg["helicity"] = helicity_str(p.sign);
    cfg["type"] = std::string(dirac::to_string(t));
    names = {"h1", "h2"};
    eval = [p, t](double z) {
      const auto h = weyl::build_weyl(t, p, z);
      return std::vector<Complex>{h.h1.v, h.h2.v};
    };
  } else {
    dirac::WaveParams w{c.epsilon.value_or(5.0), c.k1.value_or(3.0), c.k2.value_or(4.0), c.mass.value_or(3.0),
                        parse_helicity(c.helicity.value_or("+"))};
    const bool axial = w.k1 == 0.0 && w.k2 == 0.0;
    w.validate(!axial, !axial);
    cfg["epsilon"] = w.epsilon;
    cfg["k1"] = w.k1;
    cfg["k2"] = w.k2;
    cfg["mass"] = w.m;
    cfg["helicity"] = helicity_str(w.helicity);
    cfg["rep"] = rep;
    names = {"f1", "f2", "f3", "f4"};
    n = c.points.value_or(512);
    if (axial) {
      if (rep != "kummer") throw ConfigError("k = 0 has only the plane-wave branches (rep kummer)");
      const std::string b = c.branch.value_or("C1");
      if (b != "C1" && b != "C2") throw ConfigError("branch must be C1 or C2 (got '" + b + "')");
      const auto br = b == "C1" ? dirac::AxialBranch::C1 : dirac::AxialBranch::C2;
      cfg["branch"] = b;
      zmin = c.zmin.value_or(-4.0);
      zmax = c.zmax.value_or(4.0);
      eval = [w, br](double z) {
        const auto s = dirac::axial_solution(w, br, z);
        return std::vector<Complex>{s.f[0].v, s.f[1].v, s.f[2].v, s.f[3].v};
      };
    } else {
      const auto t = parse_type(c.type.value_or("I"));
      cfg["type"] = std::string(dirac::to_string(t));
      const auto def = dirac::standard_grid(w, 2);
      zmin = c.zmin.value_or(def.front());
      zmax = c.zmax.value_or(def.back());
      o.meta["turning_point"] = w.z_turn();
      if (rep == "kummer") {
        eval = [w, t](double z) {
          const auto s = dirac::build_solution(t, w, z);
          return std::vector<Complex>{s.f[0].v, s.f[1].v, s.f[2].v, s.f[3].v};
        };
      } else {
        const bessel_repr::Row row{bessel_repr::representation_from_string(rep), t};
        const double r = w.ratio();
        eval = [w, row, r](double z) {
          const auto ph = bessel_repr::build_bessel_solution(row, w, z);
          const auto f = bessel_repr::from_phi_variables(ph, w.k1, w.k2, z);
          return std::vector<Complex>{f.f1.v, f.f2.v, r * f.f1.v, r * f.f2.v};
        };
      }
    }
  }
  check_grid(zmin, zmax, n);
  cfg["zmin"] = zmin;
  cfg["zmax"] = zmax;
  cfg["points"] = n;
  o.config = cfg;

  const auto grid = linspace(zmin, zmax, n);
  const auto vals = map_grid(grid, eval);
  o.columns = {"z"};
  for (const auto& nm : names)
    for (const char* pre : {"re_", "im_", "abs_", "phase_", "abs_reduced_"}) o.columns.push_back(pre + nm);
  std::vector<std::vector<double>> phase;
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::vector<Complex> col(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) col[i] = vals[i][k];
    phase.push_back(unwrap(col));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i]};
    for (std::size_t k = 0; k < names.size(); ++k) {
      const Complex v = vals[i][k];
      row.insert(row.end(), {v.real(), v.imag(), std::abs(v), phase[k][i], std::abs(v) * std::exp(-grid[i])});
    }
    o.rows.push_back(std::move(row));
  }
  return o;
}

Output cmd_reflection(const RunConfig& c) {
  Output o;
  o.command = "reflection";
  std::vector<double> eps;
  json cfg;
  if (c.eps_list) {
    eps = *c.eps_list;
    if (eps.empty()) throw ConfigError("eps_list is empty");
    cfg["eps_list"] = eps;
  } else {
    const int n = c.log_grid.value_or(50);
    const double lo = c.eps_min.value_or(1.001), hi = c.eps_max.value_or(1000.0);
    if (n < 1) throw ConfigError("log_grid needs at least one point");
    if (!(lo > 1.0) || !(hi >= lo)) throw ConfigError("need 1 < eps_min <= eps_max");
    for (double t : linspace(std::log(lo), std::log(hi), std::max(n, 2))) eps.push_back(std::exp(t));
    if (n == 1) eps.resize(1);
    cfg["log_grid"] = n;
    cfg["eps_min"] = lo;
    cfg["eps_max"] = hi;
  }
  for (double e : eps)
    if (!(e > 1.0)) throw ConfigError("epsilon must exceed 1 (got " + csv_number(e) + ")");
  o.config = cfg;
  const auto R = map_grid(eps, [](double e) { return scalar::reflection_coefficient(e).R; });
  o.columns = {"epsilon", "R", "abs_R_minus_1"};
  double worst = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double d = std::abs(R[i] - 1.0);
    worst = std::max(worst, d);
    o.rows.push_back({eps[i], R[i], d});
  }
  o.meta["max_abs_R_minus_1"] = worst;
  return o;
}

Output cmd_table7(const RunConfig& c, bool& mismatch) {
  namespace br = bessel_repr;
  Output o;
  o.command = "table7";
  dirac::WaveParams w{c.epsilon.value_or(5.0), c.k1.value_or(3.0), c.k2.value_or(4.0), c.mass.value_or(3.0),
                      parse_helicity(c.helicity.value_or("-"))};
  w.validate();
  const int wp = c.window_points.value_or(33);
  if (wp < 9) throw ConfigError("window_points must be at least 9");
  o.config = {{"epsilon", w.epsilon}, {"k1", w.k1},           {"k2", w.k2},
              {"mass", w.m},          {"helicity", helicity_str(w.helicity)}, {"window_points", wp}};
  const auto tab = br::asymptotic_table(w, br::default_z_minus(w), br::default_z_plus(w), wp);
  o.meta["p"] = tab.p;
  o.meta["z_minus"] = tab.z_minus;
  o.meta["z_plus"] = tab.z_plus;
  o.meta["all_match"] = tab.all_match();
  o.meta["hankel_unique_decay"] = tab.hankel_unique_decay();
  o.columns = {"rep",         "type",        "component",      "wavenumber",     "slope", "large_slope",
               "small_label", "large_label", "expected_small", "expected_large", "match"};
  for (const auto& r : tab.rows)
    for (int k = 0; k < 2; ++k) {
      const auto& cc = r.comp[k];
      o.rows.push_back({std::string(br::to_string(r.row.rep)), std::string(dirac::to_string(r.row.type)),
                        static_cast<long long>(k + 1), cc.wavenumber, cc.slope, cc.large_slope, cc.small_label,
                        cc.large_label, cc.expected_small, cc.expected_large, cc.matches()});
    }
  mismatch = !tab.all_match() || !tab.hankel_unique_decay();
  return o;
}

Output cmd_flatlimit(const RunConfig& c) {
  Output o;
  o.command = "flatlimit";
  dirac::FlatLimitConfig f;
  f.E = c.epsilon.value_or(f.E);
  f.M = c.mass.value_or(f.M);
  f.P1 = c.k1.value_or(f.P1);
  f.P2 = c.k2.value_or(f.P2);
  f.helicity = parse_helicity(c.helicity.value_or("+"));
  if (c.radii) f.radii = *c.radii;
  f.x3_min = c.x3_min.value_or(f.x3_min);
  f.x3_max = c.x3_max.value_or(f.x3_max);
  f.points = c.points.value_or(f.points);
  check_grid(f.x3_min, f.x3_max, f.points);
  std::optional<dirac::SolutionType> only;
  if (c.type) only = parse_type(*c.type);
  o.config = {{"epsilon", f.E},  {"mass", f.M},        {"k1", f.P1},         {"k2", f.P2},
              {"radii", f.radii}, {"x3_min", f.x3_min}, {"x3_max", f.x3_max}, {"points", f.points},
              {"helicity", helicity_str(f.helicity)}};
  if (only) o.config["type"] = std::string(dirac::to_string(*only));
  o.columns = {"R", "type", "p0", "k3", "max_dev_p0", "max_dev_k3", "capped"};
  for (const auto& r : dirac::flat_limit_study(f)) {
    if (only && r.type != *only) continue;
    o.rows.push_back({r.R, std::string(dirac::to_string(r.type)), r.p0, r.k3, r.max_dev_p0, r.max_dev_k3, r.capped});
  }
  return o;
}

Output cmd_verify(const RunConfig& c, std::vector<verify::Check>& failed) {
  Output o;
  o.command = "verify";
  verify::Settings s;
  const auto suite_name = c.suite.value_or("all");
  verify::Suite suite;
  try {
    suite = verify::suite_from_string(suite_name);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  // flags move every parameter set that has the field
  if (c.epsilon) s.scalar.epsilon = s.wave.epsilon = s.weyl.epsilon = *c.epsilon;
  if (c.k1) s.scalar.k1 = s.wave.k1 = s.weyl.k1 = *c.k1;
  if (c.k2) s.scalar.k2 = s.wave.k2 = s.weyl.k2 = *c.k2;
  if (c.mass) s.wave.m = *c.mass;
  if (const char* env = std::getenv("HSPINOR_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (*end != '\0' || !(v > 0.0)) throw ConfigError("HSPINOR_TOL must be a positive number");
    s.tol = v;
  }
  if (c.tol) s.tol = *c.tol;
  if (!(s.tol > 0.0)) throw ConfigError("tolerance must be positive");
#ifdef HSPINOR_FAULT_INJECTION
  if (c.inject_fault) {
    if (*c.inject_fault != "mplus") throw ConfigError("the only fault is 'mplus'");
    s.build.m_plus_scale = 1.01;
  }
#endif
  o.config = {{"suite", suite_name},     {"epsilon", s.wave.epsilon}, {"k1", s.wave.k1},
              {"k2", s.wave.k2},         {"mass", s.wave.m},          {"tol", s.tol}};
  const auto checks = verify::run(suite, s);
  failed = verify::failures(checks);
  o.columns = {"suite", "check", "detail", "value", "relation", "tolerance", "passed", "gating", "argmax_z"};
  for (const auto& k : checks)
    o.rows.push_back({k.suite, k.name, k.detail, k.value, std::string(k.must_exceed ? ">" : "<"), k.tolerance,
                      k.passed(), k.gating, k.argmax_z});
  o.meta["checks"] = checks.size();
  o.meta["failed"] = failed.size();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-plane waves on H3: profiles, checks and tables"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;

  struct Sub {
    CLI::App* app;
    std::vector<Field> fields;
  };
  std::vector<Sub> subs;
  subs.reserve(5);

  auto common = [&](CLI::App* a, std::vector<Field>& f) {
    a->add_option("--config", config_path, "JSON config file (flags override it)");
    bind_opt(a, f, "format", cfg.format, "csv or json");
    bind_opt(a, f, "out", cfg.out, "output path (default stdout)");
  };
  auto wave = [&](CLI::App* a, std::vector<Field>& f) {
    bind_opt(a, f, "epsilon", cfg.epsilon, "energy eps");
    bind_opt(a, f, "k1", cfg.k1, "transverse momentum k1");
    bind_opt(a, f, "k2", cfg.k2, "transverse momentum k2");
    bind_opt(a, f, "mass", cfg.mass, "mass m");
    bind_opt(a, f, "helicity", cfg.helicity, "+ or -");
  };

  {
    Sub s{app.add_subcommand("eval", "profile of one solution on a z grid"), {}};
    common(s.app, s.fields);
    wave(s.app, s.fields);
    bind_opt(s.app, s.fields, "equation", cfg.equation, "scalar, dirac or weyl");
    bind_opt(s.app, s.fields, "type", cfg.type, "I or II");
    bind_opt(s.app, s.fields, "rep", cfg.rep, "kummer, bessel, hankel or neumann (dirac)");
    bind_opt(s.app, s.fields, "variant", cfg.variant, "scalar solution f1, f2, f5 or f7");
    bind_opt(s.app, s.fields, "branch", cfg.branch, "C1 or C2 for k = 0");
    bind_opt(s.app, s.fields, "zmin", cfg.zmin, "grid start");
    bind_opt(s.app, s.fields, "zmax", cfg.zmax, "grid end");
    bind_opt(s.app, s.fields, "points", cfg.points, "grid points (>= 16)");
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("reflection", "reflection coefficient over a list or log grid of eps"), {}};
    common(s.app, s.fields);
    bind_opt(s.app, s.fields, "eps_list", cfg.eps_list, "comma-separated eps values")->delimiter(',');
    bind_opt(s.app, s.fields, "log_grid", cfg.log_grid, "number of log-spaced eps (default 50)");
    bind_opt(s.app, s.fields, "eps_min", cfg.eps_min, "log grid start (1.001)");
    bind_opt(s.app, s.fields, "eps_max", cfg.eps_max, "log grid end (1000)");
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("table7", "asymptotic classification of the cylinder-function pairs"), {}};
    common(s.app, s.fields);
    wave(s.app, s.fields);
    bind_opt(s.app, s.fields, "window_points", cfg.window_points, "points per fit window (33)");
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("flatlimit", "local wavenumber against p0 for growing curvature radius"), {}};
    common(s.app, s.fields);
    wave(s.app, s.fields);
    bind_opt(s.app, s.fields, "type", cfg.type, "I or II (default both)");
    bind_opt(s.app, s.fields, "radii", cfg.radii, "comma-separated curvature radii")->delimiter(',');
    bind_opt(s.app, s.fields, "x3_min", cfg.x3_min, "flat coordinate range start");
    bind_opt(s.app, s.fields, "x3_max", cfg.x3_max, "flat coordinate range end");
    bind_opt(s.app, s.fields, "points", cfg.points, "points in x3");
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("verify", "residual and identity suites; exit 1 on any failure"), {}};
    common(s.app, s.fields);
    bind_opt(s.app, s.fields, "suite", cfg.suite, "scalar, dirac, weyl, bessel or all");
    bind_opt(s.app, s.fields, "epsilon", cfg.epsilon, "energy eps");
    bind_opt(s.app, s.fields, "k1", cfg.k1, "transverse momentum k1");
    bind_opt(s.app, s.fields, "k2", cfg.k2, "transverse momentum k2");
    bind_opt(s.app, s.fields, "mass", cfg.mass, "mass m");
    bind_opt(s.app, s.fields, "tol", cfg.tol, "analytic residual tolerance (HSPINOR_TOL)");
#ifdef HSPINOR_FAULT_INJECTION
    bind_opt(s.app, s.fields, "inject_fault", cfg.inject_fault, "test build only: mplus");
#endif
    subs.push_back(std::move(s));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : config_error;
  }

  try {
    const Sub* active = nullptr;
    for (const auto& s : subs)
      if (s.app->parsed()) active = &s;
    if (!config_path.empty()) load_config(config_path, active->fields);
    const std::string format = out_format(cfg);
    const std::string out = cfg.out.value_or("");
    const std::string name = active->app->get_name();

    if (name == "eval") {
      write_output(cmd_eval(cfg), format, out);
    } else if (name == "reflection") {
      write_output(cmd_reflection(cfg), format, out);
    } else if (name == "table7") {
      bool mismatch = false;
      write_output(cmd_table7(cfg, mismatch), format, out);
      if (mismatch) {
        std::cerr << "table7: measured classification differs from the expected table\n";
        return verification_failed;
      }
    } else if (name == "flatlimit") {
      write_output(cmd_flatlimit(cfg), format, out);
    } else {
      std::vector<verify::Check> failed;
      auto o = cmd_verify(cfg, failed);
      write_output(o, format, out);
      std::cerr << "verify: " << o.rows.size() << " checks, " << failed.size() << " failed\n";
      for (const auto& f : failed)
        std::cerr << "FAIL " << f.suite << " " << f.name << " [" << f.detail << "]: " << f.value
                  << (f.must_exceed ? " <= " : " >= ") << f.tolerance << "\n";
      if (!failed.empty()) return verification_failed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::Inconclusive ? inconclusive : numerical_error;
  }
  return ok;
}
