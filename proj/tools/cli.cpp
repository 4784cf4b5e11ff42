#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "lagprop/cauchy.hpp"
#include "lagprop/expand.hpp"
#include "lagprop/propagate.hpp"
#include "lagprop/transforms.hpp"

namespace lagprop::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// ---- config access ----

json read_config(const std::string& path) {
  if (path.empty()) throw ConfigError("--config is required");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!required.count(key) && !optional.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  for (const auto& key : required)
    if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
}

double num(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
  }
  throw ConfigError(where + ": expected a number");
}

int integer(const json& j, const std::string& where) {
  const double v = num(j, where);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(where + ": expected an integer");
  return static_cast<int>(v);
}

cplx complex_of(const json& j, const std::string& where) {
  if (j.is_object()) {
    check_keys(j, where, {"re", "im"});
    return {num(j["re"], where + ".re"), num(j["im"], where + ".im")};
  }
  return num(j, where);
}

const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  return j;
}

std::vector<double> numbers(const json& j, const std::string& where) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array_of(j, where).size(); ++i)
    out.push_back(num(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> integers(const json& j, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array_of(j, where).size(); ++i)
    out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> index_of(const json& j, const std::string& where, const std::vector<int>& shape) {
  auto n = integers(j, where);
  if (n.size() != shape.size()) throw ConfigError(where + ": index length must equal dim");
  for (std::size_t a = 0; a < n.size(); ++a)
    if (n[a] < 0 || n[a] >= shape[a]) throw ConfigError(where + ": index outside modes");
  return n;
}

std::vector<int> modes_of(const json& j, const std::string& where, int dim) {
  auto m = integers(j, where);
  if (static_cast<int>(m.size()) != dim) throw ConfigError(where + ": length must equal dim");
  for (int v : m)
    if (v < 1) throw ConfigError(where + ": entries must be positive");
  return m;
}

std::vector<double> grid_of(const json& j, const std::string& where) {
  if (j.is_array()) return numbers(j, where);
  check_keys(j, where, {"lo", "hi", "count"}, {"spacing"});
  const double lo = num(j["lo"], where + ".lo"), hi = num(j["hi"], where + ".hi");
  const int count = integer(j["count"], where + ".count");
  if (count < 1) throw ConfigError(where + ".count: must be positive");
  const std::string spacing = j.value("spacing", "linear");
  if (spacing == "log") {
    if (!(lo > 0.0 && hi > lo)) throw ConfigError(where + ": log spacing needs 0 < lo < hi");
    return log_spaced(lo, hi, count);
  }
  if (spacing != "linear") throw ConfigError(where + ".spacing: expected 'linear' or 'log'");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return out;
}

std::vector<Point> points_of(const json& j, const std::string& where) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < array_of(j, where).size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    out.push_back(j[i].is_array() ? numbers(j[i], w) : Point{num(j[i], w)});
    if (out.back().size() != out.front().size() || out.back().empty() || out.back().size() > kMaxDim)
      throw ConfigError(w + ": points must share one dimension between 1 and 3");
  }
  return out;
}

// ---- output ----

struct Sink {
  std::ostream& fallback;
  std::ofstream file;
  std::ostream* os = nullptr;
  Sink(const std::string& path, std::ostream& out) : fallback(out) {
    if (path.empty()) {
      os = &fallback;
    } else {
      file.open(path, std::ios::binary);
      if (!file) throw ConfigError("cannot write '" + path + "'");
      os = &file;
    }
  }
  std::ostream& operator*() { return *os; }
};

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

struct Options {
  std::string config;
  std::string out;
  double tol = 0.0;
  bool strict = false;
  std::string suite;
  std::string which;
};

// ---- commands ----

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.tol < 0.0) throw ConfigError("--tol must be nonnegative");
  const auto checks = run_suite(o.suite, o.tol);
  const json rep = report_json(o.suite, o.tol, checks);
  Sink sink(o.out, out);
  *sink << rep.dump(2) << '\n';
  return rep["pass"].get<bool>() ? kPass : kCheckFailure;
}

CauchyProblem solve_problem(const json& cfg, double& alpha, int& quad_order) {
  check_keys(cfg, "config", {"dim", "rho", "c", "r", "T", "modes", "initial", "output_times"},
             {"source", "alpha", "quad_order"});
  const int dim = integer(cfg["dim"], "dim");
  if (dim < 1 || dim > kMaxDim) throw ConfigError("dim: must be 1, 2 or 3");
  CauchyProblem p;
  p.spec.rho = complex_of(cfg["rho"], "rho");
  p.spec.c = complex_of(cfg["c"], "c");
  p.spec.r = num(cfg["r"], "r");
  p.T = num(cfg["T"], "T");
  const auto shape = modes_of(cfg["modes"], "modes", dim);
  p.initial = CoefficientField(shape, Basis::laguerre);

  const json& init = cfg["initial"];
  check_keys(init, "initial", {"type", "data"});
  if (init["type"] != "coeffs") throw ConfigError("initial.type: expected 'coeffs'");
  for (std::size_t i = 0; i < array_of(init["data"], "initial.data").size(); ++i) {
    const std::string w = "initial.data[" + std::to_string(i) + "]";
    const json& e = init["data"][i];
    check_keys(e, w, {"n", "re", "im"});
    p.initial.at(index_of(e["n"], w + ".n", shape)) = cplx(num(e["re"], w + ".re"), num(e["im"], w + ".im"));
  }

  if (cfg.contains("source")) {
    const json& src = cfg["source"];
    check_keys(src, "source", {"type", "per_mode"});
    if (src["type"] != "coeffs_poly") throw ConfigError("source.type: expected 'coeffs_poly'");
    for (std::size_t i = 0; i < array_of(src["per_mode"], "source.per_mode").size(); ++i) {
      const std::string w = "source.per_mode[" + std::to_string(i) + "]";
      const json& e = src["per_mode"][i];
      check_keys(e, w, {"n", "poly"});
      ModeSource ms;
      ms.n = index_of(e["n"], w + ".n", shape);
      for (std::size_t k = 0; k < array_of(e["poly"], w + ".poly").size(); ++k)
        ms.poly.push_back(complex_of(e["poly"][k], w + ".poly[" + std::to_string(k) + "]"));
      p.poly_source.push_back(std::move(ms));
    }
  }
  p.output_times = numbers(cfg["output_times"], "output_times");
  alpha = cfg.contains("alpha") ? num(cfg["alpha"], "alpha") : 1.0;
  if (!(alpha > 0.0)) throw ConfigError("alpha: must be positive");
  quad_order = cfg.contains("quad_order") ? integer(cfg["quad_order"], "quad_order") : kDuhamelOrder;
  if (quad_order < 1) throw ConfigError("quad_order: must be positive");
  try {
    validate(p);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  double alpha = 1.0;
  int quad_order = kDuhamelOrder;
  const CauchyProblem p = solve_problem(read_config(o.config), alpha, quad_order);
  const Trajectory tr = solve(p, quad_order);
  const int dim = p.dim();

  std::ostringstream csv;
  csv << "time,flat_index";
  for (int a = 1; a <= dim; ++a) csv << ",n_" << a;
  csv << ",re,im,overflow\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    for (std::size_t i = 0; i < tr.states[k].size(); ++i) {
      csv << format_double(tr.times[k]) << ',' << i;
      for (int n : tr.states[k].multi_index(i)) csv << ',' << n;
      csv << ',' << format_double(tr.states[k][i].real()) << ',' << format_double(tr.states[k][i].imag()) << ','
          << (tr.overflow_mask[k][i] ? 1 : 0) << '\n';
    }

  json summary = {{"alpha", alpha}, {"any_overflow", tr.any_overflow}, {"times", tr.times}};
  json norms = json::array(), hs = json::array();
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    norms.push_back(tr.l2_norm(k));
    try {
      hs.push_back(fit_growth(tr.states[k], alpha).h);
    } catch (const DegenerateFitError&) {
      hs.push_back(nullptr);
    }
  }
  summary["l2_norm"] = norms;
  summary["h"] = hs;

  if (o.out.empty()) {
    out << csv.str();
    err << summary.dump(2) << '\n';
  } else {
    Sink sink(o.out, out);
    *sink << csv.str();
    Sink side(o.out + ".summary.json", out);
    *side << summary.dump(2) << '\n';
  }
  if (o.strict && tr.any_overflow) {
    err << "solve: overflow in strict mode\n";
    return kStrictFailure;
  }
  return kPass;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const json cfg = read_config(o.config);
  check_keys(cfg, "config", {"z", "r", "alpha", "kind"}, {"c"});
  const cplx z = complex_of(cfg["z"], "z");
  const double r = num(cfg["r"], "r");
  const cplx c = cfg.contains("c") ? complex_of(cfg["c"], "c") : cplx(0.0);
  const double alpha = num(cfg["alpha"], "alpha");
  const std::string kind = cfg["kind"].is_string() ? cfg["kind"].get<std::string>() : "";
  if (kind != "roumieu" && kind != "beurling") throw ConfigError("kind: expected 'roumieu' or 'beurling'");
  if (!(alpha > 0.0) || !(r > 0.0)) throw ConfigError("alpha and r must be positive");
  const auto v = classify_propagator(z, r, c, alpha, kind == "roumieu" ? SpaceKind::roumieu : SpaceKind::beurling);
  Sink sink(o.out, out);
  *sink << to_string(v.verdict) << (v.boundary ? " boundary" : "") << '\n';
  return kPass;
}

int cmd_kernel(const Options& o, std::ostream& out, std::ostream& err) {
  const json cfg = read_config(o.config);
  check_keys(cfg, "config", {"w", "x", "y"});
  const cplx w = complex_of(cfg["w"], "w");
  const auto xs = grid_of(cfg["x"], "x"), ys = grid_of(cfg["y"], "y");
  for (double v : xs)
    if (!(v >= 0.0)) throw ConfigError("x: points must be nonnegative");
  for (double v : ys)
    if (!(v >= 0.0)) throw ConfigError("y: points must be nonnegative");
  std::optional<KernelParams> kp;
  try {
    kp.emplace(w, 1);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream csv;
  csv << "x,y,reK,imK\n";
  bool all_finite = true;
  for (double x : xs)
    for (double y : ys) {
      const cplx k = kernel_eval(*kp, std::span<const double>(&x, 1), std::span<const double>(&y, 1));
      all_finite = all_finite && finite(k);
      csv << format_double(x) << ',' << format_double(y) << ',' << format_double(k.real()) << ','
          << format_double(k.imag()) << '\n';
    }
  Sink sink(o.out, out);
  *sink << csv.str();
  if (o.strict && !all_finite) {
    err << "kernel: non-finite values in strict mode\n";
    return kStrictFailure;
  }
  return kPass;
}

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  const json cfg = read_config(o.config);
  if (!cfg.is_object() || !cfg.contains("which") || !cfg["which"].is_string())
    throw ConfigError("config: missing key 'which'");
  const std::string which = cfg["which"].get<std::string>();
  const std::string param = which == "frac-fourier" ? "rho" : "t";
  if (which != "frac-fourier" && which != "frac-hankel" && which != "hankel-clifford")
    throw ConfigError("which: expected 'frac-fourier', 'frac-hankel' or 'hankel-clifford'");
  check_keys(cfg, "config", {"which", param, "modes", "input"}, {"output_points"});

  const json& in = cfg["input"];
  check_keys(in, "input", {"type", "points", "values"});
  if (in["type"] != "samples") throw ConfigError("input.type: expected 'samples'");
  const auto pts = points_of(in["points"], "input.points");
  if (pts.empty()) throw ConfigError("input.points: must not be empty");
  std::vector<cplx> vals;
  for (std::size_t i = 0; i < array_of(in["values"], "input.values").size(); ++i)
    vals.push_back(complex_of(in["values"][i], "input.values[" + std::to_string(i) + "]"));
  if (vals.size() != pts.size()) throw ConfigError("input.values: one value per point required");
  const int dim = static_cast<int>(pts.front().size());
  const auto shape = modes_of(cfg["modes"], "modes", dim);
  std::size_t total = 1;
  for (int m : shape) total *= m;
  if (pts.size() < total) throw ConfigError("input.points: need at least as many samples as modes");
  const auto outs = cfg.contains("output_points") ? points_of(cfg["output_points"], "output_points") : pts;
  if (outs.empty() || static_cast<int>(outs.front().size()) != dim)
    throw ConfigError("output_points: dimension must match input.points");

  std::vector<cplx> result;
  if (which == "frac-fourier") {
    const double rho = num(cfg["rho"], "rho");
    result = hermite_synthesize(frac_fourier(rho, hermite_fit(pts, vals, shape)), outs);
  } else if (which == "hankel-clifford") {
    FracOrder order;
    order.t = cfg["t"].is_array() ? numbers(cfg["t"], "t") : std::vector<double>(dim, num(cfg["t"], "t"));
    if (order.dim() != dim) throw ConfigError("t: one phase per axis required");
    for (const auto& p : pts)
      for (double v : p)
        if (v < 0.0) throw ConfigError("input.points: Laguerre samples must be nonnegative");
    result = laguerre_synthesize(hankel_clifford_frac(order, laguerre_fit(pts, vals, shape)), outs);
  } else {
    if (dim != 1) throw ConfigError("frac-hankel: samples must be one-dimensional");
    const double t = num(cfg["t"], "t");
    auto square = [](const std::vector<Point>& ps) {
      std::vector<Point> sq;
      for (const auto& p : ps) sq.push_back({p[0] * p[0]});
      return sq;
    };
    const auto a = hankel_clifford_frac(FracOrder{{t}}, laguerre_fit(square(pts), vals, shape));
    result = laguerre_synthesize(a, square(outs));
  }

  std::ostringstream csv;
  for (int a = 1; a <= dim; ++a) csv << "x_" << a << ',';
  csv << "re,im\n";
  bool all_finite = true;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    for (double v : outs[i]) csv << format_double(v) << ',';
    csv << format_double(result[i].real()) << ',' << format_double(result[i].imag()) << '\n';
    all_finite = all_finite && finite(result[i]);
  }
  Sink sink(o.out, out);
  *sink << csv.str();
  if (o.strict && !all_finite) {
    err << "transform: non-finite values in strict mode\n";
    return kStrictFailure;
  }
  return kPass;
}

const char* kind_name(Check::Kind k) {
  switch (k) {
    case Check::Kind::max_error: return "max_error";
    case Check::Kind::mismatches: return "mismatches";
    case Check::Kind::min_ratio: return "min_ratio";
    case Check::Kind::max_ratio: return "max_ratio";
  }
  return "";
}

}  // namespace

json report_json(const std::string& suite, double tol, const std::vector<Check>& checks) {
  json list = json::array();
  bool pass = true;
  for (const auto& c : checks) {
    list.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"kind", kind_name(c.kind)},
                    {"value", c.value},
                    {"bound", c.bound},
                    {"pass", c.pass}});
    pass = pass && c.pass;
  }
  json rep = {{"suite", suite}, {"pass", pass}, {"checks", list}};
  if (tol > 0.0) rep["tol"] = tol;
  return rep;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laguerre-operator propagators, kernels, transforms and Cauchy problems"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--tol", o.tol, "override for error tolerances");
    sub->add_flag("--strict", o.strict, "exit 3 on overflow or non-finite output");
  };
  auto* verify = app.add_subcommand("verify", "run an identity-verification suite");
  verify->add_option("suite", o.suite, "hille_hardy | orthonormality | kernel_vs_multiplier | bridge | "
                                       "frac_identities | posedness | all")
      ->required();
  common(verify);
  auto* solve_cmd = app.add_subcommand("solve", "solve a Cauchy problem, CSV trajectory");
  common(solve_cmd);
  auto* classify_cmd = app.add_subcommand("classify", "continuity verdict for a propagator");
  common(classify_cmd);
  auto* kernel_cmd = app.add_subcommand("kernel", "tabulate the one-dimensional kernel");
  common(kernel_cmd);
  auto* transform_cmd = app.add_subcommand("transform", "apply a fractional transform to samples");
  common(transform_cmd);

  std::vector<const char*> argv{"lagprop"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*kernel_cmd) return cmd_kernel(o, out, err);
    if (*transform_cmd) return cmd_transform(o, out, err);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kCheckFailure;
  }
  return kConfigError;
}

}  // namespace lagprop::cli
