#include "remstab/analysis.hpp"

#include "remstab/splitting.hpp"
#include "remstab/stability.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace remstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ConfigError(key + ": '" + text + "' is not a finite number");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<double> out;
  for (std::string tok; is >> tok;) out.push_back(parse_number(key, tok));
  return out;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": expected an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "yes" || text == "1" || text == "on") return true;
  if (text == "false" || text == "no" || text == "0" || text == "off") return false;
  throw ConfigError(key + ": expected true or false");
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  return g;
}

/// Evaluates fn(0..n-1) on at most hardware_concurrency threads; results
/// are stored by index so the order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(int n, Fn fn) {
  std::vector<T> out(n);
  const int workers = std::max(1u, std::thread::hardware_concurrency());
  for (int start = 0; start < n; start += workers) {
    std::vector<std::future<T>> batch;
    for (int i = start; i < std::min(n, start + workers); ++i)
      batch.push_back(std::async(std::launch::async, fn, i));
    for (int i = 0; i < static_cast<int>(batch.size()); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

int ip_index(const std::string& variable) {
  if (variable.rfind("ip.", 0) != 0) return -1;
  try {
    const int j = parse_int(variable, variable.substr(3));
    if (j < 0) throw ConfigError(variable + ": negative index");
    return j;
  } catch (const ConfigError&) {
    throw ConfigError("sweep.variable: bad inner-product index in '" + variable + "'");
  }
}

/// Model and inner-product parameters with the sweep variable set to v.
std::pair<ParamMap, std::vector<double>> params_at(const AnalysisConfig& cfg, double v) {
  ParamMap mp = cfg.model_params;
  std::vector<double> ip = cfg.ip_params;
  if (cfg.sweep) {
    const int j = ip_index(cfg.sweep->variable);
    if (j >= 0) {
      if (static_cast<int>(ip.size()) <= j) ip.resize(j + 1, 1.0);
      ip[j] = v;
    } else {
      mp[cfg.sweep->variable] = v;
    }
  }
  return {mp, ip};
}

std::vector<double> sweep_grid(const AnalysisConfig& cfg) {
  return linspace(cfg.sweep->lo, cfg.sweep->hi, cfg.sweep->steps);
}

nlohmann::json point_parameters(const AnalysisConfig& cfg, const PointSetup& s, double value,
                                const char* analysis) {
  nlohmann::json j;
  j["model"] = cfg.model;
  j["model_params"] = s.model_params;
  j["ip_params"] = s.ip_params;
  j["x"] = to_std(s.x);
  j["xi"] = to_std(s.xi);
  j["analysis"] = analysis;
  if (cfg.sweep) {
    j["variable"] = cfg.sweep->variable;
    j["value"] = value;
  }
  return j;
}

double margin_from_spectrum(const std::vector<double>& ev, int dim_check) {
  if (ev.empty()) return kInf;
  const auto [mn, mx] = std::minmax_element(ev.begin(), ev.end());
  return dim_check > 0 ? *mn : std::max(*mn, -*mx);
}

double margin_at(const AnalysisConfig& cfg, double v) {
  auto [mp, ip] = params_at(cfg, v);
  return stability_margin(setup_point(cfg, mp, ip));
}

}  // namespace

AnalysisConfig parse_config(std::istream& in) {
  AnalysisConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  std::optional<std::string> sweep_var;
  std::optional<std::vector<double>> sweep_range;
  std::optional<int> sweep_steps;
  bool have_model = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw ConfigError(where + "empty key or value");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      if (key == "model.id") {
        cfg.model = val;
        have_model = true;
      } else if (key.rfind("model.", 0) == 0) {
        cfg.model_params[key.substr(6)] = parse_number(key, val);
      } else if (key == "velocity") {
        if (val != "known") {
          const auto v = parse_list(key, val);
          cfg.velocity = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
        }
      } else if (key == "re.index") {
        cfg.re_index = parse_int(key, val);
      } else if (key == "ip.params") {
        cfg.ip_params = parse_list(key, val);
      } else if (key == "sweep.variable") {
        sweep_var = val;
      } else if (key == "sweep.range") {
        sweep_range = parse_list(key, val);
      } else if (key == "sweep.steps") {
        sweep_steps = parse_int(key, val);
      } else if (key == "optimize_ip") {
        cfg.optimize_ip = parse_bool(key, val);
      } else if (key == "optimize.range") {
        const auto r = parse_list(key, val);
        if (r.size() != 2) throw ConfigError(key + ": expected two numbers");
        cfg.optimize_lo = r[0];
        cfg.optimize_hi = r[1];
      } else if (key == "optimize.grid") {
        cfg.optimize_grid = parse_int(key, val);
      } else if (key == "tol.definiteness") {
        cfg.definiteness_tol = parse_number(key, val);
      } else if (key == "tol.fd_step") {
        cfg.fd_step = parse_number(key, val);
      } else if (key == "run.oracle") {
        cfg.run_oracle = parse_bool(key, val);
      } else if (key == "run.blocks") {
        cfg.run_blocks = parse_bool(key, val);
      } else if (key == "output.json") {
        cfg.json_path = val;
      } else if (key == "output.text") {
        cfg.text_path = val;
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (!have_model) throw ConfigError("missing model.id");
  if (sweep_var || sweep_range || sweep_steps) {
    if (!sweep_var || !sweep_range || !sweep_steps)
      throw ConfigError("sweep needs sweep.variable, sweep.range and sweep.steps");
    if (sweep_range->size() != 2) throw ConfigError("sweep.range: expected two numbers");
    cfg.sweep = SweepSpec{*sweep_var, (*sweep_range)[0], (*sweep_range)[1], *sweep_steps};
  }
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(f);
}

void validate_config(const AnalysisConfig& cfg) {
  const auto ids = catalog_ids();
  if (std::find(ids.begin(), ids.end(), cfg.model) == ids.end())
    throw ConfigError("unknown model '" + cfg.model + "'");
  if (cfg.definiteness_tol && !(*cfg.definiteness_tol > 0.0))
    throw ConfigError("tol.definiteness must be positive");
  if (cfg.fd_step && !(*cfg.fd_step > 0.0)) throw ConfigError("tol.fd_step must be positive");
  if (cfg.re_index < 0) throw ConfigError("re.index must be non-negative");
  std::vector<double> corners{0.0};
  if (cfg.sweep) {
    const SweepSpec& s = *cfg.sweep;
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi))
      throw ConfigError("sweep.range must be finite with lo < hi");
    if (s.steps < 2) throw ConfigError("sweep.steps must be at least 2");
    ip_index(s.variable);
    corners = {s.lo, s.hi};
  }
  if (cfg.optimize_ip) {
    if (!cfg.sweep) throw ConfigError("optimize_ip needs a sweep of the threshold variable");
    if (ip_index(cfg.sweep->variable) == 0)
      throw ConfigError("optimize_ip optimizes ip.0; sweep a model parameter instead");
    if (!(cfg.optimize_lo > 0.0) || !(cfg.optimize_lo < cfg.optimize_hi) || !std::isfinite(cfg.optimize_hi))
      throw ConfigError("optimize.range must satisfy 0 < lo < hi");
    if (cfg.optimize_grid < 5) throw ConfigError("optimize.grid must be at least 5");
  }
  for (double v : corners) {
    auto [mp, ip] = params_at(cfg, v);
    if (cfg.optimize_ip) {
      if (ip.empty()) ip.push_back(1.0);
      ip[0] = cfg.optimize_lo;
    }
    try {
      if (cfg.sweep && ip_index(cfg.sweep->variable) < 0 && cfg.model_params.count(cfg.sweep->variable) == 0) {
        // the sweep variable must be a parameter the model understands
        ParamMap probe = cfg.model_params;
        probe[cfg.sweep->variable] = v;
        build_model(cfg.model, probe);
      }
      setup_point(cfg, mp, ip);
    } catch (const ConfigError&) {
      throw;
    } catch (const ContractViolation& e) {
      throw ConfigError(e.what());
    } catch (const GeometryError& e) {
      throw ConfigError(e.what());
    }
  }
}

PointSetup setup_point(const AnalysisConfig& cfg, const ParamMap& model_params,
                       const std::vector<double>& ip_params) {
  PointSetup s{build_model(cfg.model, model_params), Point(), AlgebraVector(), Mat(), model_params, ip_params};
  if (cfg.fd_step) s.entry.system.fd_step_override = cfg.fd_step;
  if (cfg.re_index >= static_cast<int>(s.entry.known_re.size()))
    throw ConfigError("re.index out of range for model '" + cfg.model + "'");
  const auto& re = s.entry.known_re[cfg.re_index];
  s.x = re.x;
  s.xi = cfg.velocity ? *cfg.velocity : re.xi;
  if (s.xi.size() != s.entry.system.group_dim())
    throw ConfigError("velocity: expected " + std::to_string(s.entry.system.group_dim()) + " components");
  s.ip = invariant_inner_product_family(s.entry.system.lie, ip_params);
  return s;
}

double stability_margin(const PointSetup& s) {
  const SplittingData split = build_splitting(s.entry.system, s.x, s.xi, s.ip);
  const QuadraticForm form = restricted_augmented_hessian(s.entry.system, split);
  return margin_from_spectrum(to_std(form.eigenvalues), split.dim_check);
}

PointResult evaluate_point(const AnalysisConfig& cfg, const ParamMap& model_params,
                           const std::vector<double>& ip_params, double value) {
  PointResult r;
  r.value = value;
  try {
    const PointSetup s = setup_point(cfg, model_params, ip_params);
    const ChartedSystem& sys = s.entry.system;
    const SplittingData split = build_splitting(sys, s.x, s.xi, s.ip);
    r.rem = rem_test(sys, split, cfg.definiteness_tol);
    if (!s.entry.gmu_compact) r.rem.assumptions.push_back("G_mu compactness not asserted by the model");
    else r.rem.assumptions.push_back("G_mu compact (asserted by the model)");
    for (const auto& w : s.entry.warnings) r.rem.assumptions.push_back("warning: " + w);
    r.rem.parameters = point_parameters(cfg, s, value, "rem");
    r.margin = margin_from_spectrum(r.rem.block_spectra["hessian_sigma"], r.rem.dim_check);
    if (cfg.run_oracle) {
      OracleOptions opt;
      opt.definiteness_tol = cfg.definiteness_tol;
      r.oracle = full_em_test(sys, s.x, s.xi, s.ip, opt);
      r.oracle->parameters = point_parameters(cfg, s, value, "oracle");
      if (r.oracle->verdict != r.rem.verdict) r.error = "oracle verdict differs from rem_test";
    }
    if (cfg.run_blocks) {
      r.blocks = block_corollary_test(sys, split, cfg.definiteness_tol);
      r.blocks->parameters = point_parameters(cfg, s, value, "blocks");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.error = e.what();
    r.rem = StabilityReport{};
    r.rem.verdict = Verdict::INCONCLUSIVE;
    r.rem.assumptions = {std::string("diagnostic: ") + e.what()};
    r.rem.parameters = {{"model", cfg.model}, {"model_params", model_params}, {"ip_params", ip_params},
                        {"analysis", "rem"}};
    if (cfg.sweep) {
      r.rem.parameters["variable"] = cfg.sweep->variable;
      r.rem.parameters["value"] = value;
    }
    r.margin = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

ThresholdResult sweep_threshold(const AnalysisConfig& cfg, const std::vector<double>& ip_params,
                                const std::vector<double>& grid, const std::vector<double>& margins,
                                double rel_tol) {
  ThresholdResult t;
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (std::isnan(margins[i]) || std::isnan(margins[i + 1])) continue;
    if ((margins[i] > 0.0) != (margins[i + 1] > 0.0)) {
      ++t.crossings;
      if (!first) first = i;
    }
  }
  if (!first) return t;
  AnalysisConfig c = cfg;
  c.ip_params = ip_params;
  double lo = grid[*first], hi = grid[*first + 1];
  const bool lo_stable = margins[*first] > 0.0;
  t.stable_above = !lo_stable;
  while (hi - lo > rel_tol * std::max({std::abs(lo), std::abs(hi), 1e-300})) {
    const double mid = 0.5 * (lo + hi);
    if ((margin_at(c, mid) > 0.0) == lo_stable) lo = mid;
    else hi = mid;
  }
  t.value = 0.5 * (lo + hi);
  return t;
}

double threshold_for_ip(const AnalysisConfig& cfg, const std::vector<double>& ip_params, double rel_tol) {
  AnalysisConfig c = cfg;
  c.ip_params = ip_params;
  const auto grid = sweep_grid(c);
  std::vector<double> m(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      m[i] = margin_at(c, grid[i]);
    } catch (const NotRelativeEquilibrium&) {
      m[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  if (!(m.back() > 0.0)) return kInf;
  // last non-stable grid point; everything above it is stable
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!(m[i] > 0.0)) last = i;
  if (!last) return grid.front();
  double lo = grid[*last], hi = grid[*last + 1];
  while (hi - lo > rel_tol * std::max({std::abs(lo), std::abs(hi), 1e-300})) {
    const double mid = 0.5 * (lo + hi);
    if (margin_at(c, mid) > 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

OptimizeResult optimize_ip(const AnalysisConfig& cfg) {
  OptimizeResult res;
  auto thr = [&](double k) {
    std::vector<double> ip = cfg.ip_params;
    if (ip.empty()) ip.push_back(1.0);
    ip[0] = k;
    try {
      return threshold_for_ip(cfg, ip);
    } catch (const ContractViolation&) {
      return kInf;  // e.g. an inner product that is not positive definite
    }
  };
  auto log_grid = [&](double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return g;
  };
  auto scan = [&](const std::vector<double>& g) {
    return parallel_map<double>(static_cast<int>(g.size()), [&](int i) { return thr(g[i]); });
  };

  res.grid = log_grid(cfg.optimize_lo, cfg.optimize_hi, cfg.optimize_grid);
  res.grid_thresholds = scan(res.grid);
  for (std::size_t i = 0; i < res.grid.size(); ++i)
    if (!std::isfinite(res.grid_thresholds[i])) res.excluded.push_back(res.grid[i]);
  if (res.excluded.size() == res.grid.size())
    throw NumericalInconsistency("optimize_ip: no inner-product parameter gives a stable point in the sweep range");

  auto argmin = [](const std::vector<double>& v) {
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  };
  std::vector<double> g = res.grid, f = res.grid_thresholds;
  std::size_t i = argmin(f);
  double fmax = 0.0;
  for (double v : f)
    if (std::isfinite(v)) fmax = std::max(fmax, v);
  if (fmax - f[i] <= 1e-9 * std::max(1.0, std::abs(f[i]))) {
    res.constant = true;
    res.best_param = g[i];
    res.best_threshold = f[i];
    return res;
  }
  // Unimodal: non-increasing up to i and non-decreasing after, over finite values.
  const double noise = 1e-9 * std::max(1.0, std::abs(f[i]));
  double prev = kInf;
  for (std::size_t j = 0; j <= i; ++j) {
    if (!std::isfinite(f[j])) continue;
    if (f[j] > prev + noise) res.non_unimodal = true;
    prev = f[j];
  }
  prev = f[i];
  for (std::size_t j = i; j < f.size(); ++j) {
    if (!std::isfinite(f[j])) continue;
    if (f[j] < prev - noise) res.non_unimodal = true;
    prev = f[j];
  }
  if (res.non_unimodal) {
    // dense grid over the whole range, then refine around its minimum
    g = log_grid(cfg.optimize_lo, cfg.optimize_hi, 4 * cfg.optimize_grid);
    f = scan(g);
    i = argmin(f);
  }
  double a = std::log(g[i == 0 ? 0 : i - 1]);
  double b = std::log(g[std::min(i + 1, g.size() - 1)]);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = thr(std::exp(c)), fd = thr(std::exp(d));
  while (b - a > 1e-6) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = thr(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = thr(std::exp(d));
    }
  }
  res.best_param = std::exp(0.5 * (a + b));
  res.best_threshold = thr(res.best_param);
  if (f[i] < res.best_threshold) {
    res.best_param = g[i];
    res.best_threshold = f[i];
  }
  return res;
}

RunResult run_analysis(const AnalysisConfig& cfg) {
  RunResult out;
  if (cfg.sweep) {
    const auto grid = sweep_grid(cfg);
    out.points = parallel_map<PointResult>(static_cast<int>(grid.size()), [&](int i) {
      auto [mp, ip] = params_at(cfg, grid[i]);
      return evaluate_point(cfg, mp, ip, grid[i]);
    });
    std::vector<double> margins;
    for (const auto& p : out.points) margins.push_back(p.margin);
    out.threshold = sweep_threshold(cfg, cfg.ip_params, grid, margins);
  } else {
    out.points.push_back(evaluate_point(cfg, cfg.model_params, cfg.ip_params, 0.0));
  }
  if (cfg.optimize_ip) out.optimum = optimize_ip(cfg);
  for (const auto& p : out.points)
    if (!p.error.empty()) out.exit_code = 3;
  return out;
}

nlohmann::json results_to_json(const AnalysisConfig&, const RunResult& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : r.points) {
    arr.push_back(to_json(p.rem));
    if (p.oracle) arr.push_back(to_json(*p.oracle));
    if (p.blocks) arr.push_back(to_json(*p.blocks));
  }
  return arr;
}

std::string results_to_text(const AnalysisConfig& cfg, const RunResult& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "# model " << cfg.model;
  for (const auto& [k, v] : cfg.model_params) os << ' ' << k << '=' << v;
  os << "\n# ip";
  for (double v : cfg.ip_params) os << ' ' << v;
  os << "\n# " << (cfg.sweep ? cfg.sweep->variable : std::string("point"))
     << " verdict route dim_check margin";
  if (cfg.run_oracle) os << " oracle";
  if (cfg.run_blocks) os << " blocks";
  os << '\n';
  for (const auto& p : r.points) {
    os << p.value << ' ' << to_string(p.rem.verdict) << ' ' << to_string(p.rem.route) << ' '
       << p.rem.dim_check << ' ' << p.margin;
    if (p.oracle) os << ' ' << to_string(p.oracle->verdict);
    else if (cfg.run_oracle) os << " -";
    if (p.blocks) os << ' ' << to_string(p.blocks->verdict);
    else if (cfg.run_blocks) os << " -";
    if (!p.error.empty()) os << "  # " << p.error;
    os << '\n';
  }
  if (r.threshold) {
    if (r.threshold->value)
      os << "threshold " << cfg.sweep->variable << ' ' << *r.threshold->value << " ("
         << (r.threshold->stable_above ? "stable above" : "stable below") << ", "
         << r.threshold->crossings << " crossing" << (r.threshold->crossings == 1 ? "" : "s") << ")\n";
    else
      os << "threshold " << cfg.sweep->variable << " none in range\n";
  }
  if (r.optimum) {
    const OptimizeResult& o = *r.optimum;
    os << "optimal ip.0 " << o.best_param << " threshold " << o.best_threshold << '\n';
    if (o.constant) os << "flag threshold constant in ip.0; any value is optimal\n";
    if (o.non_unimodal) os << "flag non-unimodal threshold; dense grid used\n";
    if (!o.excluded.empty()) {
      os << "excluded ip.0 (no stable point in range):";
      for (double k : o.excluded) os << ' ' << k;
      os << '\n';
    }
  }
  return os.str();
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << content;
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int run_config(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate_config(cfg);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  RunResult r;
  try {
    r = run_analysis(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "numerical diagnostic: " << e.what() << '\n';
    return 3;
  }
  const std::string text = results_to_text(cfg, r);
  try {
    if (!cfg.json_path.empty()) write_file(cfg.json_path, results_to_json(cfg, r).dump(2) + "\n");
    if (!cfg.text_path.empty()) write_file(cfg.text_path, text);
    else out << text;
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return 2;
  }
  for (const auto& p : r.points)
    if (!p.error.empty()) err << "diagnostic at " << p.value << ": " << p.error << '\n';
  return r.exit_code;
}

}  // namespace remstab
