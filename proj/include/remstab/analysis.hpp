#pragma once

#include "remstab/catalog.hpp"
#include "remstab/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace remstab {

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SweepSpec {
  /// A model parameter name, or "ip.<j>" for an inner-product parameter.
  std::string variable;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 2;
};

struct AnalysisConfig {
  std::string model;
  ParamMap model_params;
  /// Explicit velocity; when absent the catalog velocity of the chosen
  /// relative equilibrium is used (and follows sweeps of model parameters).
  std::optional<Vec> velocity;
  int re_index = 0;
  std::vector<double> ip_params;
  std::optional<SweepSpec> sweep;
  bool optimize_ip = false;
  double optimize_lo = 1e-2;
  double optimize_hi = 1e2;
  int optimize_grid = 41;
  std::optional<double> definiteness_tol;
  std::optional<double> fd_step;
  bool run_oracle = false;
  bool run_blocks = false;
  std::string json_path;
  std::string text_path;
};

/// Parses the flat "key = value" format ('#' starts a comment). Throws
/// ConfigError with the offending line.
AnalysisConfig parse_config(std::istream& in);
AnalysisConfig load_config(const std::string& path);

/// Checks the model id, parameter names, sweep and optimizer settings by
/// building the model at every configured corner. Throws ConfigError.
void validate_config(const AnalysisConfig& cfg);

/// Model and inner product at one parameter point.
struct PointSetup {
  CatalogEntry entry;
  Point x;
  AlgebraVector xi;
  Mat ip;
  ParamMap model_params;
  std::vector<double> ip_params;
};

PointSetup setup_point(const AnalysisConfig& cfg, const ParamMap& model_params,
                       const std::vector<double>& ip_params);

/// Signed distance from the verdict boundary: the smallest eigenvalue of the
/// restricted Hessian on the positive branch, max(min, -max) on the
/// definite branch, +inf for an empty test space.
double stability_margin(const PointSetup& s);

struct PointResult {
  double value = 0.0;  // sweep variable (0 without a sweep)
  StabilityReport rem;
  std::optional<StabilityReport> oracle;
  std::optional<StabilityReport> blocks;
  double margin = 0.0;
  std::string error;  // non-empty when the point raised a numerical diagnostic
};

struct ThresholdResult {
  std::optional<double> value;  // boundary in the sweep variable
  bool stable_above = true;
  int crossings = 0;
};

struct OptimizeResult {
  double best_param = 0.0;
  double best_threshold = 0.0;
  bool non_unimodal = false;
  bool constant = false;
  /// Grid parameters whose threshold does not exist in the sweep range
  /// (e.g. a non-positive denominator).
  std::vector<double> excluded;
  std::vector<double> grid;
  std::vector<double> grid_thresholds;  // +inf where excluded
};

struct RunResult {
  std::vector<PointResult> points;
  std::optional<ThresholdResult> threshold;
  std::optional<OptimizeResult> optimum;
  int exit_code = 0;
};

/// Evaluates one point with rem_test and the optional oracle / block routes.
PointResult evaluate_point(const AnalysisConfig& cfg, const ParamMap& model_params,
                           const std::vector<double>& ip_params, double value);

/// Boundary of the stability margin along the sweep, from the first sign
/// change on the grid refined by bisection to `rel_tol`.
ThresholdResult sweep_threshold(const AnalysisConfig& cfg, const std::vector<double>& ip_params,
                                const std::vector<double>& grid, const std::vector<double>& margins,
                                double rel_tol = 1e-6);

/// Threshold of the sweep variable as a function of the first inner-product
/// parameter; +inf when no stable point exists in the sweep range.
double threshold_for_ip(const AnalysisConfig& cfg, const std::vector<double>& ip_params,
                        double rel_tol = 1e-10);

/// Minimizes threshold_for_ip over ip.0 in [optimize_lo, optimize_hi]: a log
/// grid, then golden section on the bracketing cell (bracket 1e-6).
OptimizeResult optimize_ip(const AnalysisConfig& cfg);

RunResult run_analysis(const AnalysisConfig& cfg);

nlohmann::json results_to_json(const AnalysisConfig& cfg, const RunResult& r);
std::string results_to_text(const AnalysisConfig& cfg, const RunResult& r);

/// Runs a validated configuration and writes the outputs. Returns 0, 2 on a
/// validation error (nothing written) or 3 on numerical diagnostics.
int run_config(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace remstab
