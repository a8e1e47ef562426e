#pragma once

#include <string>
#include <vector>

#include "stablegap/config.hpp"
#include "stablegap/csv.hpp"

namespace stablegap {

/// Fit of log W1 against a transform of (2 - alpha).
struct RateFit {
  enum class Transform {
    log_2ma,         ///< x = log(2 - alpha)
    log_2ma_loglog,  ///< x = log((2 - alpha) log(1 / (2 - alpha)))
  };

  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Transform x_transform = Transform::log_2ma;
  std::size_t n_points = 0;
};

/// OLS in log-log space. Throws ArgumentError for fewer than three usable points
/// (alpha = 2 rows and non-positive W1 values are skipped).
RateFit fit_rate(const std::vector<double>& alphas, const std::vector<double>& w1,
                 RateFit::Transform transform);

/// Shared output of every runner: the main table, a plot-ready secondary table,
/// human-readable notes and whether the experiment's own invariants held.
struct Report {
  Table table;
  Table plot;
  std::vector<std::string> notes;
  bool invariants_ok = true;
};

struct AlphaSweepRow {
  double alpha = 0.0;
  double w1 = 0.0;
  double std_error = 0.0;
  double lower_exact = 0.0;  ///< NaN outside (1, 2)
};

struct AlphaSweepResult {
  std::vector<AlphaSweepRow> rows;
  /// W1 between two independent Gaussian stationary clouds of the same size.
  double self_floor = 0.0;
  double self_floor_se = 0.0;
  RateFit fit_linear;
  RateFit fit_loglog;
  Report report;
};

AlphaSweepResult run_alpha_sweep(const ExperimentConfig& cfg);

struct DimSweepRow {
  int d = 0;
  double alpha = 0.0;
  double lower_exact = 0.0;
  double mean_norm = 0.0;
  double mean_norm_se = 0.0;
  double small_mean_norm = 0.0;
  double small_sliced = 0.0;
  double small_assignment = 0.0;
  double small_assignment_se = 0.0;
};

struct DimSweepResult {
  std::vector<DimSweepRow> rows;
  /// log lower_exact regressed on log d and on log(d log(1 + d)).
  double slope_vs_d = 0.0;
  double r2_vs_d = 0.0;
  double slope_vs_dlogd = 0.0;
  double r2_vs_dlogd = 0.0;
  Report report;
};

DimSweepResult run_dim_sweep(const ExperimentConfig& cfg);

struct TransientRow {
  double t = 0.0;
  double w1 = 0.0;
  double std_error = 0.0;
};

struct TransientResult {
  double alpha = 0.0;
  std::vector<TransientRow> rows;
  double plateau = 0.0;
  double plateau_se = 0.0;
  double stationary_w1 = 0.0;
  double stationary_se = 0.0;
  /// Rate of the exponential approach to the plateau.
  double decay_rate = 0.0;
  bool decreasing_to_plateau = false;
  Report report;
};

TransientResult run_transient(const ExperimentConfig& cfg);

struct ContractionRow {
  double t = 0.0;
  double mean_distance = 0.0;
  double std_error = 0.0;
};

struct ContractionResult {
  std::vector<ContractionRow> rows;
  double rate = 0.0;
  double prefactor = 0.0;
  bool never_expands = true;
  Report report;
};

ContractionResult run_contraction(const ExperimentConfig& cfg);

struct GradientRow {
  double alpha = 0.0;
  double t = 0.0;
  double gradient = 0.0;
  double std_error = 0.0;
};

struct GradientResult {
  std::vector<GradientRow> rows;
  /// max over t of the alpha = 2 estimate.
  double reference_max = 0.0;
  /// max over t and the configured alphas.
  double stable_max = 0.0;
  Report report;
};

GradientResult run_gradient_check(const ExperimentConfig& cfg);

struct SelftestOptions {
  /// Multiplies every subordinator draw; anything but 1 must trip the Laplace check.
  double subordinator_scale_factor = 1.0;
};

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  bool passed() const;
  Report report;
};

SelftestResult run_selftest(const ExperimentConfig& cfg, const SelftestOptions& options = {});

/// Dispatches on cfg.experiment and returns the report.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace stablegap
