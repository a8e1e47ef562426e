#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stablegap {

enum class Experiment { alpha_sweep, dim_sweep, transient, contraction, gradient_check, selftest };
enum class Estimator { assignment, sliced, mean_norm };
enum class DriftChoice { ou, custom };
/// How the stable-driven and Brownian-driven samples are drawn relative to each other.
enum class Coupling { shared, independent };
enum class TestFunction { norm, coordinate };

std::string_view to_string(Experiment e);
std::string_view to_string(Estimator e);
std::string_view to_string(DriftChoice e);
std::string_view to_string(Coupling e);
std::string_view to_string(TestFunction e);

Experiment parse_experiment(std::string_view s);

/// One experiment run. Every field has a canonical key=value spelling; see
/// README for the schema. The seed has no default.
struct ExperimentConfig {
  Experiment experiment = Experiment::alpha_sweep;
  std::vector<double> alpha_grid{1.80, 1.82, 1.84, 1.86, 1.88, 1.90,
                                 1.92, 1.94, 1.96, 1.98, 1.99};
  std::vector<int> d_grid{1};
  std::size_t n_samples = 4096;
  std::size_t n_small = 256;
  std::size_t replicates = 20;
  int bootstrap = 200;
  std::size_t steps_per_unit = 1000;
  std::optional<double> t_max;
  std::optional<double> burn_in;
  double thinning = 1.0;
  std::size_t checkpoints = 41;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_path;
  Estimator estimator = Estimator::assignment;
  DriftChoice drift = DriftChoice::ou;
  /// Unset means the experiment's own default (independent for transient, shared otherwise).
  std::optional<Coupling> coupling;
  std::size_t projections = 64;
  /// Unset means the experiment's own default (10 for transient and contraction, 1 for gradient-check).
  std::optional<std::vector<double>> x0;
  std::vector<double> y0{0.0};
  double epsilon = 1e-2;
  double clip = 5.0;
  TestFunction test_function = TestFunction::norm;

  /// Throws ArgumentError when a grid is empty, an alpha lies outside (1, 2],
  /// a count is zero or the seed is missing.
  void validate() const;

  /// Sorted key=value lines; output_path is left out so relocating output keeps the hash.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;

  double t_max_or(double fallback) const { return t_max.value_or(fallback); }
  Coupling coupling_or(Coupling fallback) const { return coupling.value_or(fallback); }
  std::vector<double> x0_or(double fallback) const { return x0.value_or(std::vector<double>{fallback}); }
};

/// Applies one key=value setting. Throws ArgumentError on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat key=value file ('#' comments, blank lines ignored).
/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// Comma-separated list parsing shared with the CLI.
std::vector<double> parse_real_list(std::string_view s);
std::vector<int> parse_int_list(std::string_view s);

}  // namespace stablegap
