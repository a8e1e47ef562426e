#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace stablegap::stats {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and sigma_hat / sqrt(n). n >= 2 for a nonzero error.
MeanEstimate mean_with_stderr(std::span<const double> values);

/// Standard deviation of `statistic` over `resamples` bootstrap draws of
/// index sets of size n. Resample i uses RngStream(seed, i).
double bootstrap_stderr(std::size_t n, int resamples, std::uint64_t seed,
                        const std::function<double(std::span<const std::size_t>)>& statistic);

/// Bootstrap standard error of the mean of `values`.
double bootstrap_mean_stderr(std::span<const double> values, int resamples, std::uint64_t seed);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Unweighted ordinary least squares y = slope x + intercept. Needs >= 2 distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample KS p-value.
double ks_pvalue(double statistic, std::size_t n_a, std::size_t n_b);

}  // namespace stablegap::stats
