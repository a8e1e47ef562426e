#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stablegap/empirical_measure.hpp"
#include "stablegap/rng.hpp"

namespace stablegap {

enum class W1Method { exact_assignment, exact_1d, sliced, mean_norm_lower };

std::string_view to_string(W1Method method);

struct W1Estimate {
  double value = 0.0;
  W1Method method = W1Method::exact_assignment;
  std::optional<double> std_error;
  std::size_t n_used = 0;
  /// Set when unequal sample sizes forced truncation to the smaller cloud.
  bool truncated = false;
};

/// Bootstrap over paired resamples of the input points. resamples = 0 skips std_error.
struct BootstrapOptions {
  int resamples = 200;
  std::uint64_t seed = 0x5eedULL;
};

/// Minimum-cost perfect matching on a dense n x n cost matrix (row-major).
struct Assignment {
  double total_cost = 0.0;
  std::vector<std::size_t> row_to_col;
};

/// Shortest-augmenting-path Hungarian method with dual potentials, O(n^3).
Assignment solve_assignment(std::span<const double> cost, std::size_t n);

/// (1/n) sum |a_(i) - b_(i)| over order statistics.
double w1_sorted_1d(std::vector<double> a, std::vector<double> b);

/// Exact W1 between two equal-size samples on the line. Throws ArgumentError on a
/// length mismatch or empty input.
W1Estimate w1_exact_1d(std::span<const double> a, std::span<const double> b,
                       const BootstrapOptions& boot = {});

struct AssignmentOptions {
  std::size_t max_points = 4096;
  BootstrapOptions bootstrap{};
};

/// Exact W1 between uniform empirical measures as an assignment problem.
/// Unequal n truncates the larger cloud to its first min(n) points and flags it.
/// Throws CapacityError above max_points.
W1Estimate w1_assignment(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                         const AssignmentOptions& options = {});

/// Max over random unit directions theta of the 1-D W1 of the projections.
/// A lower bound on the true empirical W1.
W1Estimate w1_sliced(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                     std::size_t n_projections, RngStream& rng,
                     const BootstrapOptions& boot = {});

/// |mean |x| - mean |y||, a lower bound because x -> |x| is 1-Lipschitz.
/// Sample sizes may differ; the two clouds are bootstrapped independently.
W1Estimate w1_mean_norm_lower(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                              const BootstrapOptions& boot = {});

}  // namespace stablegap
