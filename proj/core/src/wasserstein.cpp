#include "stablegap/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stablegap/errors.hpp"
#include "stablegap/parallel.hpp"
#include "stablegap/stats.hpp"

namespace stablegap {
namespace {

void require_same_dimension(const EmpiricalMeasure& x, const EmpiricalMeasure& y) {
  if (x.n() == 0 || y.n() == 0) throw ArgumentError("W1: empty empirical measure");
  if (x.d() != y.d()) throw ArgumentError("W1: dimension mismatch");
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double mean_of(std::span<const double> v, std::span<const std::size_t> idx) {
  double s = 0.0;
  for (auto i : idx) s += v[i];
  return s / static_cast<double>(idx.size());
}

double assignment_value(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                        std::span<const std::size_t> xi, std::span<const std::size_t> yi) {
  const std::size_t n = xi.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = distance(x.point(xi[i]), y.point(yi[j]));
  return solve_assignment(cost, n).total_cost / static_cast<double>(n);
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

std::string_view to_string(W1Method method) {
  switch (method) {
    case W1Method::exact_assignment: return "exact_assignment";
    case W1Method::exact_1d: return "exact_1d";
    case W1Method::sliced: return "sliced";
    case W1Method::mean_norm_lower: return "mean_norm_lower";
  }
  return "unknown";
}

Assignment solve_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) throw ArgumentError("solve_assignment: cost is not n x n");
  Assignment result;
  if (n == 0) return result;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials u (rows), v (columns); match[j] is the row assigned to column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), min_slack(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t j0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      const double* cost_row = cost.data() + (i0 - 1) * n;
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost_row[j - 1] - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  result.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) result.row_to_col[match[j] - 1] = j - 1;
  // Re-sum from the matching rather than trusting the dual objective.
  for (std::size_t i = 0; i < n; ++i) result.total_cost += cost[i * n + result.row_to_col[i]];
  return result;
}

double w1_sorted_1d(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

W1Estimate w1_exact_1d(std::span<const double> a, std::span<const double> b,
                       const BootstrapOptions& boot) {
  if (a.size() != b.size()) throw ArgumentError("w1_exact_1d: length mismatch");
  if (a.empty()) throw ArgumentError("w1_exact_1d: empty input");
  W1Estimate est;
  est.method = W1Method::exact_1d;
  est.n_used = a.size();
  est.value = w1_sorted_1d({a.begin(), a.end()}, {b.begin(), b.end()});
  if (boot.resamples > 1) {
    est.std_error = stats::bootstrap_stderr(
        a.size(), boot.resamples, boot.seed, [&](std::span<const std::size_t> idx) {
          std::vector<double> ra(idx.size()), rb(idx.size());
          for (std::size_t i = 0; i < idx.size(); ++i) {
            ra[i] = a[idx[i]];
            rb[i] = b[idx[i]];
          }
          return w1_sorted_1d(std::move(ra), std::move(rb));
        });
  }
  return est;
}

W1Estimate w1_assignment(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                         const AssignmentOptions& options) {
  require_same_dimension(x, y);
  const std::size_t n = std::min(x.n(), y.n());
  if (n > options.max_points)
    throw CapacityError("w1_assignment: n = " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(options.max_points) + "; use the sliced estimator");
  W1Estimate est;
  est.method = W1Method::exact_assignment;
  est.n_used = n;
  est.truncated = x.n() != y.n();
  const auto all = iota(n);
  est.value = assignment_value(x, y, all, all);
  if (options.bootstrap.resamples > 1) {
    est.std_error = stats::bootstrap_stderr(
        n, options.bootstrap.resamples, options.bootstrap.seed,
        [&](std::span<const std::size_t> idx) { return assignment_value(x, y, idx, idx); });
  }
  return est;
}

W1Estimate w1_sliced(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                     std::size_t n_projections, RngStream& rng, const BootstrapOptions& boot) {
  require_same_dimension(x, y);
  if (n_projections == 0) throw ArgumentError("w1_sliced: need at least one projection");
  const std::size_t n = std::min(x.n(), y.n());
  const std::size_t d = x.d();
  const std::size_t n_dirs = d == 1 ? 1 : n_projections;
  std::vector<double> dirs(n_dirs * d);
  if (d == 1) {
    dirs[0] = 1.0;
  } else {
    for (std::size_t p = 0; p < n_dirs; ++p) {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          dirs[p * d + k] = rng.normal();
          norm2 += dirs[p * d + k] * dirs[p * d + k];
        }
      } while (norm2 == 0.0);
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t k = 0; k < d; ++k) dirs[p * d + k] *= inv;
    }
  }
  // projections[p] holds <theta_p, x_i> for i < n, then <theta_p, y_i>.
  std::vector<std::vector<double>> proj(n_dirs, std::vector<double>(2 * n));
  parallel_for(n_dirs, [&](std::size_t p) {
    const std::span<const double> theta(dirs.data() + p * d, d);
    for (std::size_t i = 0; i < n; ++i) {
      double px = 0.0, py = 0.0;
      const auto xi = x.point(i);
      const auto yi = y.point(i);
      for (std::size_t k = 0; k < d; ++k) {
        px += theta[k] * xi[k];
        py += theta[k] * yi[k];
      }
      proj[p][i] = px;
      proj[p][n + i] = py;
    }
  });
  auto value_on = [&](std::span<const std::size_t> idx) {
    double best = 0.0;
    std::vector<double> a(idx.size()), b(idx.size());
    for (std::size_t p = 0; p < n_dirs; ++p) {
      for (std::size_t i = 0; i < idx.size(); ++i) {
        a[i] = proj[p][idx[i]];
        b[i] = proj[p][n + idx[i]];
      }
      best = std::max(best, w1_sorted_1d(a, b));
    }
    return best;
  };
  W1Estimate est;
  est.method = W1Method::sliced;
  est.n_used = n;
  est.truncated = x.n() != y.n();
  est.value = value_on(iota(n));
  if (boot.resamples > 1) est.std_error = stats::bootstrap_stderr(n, boot.resamples, boot.seed, value_on);
  return est;
}

W1Estimate w1_mean_norm_lower(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                              const BootstrapOptions& boot) {
  require_same_dimension(x, y);
  const auto nx = x.norms();
  const auto ny = y.norms();
  W1Estimate est;
  est.method = W1Method::mean_norm_lower;
  est.n_used = std::min(nx.size(), ny.size());
  est.value = std::abs(mean_of(nx, iota(nx.size())) - mean_of(ny, iota(ny.size())));
  if (boot.resamples > 1) {
    // Independent resampling of each cloud; errors add in quadrature.
    const double se_x = stats::bootstrap_mean_stderr(nx, boot.resamples, boot.seed);
    const double se_y = stats::bootstrap_mean_stderr(ny, boot.resamples, boot.seed ^ 0xa5a5a5a5ULL);
    est.std_error = std::sqrt(se_x * se_x + se_y * se_y);
  }
  return est;
}

}  // namespace stablegap
