#include "stablegap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablegap/errors.hpp"
#include "stablegap/parallel.hpp"
#include "stablegap/rng.hpp"

namespace stablegap::stats {

MeanEstimate mean_with_stderr(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("mean_with_stderr: no values");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  MeanEstimate est;
  est.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

double bootstrap_stderr(std::size_t n, int resamples, std::uint64_t seed,
                        const std::function<double(std::span<const std::size_t>)>& statistic) {
  if (n == 0) throw ArgumentError("bootstrap_stderr: empty sample");
  if (resamples < 2) return 0.0;
  std::vector<double> replicate(static_cast<std::size_t>(resamples));
  parallel_for(replicate.size(), [&](std::size_t r) {
    RngStream rng(seed, r);
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = rng.uniform_index(n);
    replicate[r] = statistic(idx);
  });
  double mean = 0.0;
  for (double v : replicate) mean += v;
  mean /= static_cast<double>(replicate.size());
  double ss = 0.0;
  for (double v : replicate) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(replicate.size() - 1));
}

double bootstrap_mean_stderr(std::span<const double> values, int resamples, std::uint64_t seed) {
  return bootstrap_stderr(values.size(), resamples, seed, [&](std::span<const std::size_t> idx) {
    double s = 0.0;
    for (auto i : idx) s += values[i];
    return s / static_cast<double>(idx.size());
  });
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("least_squares: need >= 2 pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ArgumentError("least_squares: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_pvalue(double statistic, std::size_t n_a, std::size_t n_b) {
  const double ne = static_cast<double>(n_a) * static_cast<double>(n_b) /
                    static_cast<double>(n_a + n_b);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * statistic;
  if (lambda < 0.2) return 1.0;
  // Kolmogorov distribution tail 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace stablegap::stats
