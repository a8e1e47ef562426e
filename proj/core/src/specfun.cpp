#include "stablegap/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stablegap/errors.hpp"

namespace stablegap::specfun {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLnPi = 1.1447298858494001741434273513530587;

void require_dimension(int d) {
  if (d < 1) throw DomainError("dimension must be >= 1, got " + std::to_string(d));
}

void require_open_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DomainError("alpha must lie in (0, 2), got " + std::to_string(alpha));
}

// log of alpha Gamma((d+alpha)/2) / (d 2^{2-alpha} Gamma(2-alpha/2) Gamma(d/2))
double log_ratio(int d, double alpha) {
  const double dd = d;
  return std::log(alpha) + log_gamma(0.5 * (dd + alpha)) - std::log(dd) - (2.0 - alpha) * kLn2 -
         log_gamma(2.0 - 0.5 * alpha) - log_gamma(0.5 * dd);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma needs a finite positive argument, got " + std::to_string(x));
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_sphere_surface(int d) {
  require_dimension(d);
  return kLn2 + 0.5 * d * kLnPi - log_gamma(0.5 * d);
}

double sphere_surface(int d) { return std::exp(log_sphere_surface(d)); }

double stable_intensity_constant(int d, double alpha) {
  require_dimension(d);
  require_open_alpha(alpha);
  const double log_a = std::log(alpha) + log_gamma(0.5 * (d + alpha)) - (2.0 - alpha) * kLn2 -
                       0.5 * d * kLnPi - log_gamma(1.0 - 0.5 * alpha);
  return std::exp(log_a);
}

DimConstants dim_constants(int d, double alpha) {
  DimConstants c;
  c.d = d;
  c.alpha = alpha;
  c.a_const = stable_intensity_constant(d, alpha);
  c.omega = sphere_surface(d);
  c.ratio = 1.0 + ratio_minus_one(d, alpha);
  return c;
}

double ratio_minus_one(int d, double alpha) {
  require_dimension(d);
  require_open_alpha(alpha);
  return std::expm1(log_ratio(d, alpha));
}

double j11_prefactor(int d, double alpha) { return 0.5 * ratio_minus_one(d, alpha); }

double crate_bound_fit(std::span<const int> d_grid, std::span<const double> alpha_grid) {
  if (d_grid.empty() || alpha_grid.empty()) throw ArgumentError("crate_bound_fit: empty grid");
  double worst = 0.0;
  for (int d : d_grid) {
    for (double alpha : alpha_grid) {
      const double bound = std::log1p(static_cast<double>(d)) * (2.0 - alpha);
      worst = std::max(worst, std::abs(ratio_minus_one(d, alpha)) / bound);
    }
  }
  return worst;
}

double subordinator_neg_moment(double t, double alpha, NegativePower power) {
  if (!(t > 0.0)) throw DomainError("subordinator_neg_moment: t must be positive");
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw DomainError("subordinator_neg_moment: alpha must lie in (0, 2]");
  if (alpha == 2.0) {
    // S_t = t.
    return power == NegativePower::half ? 1.0 / std::sqrt(t) : 1.0 / t;
  }
  if (power == NegativePower::half) {
    // sqrt(2/pi) Gamma(1 + 1/alpha) 2^{1/alpha} t^{-1/alpha}
    const double log_m = 0.5 * (kLn2 - kLnPi) + log_gamma(1.0 + 1.0 / alpha) +
                         (kLn2 - std::log(t)) / alpha;
    return std::exp(log_m);
  }
  // Gamma(1 + 2/alpha) 2^{2/alpha} t^{-2/alpha} / 2
  const double log_m = -kLn2 + log_gamma(1.0 + 2.0 / alpha) + 2.0 * (kLn2 - std::log(t)) / alpha;
  return std::exp(log_m);
}

double norm_mean_prefactor(int d) {
  require_dimension(d);
  return std::exp(kLn2 + log_gamma(0.5 * (d + 1.0)) - 0.5 * kLnPi - log_gamma(0.5 * d));
}

double stable_mean_norm(int d, double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw DomainError("stable_mean_norm: alpha must lie in (1, 2]");
  return norm_mean_prefactor(d) * std::exp(-kLn2 / alpha + log_gamma(1.0 - 1.0 / alpha));
}

double gaussian_mean_norm(int d) {
  return norm_mean_prefactor(d) * std::sqrt(0.5) * std::sqrt(std::numbers::pi);
}

double phi(double x) {
  if (!(x > 1.0 && x <= 2.0)) throw DomainError("phi: argument must lie in (1, 2]");
  return std::exp(-std::log(2.0 * x) / x + log_gamma(1.0 - 1.0 / x));
}

}  // namespace stablegap::specfun
