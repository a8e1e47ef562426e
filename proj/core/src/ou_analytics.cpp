#include "stablegap/ou_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stablegap/errors.hpp"
#include "stablegap/specfun.hpp"
#include "stablegap/stable_sampling.hpp"

namespace stablegap::ou {

OuStationaryLaw OuStationaryLaw::stable(int d, double alpha) {
  if (d < 1) throw ArgumentError("OuStationaryLaw: d must be >= 1");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ArgumentError("OuStationaryLaw: alpha must lie in (0, 2]");
  return {d, Kind::stable, alpha, std::pow(alpha, -1.0 / alpha)};
}

OuStationaryLaw OuStationaryLaw::gaussian(int d) {
  if (d < 1) throw ArgumentError("OuStationaryLaw: d must be >= 1");
  return {d, Kind::gaussian, 2.0, std::sqrt(0.5)};
}

EmpiricalMeasure ou_stationary_sample(const OuStationaryLaw& law, std::size_t n, RngStream& rng) {
  if (n == 0) throw ArgumentError("ou_stationary_sample: n must be positive");
  const auto d = static_cast<std::size_t>(law.d());
  EmpiricalMeasure out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = law.kind() == OuStationaryLaw::Kind::stable
                         ? sample_subordinator_increment(law.alpha(), 1.0, rng)
                         : 1.0;
    const double amp = law.scale() * std::sqrt(s);
    for (double& v : out.point(i)) v = amp * rng.normal();
  }
  return out;
}

std::pair<EmpiricalMeasure, EmpiricalMeasure> ou_stationary_sample_shared(int d, double alpha,
                                                                          std::size_t n,
                                                                          RngStream& rng) {
  const auto stable = OuStationaryLaw::stable(d, alpha);
  const auto gauss = OuStationaryLaw::gaussian(d);
  if (n == 0) throw ArgumentError("ou_stationary_sample_shared: n must be positive");
  const auto dd = static_cast<std::size_t>(d);
  std::pair<EmpiricalMeasure, EmpiricalMeasure> out{EmpiricalMeasure(n, dd), EmpiricalMeasure(n, dd)};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sample_subordinator_increment(alpha, 1.0, rng);
    const double amp = stable.scale() * std::sqrt(s);
    auto x = out.first.point(i);
    auto y = out.second.point(i);
    for (std::size_t k = 0; k < dd; ++k) {
      const double g = rng.normal();
      x[k] = amp * g;
      y[k] = gauss.scale() * g;
    }
  }
  return out;
}

std::complex<double> ou_transient_char(std::span<const double> xi, double t,
                                       std::span<const double> x, double alpha) {
  if (!(t >= 0.0)) throw ArgumentError("ou_transient_char: t must be non-negative");
  if (xi.size() != x.size()) throw ArgumentError("ou_transient_char: xi and x differ in size");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ArgumentError("ou_transient_char: alpha must lie in (0, 2]");
  double phase = 0.0, norm2 = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    phase += xi[k] * x[k];
    norm2 += xi[k] * xi[k];
  }
  phase *= std::exp(-t);
  // 1 - e^{-alpha t} written with expm1 so small t keeps full precision.
  const double modulus =
      std::exp(std::pow(norm2, 0.5 * alpha) * std::expm1(-alpha * t) / (2.0 * alpha));
  return std::polar(modulus, phase);
}

double ou_w1_lower_exact(int d, double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("ou_w1_lower_exact: alpha must lie in (1, 2)");
  const double stable_part =
      std::exp(-std::log(2.0 * alpha) / alpha + specfun::log_gamma(1.0 - 1.0 / alpha));
  const double gauss_part = 0.5 * std::sqrt(std::numbers::pi);
  return specfun::norm_mean_prefactor(d) * std::abs(stable_part - gauss_part);
}

double ou_w1_lower_via_phi(int d, double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("ou_w1_lower_via_phi: alpha must lie in (1, 2)");
  return specfun::norm_mean_prefactor(d) * std::abs(specfun::phi(alpha) - specfun::phi(2.0));
}

GammaLowerBounds gammalower_check(std::span<const double> alpha_grid) {
  if (alpha_grid.empty()) throw ArgumentError("gammalower_check: empty grid");
  GammaLowerBounds b{std::numeric_limits<double>::infinity(), 0.0};
  const double phi2 = specfun::phi(2.0);
  for (double alpha : alpha_grid) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw ArgumentError("gammalower_check: alpha outside (1, 2)");
    const double q = std::abs(specfun::phi(alpha) - phi2) / (2.0 - alpha);
    b.c1_hat = std::min(b.c1_hat, q);
    b.c2_hat = std::max(b.c2_hat, q);
  }
  return b;
}

}  // namespace stablegap::ou
