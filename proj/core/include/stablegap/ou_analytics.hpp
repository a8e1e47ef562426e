#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include "stablegap/empirical_measure.hpp"
#include "stablegap/rng.hpp"

namespace stablegap::ou {

/// Invariant law of dX = -X dt + dL (stable, law of alpha^{-1/alpha} L_1)
/// or dY = -Y dt + dB (gaussian, law of 2^{-1/2} B_1).
class OuStationaryLaw {
 public:
  enum class Kind { stable, gaussian };

  static OuStationaryLaw stable(int d, double alpha);
  static OuStationaryLaw gaussian(int d);

  int d() const noexcept { return d_; }
  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  /// alpha^{-1/alpha} or 2^{-1/2}.
  double scale() const noexcept { return scale_; }

 private:
  OuStationaryLaw(int d, Kind kind, double alpha, double scale)
      : d_(d), kind_(kind), alpha_(alpha), scale_(scale) {}

  int d_;
  Kind kind_;
  double alpha_;
  double scale_;
};

/// n i.i.d. draws from the law.
EmpiricalMeasure ou_stationary_sample(const OuStationaryLaw& law, std::size_t n, RngStream& rng);

/// n draws from each of mu_alpha and mu that share the Gaussian factor:
/// x_i = alpha^{-1/alpha} sqrt(S_i) G_i, y_i = 2^{-1/2} G_i. Each cloud is still an
/// exact i.i.d. sample of its own law.
std::pair<EmpiricalMeasure, EmpiricalMeasure> ou_stationary_sample_shared(int d, double alpha,
                                                                          std::size_t n,
                                                                          RngStream& rng);

/// E exp(i <xi, X_t>) for the stable OU started at x:
/// exp(i <xi, e^{-t} x>) exp(-(2 alpha)^{-1} |xi|^alpha (1 - e^{-alpha t})).
std::complex<double> ou_transient_char(std::span<const double> xi, double t,
                                       std::span<const double> x, double alpha);

/// Exact lower bound |E|X_alpha| - E|Y|| on W1(mu_alpha, mu), d-dimensional OU:
/// prefactor(d) |(2 alpha)^{-1/alpha} Gamma(1 - 1/alpha) - Gamma(1/2) / 2|.
double ou_w1_lower_exact(int d, double alpha);

/// Same quantity evaluated as prefactor(d) |phi(alpha) - phi(2)|.
double ou_w1_lower_via_phi(int d, double alpha);

struct GammaLowerBounds {
  double c1_hat = 0.0;
  double c2_hat = 0.0;
};

/// min and max of |phi(alpha) - phi(2)| / (2 - alpha) over a grid inside (1, 2).
GammaLowerBounds gammalower_check(std::span<const double> alpha_grid);

}  // namespace stablegap::ou
