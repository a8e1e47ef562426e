#pragma once

#include <span>

namespace stablegap::specfun {

/// Constants attached to the rotationally symmetric alpha-stable Levy measure
/// A(d, alpha) |z|^{-d-alpha} dz in dimension d.
struct DimConstants {
  int d = 0;
  double alpha = 0.0;
  double a_const = 0.0;  ///< A(d, alpha)
  double omega = 0.0;    ///< surface area of the unit sphere in R^d
  double ratio = 0.0;    ///< A(d, alpha) * omega / (d (2 - alpha))
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// omega_{d-1} = 2 pi^{d/2} / Gamma(d/2).
double sphere_surface(int d);
double log_sphere_surface(int d);

/// A(d, alpha) = alpha Gamma((d+alpha)/2) / (2^{2-alpha} pi^{d/2} Gamma(1-alpha/2)),
/// evaluated in log space. Requires 0 < alpha < 2.
double stable_intensity_constant(int d, double alpha);

DimConstants dim_constants(int d, double alpha);

/// A(d, alpha) omega_{d-1} / (d (2 - alpha)) - 1.
///
/// Uses the pole-free rewrite alpha Gamma((d+alpha)/2) / (d 2^{2-alpha} Gamma(2-alpha/2) Gamma(d/2))
/// so Gamma(1 - alpha/2) is never touched; tends to 0 as alpha -> 2.
double ratio_minus_one(int d, double alpha);

/// Coefficient of <Hess f, sigma sigma^T>_HS left over in the small-jump part of the
/// generator difference; exactly ratio_minus_one / 2.
double j11_prefactor(int d, double alpha);

/// max over the grid of |ratio_minus_one(d, alpha)| / (log(1 + d) (2 - alpha)).
double crate_bound_fit(std::span<const int> d_grid, std::span<const double> alpha_grid);

enum class NegativePower { half, one };

/// E S_t^{-1/2} or E S_t^{-1} for the alpha/2-stable subordinator with
/// E exp(-r S_t) = exp(-t (2r)^{alpha/2} / 2). alpha in (0, 2]; alpha = 2 gives t^{-1/2}, t^{-1}.
double subordinator_neg_moment(double t, double alpha, NegativePower power);

/// 2 Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)); equals E|G| / sqrt(2) for G ~ N(0, I_d).
double norm_mean_prefactor(int d);

/// E|L_1| for the rotationally symmetric alpha-stable L with E exp(i xi L_1) = exp(-|xi|^alpha / 2).
/// Requires 1 < alpha <= 2.
double stable_mean_norm(int d, double alpha);

/// E|B_1| for standard Brownian motion in R^d.
double gaussian_mean_norm(int d);

/// phi(x) = (2x)^{-1/x} Gamma(1 - 1/x) on (1, 2]; phi(2) = sqrt(pi) / 2.
double phi(double x);

}  // namespace stablegap::specfun
