#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stablegap/empirical_measure.hpp"
#include "stablegap/rng.hpp"

namespace stablegap {

/// Noise model of dX = b(X) dt + sigma dL: dimension, stability index and the
/// diffusion matrix. alpha = 2 means L is a standard Brownian motion.
class StableModel {
 public:
  /// sigma = identity.
  StableModel(int d, double alpha);
  /// Throws ArgumentError unless sigma is square of size d with condition number <= 1e12.
  StableModel(double alpha, Eigen::MatrixXd sigma);

  int d() const noexcept { return d_; }
  double alpha() const noexcept { return alpha_; }
  const Eigen::MatrixXd& sigma() const noexcept { return sigma_; }
  bool is_brownian() const noexcept { return alpha_ == 2.0; }
  bool sigma_is_identity() const noexcept { return identity_; }

  /// out = sigma * in.
  void apply_sigma(std::span<const double> in, std::span<double> out) const;

  static constexpr double kMaxConditionNumber = 1e12;

 private:
  int d_;
  double alpha_;
  Eigen::MatrixXd sigma_;
  bool identity_;
};

/// Standard one-sided stable variable of index beta in (0, 1),
/// E exp(-lambda T) = exp(-lambda^beta). Kanter's representation, evaluated in log space.
double sample_positive_stable(double beta, RngStream& rng);

/// Scale c with S_dt = c T: c = 2 (dt/2)^{2/alpha}.
double subordinator_scale(double alpha, double dt);

/// Increment of the alpha/2-stable subordinator over a step dt:
/// E exp(-r S) = exp(-dt (2r)^{alpha/2} / 2). Returns exactly dt when alpha = 2.
double sample_subordinator_increment(double alpha, double dt, RngStream& rng);

/// d independent N(0, dt) components written to out. dt = 0 yields zeros.
void sample_gaussian_increment(double dt, RngStream& rng, std::span<double> out);
std::vector<double> sample_gaussian_increment(int d, double dt, RngStream& rng);

/// sigma * sqrt(S) * G with S a subordinator increment and G ~ N(0, I_d).
/// Before sigma, the increment has characteristic function exp(-dt |xi|^alpha / 2).
void sample_stable_increment(const StableModel& model, double dt, RngStream& rng,
                             std::span<double> out);
std::vector<double> sample_stable_increment(const StableModel& model, double dt,
                                            RngStream& rng);

/// n i.i.d. copies of L_dt (sigma applied).
EmpiricalMeasure sample_stable_cloud(const StableModel& model, double dt, std::size_t n,
                                     RngStream& rng);

struct CharFunctionEstimate {
  double re = 0.0;
  double im = 0.0;
  double re_stderr = 0.0;
  double im_stderr = 0.0;

  std::complex<double> value() const { return {re, im}; }
};

/// Sample mean of (cos<xi, x>, sin<xi, x>) with per-component standard errors.
CharFunctionEstimate empirical_char_function(const EmpiricalMeasure& samples,
                                             std::span<const double> xi);

}  // namespace stablegap
