#include "stablegap/stable_sampling.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "stablegap/errors.hpp"

namespace stablegap {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw ArgumentError("alpha must lie in (0, 2], got " + std::to_string(alpha));
}

}  // namespace

StableModel::StableModel(int d, double alpha)
    : d_(d), alpha_(alpha), sigma_(Eigen::MatrixXd::Identity(d, d)), identity_(true) {
  if (d < 1) throw ArgumentError("StableModel: dimension must be >= 1");
  require_alpha(alpha);
}

StableModel::StableModel(double alpha, Eigen::MatrixXd sigma)
    : d_(static_cast<int>(sigma.rows())), alpha_(alpha), sigma_(std::move(sigma)), identity_(false) {
  require_alpha(alpha);
  if (d_ < 1 || sigma_.rows() != sigma_.cols())
    throw ArgumentError("StableModel: sigma must be a non-empty square matrix");
  if (!sigma_.allFinite()) throw ArgumentError("StableModel: sigma has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sigma_);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || smax / smin > kMaxConditionNumber)
    throw ArgumentError("StableModel: sigma is singular or too ill-conditioned");
  identity_ = sigma_.isIdentity(0.0);
}

void StableModel::apply_sigma(std::span<const double> in, std::span<double> out) const {
  if (identity_) {
    if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
    return;
  }
  Eigen::Map<const Eigen::VectorXd> v(in.data(), d_);
  Eigen::VectorXd r = sigma_ * v;
  std::copy(r.data(), r.data() + d_, out.begin());
}

double sample_positive_stable(double beta, RngStream& rng) {
  assert(beta > 0.0 && beta < 1.0);
  const double u = std::numbers::pi * rng.uniform_open();
  const double log_e = std::log(rng.exponential());
  // Zolotarev's A(u) = [sin(beta u) / sin u]^{1/(1-beta)} sin((1-beta) u) / sin(beta u)
  const double log_sin_bu = std::log(std::sin(beta * u));
  const double log_a = (log_sin_bu - std::log(std::sin(u))) / (1.0 - beta) +
                       std::log(std::sin((1.0 - beta) * u)) - log_sin_bu;
  return std::exp((log_a - log_e) * (1.0 - beta) / beta);
}

double subordinator_scale(double alpha, double dt) {
  return 2.0 * std::pow(0.5 * dt, 2.0 / alpha);
}

double sample_subordinator_increment(double alpha, double dt, RngStream& rng) {
  require_alpha(alpha);
  if (!(dt > 0.0)) throw ArgumentError("subordinator increment needs dt > 0");
  if (alpha == 2.0) return dt;
  const double s = subordinator_scale(alpha, dt) * sample_positive_stable(0.5 * alpha, rng);
  assert(s > 0.0);
  return s;
}

void sample_gaussian_increment(double dt, RngStream& rng, std::span<double> out) {
  if (!(dt >= 0.0)) throw ArgumentError("gaussian increment needs dt >= 0");
  const double sd = std::sqrt(dt);
  for (double& v : out) v = sd * rng.normal();
}

std::vector<double> sample_gaussian_increment(int d, double dt, RngStream& rng) {
  if (d < 1) throw ArgumentError("gaussian increment needs d >= 1");
  std::vector<double> out(static_cast<std::size_t>(d));
  sample_gaussian_increment(dt, rng, out);
  return out;
}

void sample_stable_increment(const StableModel& model, double dt, RngStream& rng,
                             std::span<double> out) {
  const double s = sample_subordinator_increment(model.alpha(), dt, rng);
  sample_gaussian_increment(s, rng, out);
  if (!model.sigma_is_identity()) model.apply_sigma(out, out);
}

std::vector<double> sample_stable_increment(const StableModel& model, double dt,
                                            RngStream& rng) {
  std::vector<double> out(static_cast<std::size_t>(model.d()));
  sample_stable_increment(model, dt, rng, out);
  return out;
}

EmpiricalMeasure sample_stable_cloud(const StableModel& model, double dt, std::size_t n,
                                     RngStream& rng) {
  if (n == 0) throw ArgumentError("sample_stable_cloud: n must be positive");
  EmpiricalMeasure cloud(n, static_cast<std::size_t>(model.d()));
  for (std::size_t i = 0; i < n; ++i) sample_stable_increment(model, dt, rng, cloud.point(i));
  return cloud;
}

CharFunctionEstimate empirical_char_function(const EmpiricalMeasure& samples,
                                             std::span<const double> xi) {
  const std::size_t n = samples.n();
  if (n == 0) throw ArgumentError("empirical_char_function: no samples");
  if (xi.size() != samples.d()) throw ArgumentError("empirical_char_function: xi has wrong size");
  double sc = 0.0, ss = 0.0, sc2 = 0.0, ss2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double phase = 0.0;
    const auto x = samples.point(i);
    for (std::size_t k = 0; k < xi.size(); ++k) phase += xi[k] * x[k];
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    sc += c;
    ss += s;
    sc2 += c * c;
    ss2 += s * s;
  }
  const double nn = static_cast<double>(n);
  CharFunctionEstimate est;
  est.re = sc / nn;
  est.im = ss / nn;
  if (n > 1) {
    const double var_c = std::max(0.0, (sc2 - nn * est.re * est.re) / (nn - 1.0));
    const double var_s = std::max(0.0, (ss2 - nn * est.im * est.im) / (nn - 1.0));
    est.re_stderr = std::sqrt(var_c / nn);
    est.im_stderr = std::sqrt(var_s / nn);
  }
  return est;
}

}  // namespace stablegap
