#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "stablegap/empirical_measure.hpp"
#include "stablegap/rng.hpp"
#include "stablegap/stable_sampling.hpp"

namespace stablegap {

/// Which driving noise an integration uses: sigma dL (stable) or sigma dB (brownian).
enum class NoiseKind { stable, brownian };

/// The drift b together with its dissipativity constant theta0, offset K and
/// derivative bounds theta1..theta3.
struct DriftSpec {
  enum class Kind { ornstein_uhlenbeck, custom };
  using VectorField = std::function<void(std::span<const double> x, std::span<double> out)>;

  Kind kind = Kind::ornstein_uhlenbeck;
  int d = 1;
  VectorField eval;
  /// Row-major d x d Jacobian of b; may be empty.
  VectorField jacobian;
  double theta0 = 1.0;
  double K = 0.0;
  double theta1 = 1.0;
  double theta2 = 0.0;
  double theta3 = 0.0;

  /// b(x) = -x with theta0 = theta1 = 1 and K = theta2 = theta3 = 0.
  static DriftSpec ornstein_uhlenbeck(int d);

  /// Builds a custom drift and spot-checks <x-y, b(x)-b(y)> <= -theta0 |x-y|^2 + K
  /// on 10^4 random pairs; throws ArgumentError on the first violation.
  static DriftSpec custom(int d, VectorField eval, double theta0, double K, double theta1,
                          double theta2, double theta3, VectorField jacobian = {},
                          std::uint64_t check_seed = 0x5eedULL);

  bool has_jacobian() const noexcept { return static_cast<bool>(jacobian); }

  /// 1e-3 * min(1, 1/theta1).
  double default_step() const;
  /// 10 / theta0.
  double default_burn_in() const;
};

/// Euler-Maruyama path on a uniform grid t_k = k T / n_steps.
struct SdePath {
  int d = 0;
  NoiseKind noise = NoiseKind::stable;
  std::size_t n_steps = 0;
  std::vector<double> times;
  std::vector<double> states;  ///< (n_steps + 1) x d, row-major

  std::span<const double> state(std::size_t k) const {
    return {states.data() + k * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
  std::span<const double> endpoint() const { return state(n_steps); }
};

/// grad_v X_t along a frozen path; flow[0] = v.
struct VariationalPath {
  const SdePath* base = nullptr;
  std::vector<double> direction;
  std::vector<double> flow;  ///< (n_steps + 1) x d

  std::span<const double> at(std::size_t k) const {
    const auto d = direction.size();
    return {flow.data() + k * d, d};
  }
};

/// States with |x| above this abort integration.
inline constexpr double kOverflowGuard = 1e12;

/// One noise increment (sigma dL or sigma dB) over a step h.
void draw_increment(const StableModel& model, NoiseKind noise, double h, RngStream& rng,
                    std::span<double> out);

/// x_{k+1} = x_k + b(x_k) h + increment_k. Throws IntegrationError on a non-finite
/// or overflowing state, ArgumentError on bad T, n_steps or dimensions.
SdePath integrate(const StableModel& model, NoiseKind noise, const DriftSpec& drift,
                  std::span<const double> x0, double T, std::size_t n_steps, RngStream& rng);

/// Same scheme, keeping only the states at the requested step indices (ascending,
/// each <= n_steps). Returns record_steps.size() x d values.
std::vector<double> integrate_recorded(const StableModel& model, NoiseKind noise,
                                       const DriftSpec& drift, std::span<const double> x0,
                                       double T, std::size_t n_steps,
                                       std::span<const std::size_t> record_steps,
                                       RngStream& rng);

/// Two paths from x0 and y0 consuming the same increment sequence.
std::pair<SdePath, SdePath> integrate_coupled(const StableModel& model, NoiseKind noise,
                                              const DriftSpec& drift,
                                              std::span<const double> x0,
                                              std::span<const double> y0, double T,
                                              std::size_t n_steps, RngStream& rng);

/// Euler integration of d/dt grad_v X_t = grad b(X_t) grad_v X_t along `path`.
/// Throws ArgumentError when the drift has no Jacobian.
VariationalPath variational_flow(const SdePath& path, const DriftSpec& drift,
                                 std::span<const double> v);

/// Long-run sampling from the ergodic law: one chain started at the origin,
/// run for burn_in_T, then n_samples states recorded thinning_T apart.
EmpiricalMeasure ergodic_sample(const StableModel& model, NoiseKind noise,
                                const DriftSpec& drift, double burn_in_T,
                                std::size_t n_samples, double thinning_T,
                                std::size_t n_steps_per_unit, RngStream& rng);

}  // namespace stablegap
