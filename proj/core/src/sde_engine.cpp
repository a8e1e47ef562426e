#include "stablegap/sde_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stablegap/errors.hpp"

namespace stablegap {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_inputs(const StableModel& model, const DriftSpec& drift, std::span<const double> x0,
                  double T, std::size_t n_steps) {
  if (!(T > 0.0)) throw ArgumentError("integrate: T must be positive");
  if (n_steps < 1) throw ArgumentError("integrate: n_steps must be >= 1");
  if (drift.d != model.d() || x0.size() != static_cast<std::size_t>(model.d()))
    throw ArgumentError("integrate: dimension mismatch between model, drift and x0");
  if (!drift.eval) throw ArgumentError("integrate: drift has no evaluator");
}

// Advances x in place by one Euler step using a precomputed noise increment.
void euler_step(const DriftSpec& drift, double h, std::span<double> x, std::span<const double> dn,
                std::span<double> scratch, std::size_t step) {
  drift.eval(x, scratch);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] += scratch[k] * h + dn[k];
    norm2 += x[k] * x[k];
  }
  if (!std::isfinite(norm2))
    throw IntegrationError("integrate: non-finite state", step);
  if (norm2 > kOverflowGuard * kOverflowGuard)
    throw IntegrationError("integrate: |state| exceeded overflow guard", step);
}

}  // namespace

DriftSpec DriftSpec::ornstein_uhlenbeck(int d) {
  if (d < 1) throw ArgumentError("ornstein_uhlenbeck: d must be >= 1");
  DriftSpec spec;
  spec.kind = Kind::ornstein_uhlenbeck;
  spec.d = d;
  spec.eval = [](std::span<const double> x, std::span<double> out) {
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = -x[k];
  };
  spec.jacobian = [d](std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(k * d + k)] = -1.0;
  };
  spec.theta0 = 1.0;
  spec.K = 0.0;
  spec.theta1 = 1.0;
  spec.theta2 = 0.0;
  spec.theta3 = 0.0;
  return spec;
}

DriftSpec DriftSpec::custom(int d, VectorField eval, double theta0, double K, double theta1,
                            double theta2, double theta3, VectorField jacobian,
                            std::uint64_t check_seed) {
  if (d < 1) throw ArgumentError("custom drift: d must be >= 1");
  if (!eval) throw ArgumentError("custom drift: evaluator required");
  if (!(theta0 > 0.0) || K < 0.0 || theta1 < 0.0 || theta2 < 0.0 || theta3 < 0.0)
    throw ArgumentError("custom drift: need theta0 > 0 and K, theta1..theta3 >= 0");
  DriftSpec spec;
  spec.kind = Kind::custom;
  spec.d = d;
  spec.eval = std::move(eval);
  spec.jacobian = std::move(jacobian);
  spec.theta0 = theta0;
  spec.K = K;
  spec.theta1 = theta1;
  spec.theta2 = theta2;
  spec.theta3 = theta3;

  const auto dd = static_cast<std::size_t>(d);
  std::vector<double> x(dd), y(dd), bx(dd), by(dd), diff(dd), bdiff(dd);
  RngStream rng(check_seed, 0);
  constexpr int kPairs = 10000;
  for (int i = 0; i < kPairs; ++i) {
    // Mix scales so both the near-diagonal and the far field are probed.
    const double scale = (i % 3 == 0) ? 0.1 : (i % 3 == 1 ? 3.0 : 30.0);
    for (std::size_t k = 0; k < dd; ++k) {
      x[k] = scale * rng.normal();
      y[k] = scale * rng.normal();
    }
    spec.eval(x, bx);
    spec.eval(y, by);
    for (std::size_t k = 0; k < dd; ++k) {
      diff[k] = x[k] - y[k];
      bdiff[k] = bx[k] - by[k];
    }
    const double lhs = dot(diff, bdiff);
    const double rhs = -theta0 * dot(diff, diff) + K;
    if (lhs > rhs + 1e-9 * (1.0 + std::abs(rhs)))
      throw ArgumentError("custom drift violates the dissipativity bound at pair " +
                          std::to_string(i));
  }
  return spec;
}

double DriftSpec::default_step() const { return 1e-3 * std::min(1.0, 1.0 / theta1); }

double DriftSpec::default_burn_in() const { return 10.0 / theta0; }

void draw_increment(const StableModel& model, NoiseKind noise, double h, RngStream& rng,
                    std::span<double> out) {
  if (noise == NoiseKind::brownian) {
    sample_gaussian_increment(h, rng, out);
    if (!model.sigma_is_identity()) model.apply_sigma(out, out);
  } else {
    sample_stable_increment(model, h, rng, out);
  }
}

SdePath integrate(const StableModel& model, NoiseKind noise, const DriftSpec& drift,
                  std::span<const double> x0, double T, std::size_t n_steps, RngStream& rng) {
  check_inputs(model, drift, x0, T, n_steps);
  const auto d = x0.size();
  const double h = T / static_cast<double>(n_steps);
  SdePath path;
  path.d = model.d();
  path.noise = noise;
  path.n_steps = n_steps;
  path.times.resize(n_steps + 1);
  path.states.resize((n_steps + 1) * d);
  std::copy(x0.begin(), x0.end(), path.states.begin());
  std::vector<double> x(x0.begin(), x0.end()), dn(d), scratch(d);
  for (std::size_t k = 0; k < n_steps; ++k) {
    draw_increment(model, noise, h, rng, dn);
    euler_step(drift, h, x, dn, scratch, k + 1);
    std::copy(x.begin(), x.end(), path.states.begin() + static_cast<std::ptrdiff_t>((k + 1) * d));
  }
  for (std::size_t k = 0; k <= n_steps; ++k)
    path.times[k] = T * static_cast<double>(k) / static_cast<double>(n_steps);
  return path;
}

std::vector<double> integrate_recorded(const StableModel& model, NoiseKind noise,
                                       const DriftSpec& drift, std::span<const double> x0,
                                       double T, std::size_t n_steps,
                                       std::span<const std::size_t> record_steps,
                                       RngStream& rng) {
  check_inputs(model, drift, x0, T, n_steps);
  if (!std::is_sorted(record_steps.begin(), record_steps.end()) ||
      (!record_steps.empty() && record_steps.back() > n_steps))
    throw ArgumentError("integrate_recorded: record steps must be ascending and <= n_steps");
  const auto d = x0.size();
  const double h = T / static_cast<double>(n_steps);
  std::vector<double> out;
  out.reserve(record_steps.size() * d);
  std::vector<double> x(x0.begin(), x0.end()), dn(d), scratch(d);
  std::size_t next = 0;
  auto record = [&](std::size_t k) {
    while (next < record_steps.size() && record_steps[next] == k) {
      out.insert(out.end(), x.begin(), x.end());
      ++next;
    }
  };
  record(0);
  for (std::size_t k = 0; k < n_steps && next < record_steps.size(); ++k) {
    draw_increment(model, noise, h, rng, dn);
    euler_step(drift, h, x, dn, scratch, k + 1);
    record(k + 1);
  }
  return out;
}

std::pair<SdePath, SdePath> integrate_coupled(const StableModel& model, NoiseKind noise,
                                              const DriftSpec& drift,
                                              std::span<const double> x0,
                                              std::span<const double> y0, double T,
                                              std::size_t n_steps, RngStream& rng) {
  check_inputs(model, drift, x0, T, n_steps);
  check_inputs(model, drift, y0, T, n_steps);
  const auto d = x0.size();
  const double h = T / static_cast<double>(n_steps);
  std::pair<SdePath, SdePath> paths;
  for (SdePath* p : {&paths.first, &paths.second}) {
    p->d = model.d();
    p->noise = noise;
    p->n_steps = n_steps;
    p->times.resize(n_steps + 1);
    p->states.resize((n_steps + 1) * d);
    for (std::size_t k = 0; k <= n_steps; ++k)
      p->times[k] = T * static_cast<double>(k) / static_cast<double>(n_steps);
  }
  std::copy(x0.begin(), x0.end(), paths.first.states.begin());
  std::copy(y0.begin(), y0.end(), paths.second.states.begin());
  std::vector<double> x(x0.begin(), x0.end()), y(y0.begin(), y0.end()), dn(d), scratch(d);
  for (std::size_t k = 0; k < n_steps; ++k) {
    draw_increment(model, noise, h, rng, dn);
    euler_step(drift, h, x, dn, scratch, k + 1);
    euler_step(drift, h, y, dn, scratch, k + 1);
    const auto offset = static_cast<std::ptrdiff_t>((k + 1) * d);
    std::copy(x.begin(), x.end(), paths.first.states.begin() + offset);
    std::copy(y.begin(), y.end(), paths.second.states.begin() + offset);
  }
  return paths;
}

VariationalPath variational_flow(const SdePath& path, const DriftSpec& drift,
                                 std::span<const double> v) {
  if (!drift.has_jacobian()) throw ArgumentError("variational_flow: drift has no Jacobian");
  const auto d = static_cast<std::size_t>(path.d);
  if (v.size() != d) throw ArgumentError("variational_flow: direction has wrong size");
  VariationalPath vp;
  vp.base = &path;
  vp.direction.assign(v.begin(), v.end());
  vp.flow.resize((path.n_steps + 1) * d);
  std::copy(v.begin(), v.end(), vp.flow.begin());
  std::vector<double> jac(d * d), cur(v.begin(), v.end()), next(d);
  for (std::size_t k = 0; k < path.n_steps; ++k) {
    const double h = path.times[k + 1] - path.times[k];
    drift.jacobian(path.state(k), jac);
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += jac[i * d + j] * cur[j];
      next[i] = cur[i] + h * s;
    }
    cur.swap(next);
    std::copy(cur.begin(), cur.end(), vp.flow.begin() + static_cast<std::ptrdiff_t>((k + 1) * d));
  }
  return vp;
}

EmpiricalMeasure ergodic_sample(const StableModel& model, NoiseKind noise,
                                const DriftSpec& drift, double burn_in_T,
                                std::size_t n_samples, double thinning_T,
                                std::size_t n_steps_per_unit, RngStream& rng) {
  if (!(burn_in_T > 0.0) || !(thinning_T > 0.0))
    throw ArgumentError("ergodic_sample: burn-in and thinning must be positive");
  if (n_samples == 0 || n_steps_per_unit == 0)
    throw ArgumentError("ergodic_sample: n_samples and n_steps_per_unit must be positive");
  const auto d = static_cast<std::size_t>(model.d());
  if (drift.d != model.d()) throw ArgumentError("ergodic_sample: dimension mismatch");
  const double h = 1.0 / static_cast<double>(n_steps_per_unit);
  const auto burn_steps =
      static_cast<std::size_t>(std::ceil(burn_in_T * static_cast<double>(n_steps_per_unit)));
  const auto thin_steps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(thinning_T * static_cast<double>(n_steps_per_unit))));
  EmpiricalMeasure out(n_samples, d);
  std::vector<double> x(d, 0.0), dn(d), scratch(d);
  std::size_t step = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      draw_increment(model, noise, h, rng, dn);
      euler_step(drift, h, x, dn, scratch, ++step);
    }
  };
  advance(burn_steps);
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (i > 0) advance(thin_steps);
    auto p = out.point(i);
    std::copy(x.begin(), x.end(), p.begin());
  }
  return out;
}

}  // namespace stablegap
