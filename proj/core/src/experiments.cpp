#include "stablegap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "stablegap/errors.hpp"
#include "stablegap/ou_analytics.hpp"
#include "stablegap/parallel.hpp"
#include "stablegap/sde_engine.hpp"
#include "stablegap/specfun.hpp"
#include "stablegap/stable_sampling.hpp"
#include "stablegap/stats.hpp"
#include "stablegap/wasserstein.hpp"

namespace stablegap {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream-id namespaces; ids are (tag << 48) | (group << 32) | index.
enum StreamTag : std::uint64_t {
  kTagSweep = 1,
  kTagFloor = 2,
  kTagTransient = 3,
  kTagStationaryRef = 4,
  kTagContraction = 5,
  kTagGradient = 6,
  kTagDimLarge = 7,
  kTagDimSmall = 8,
  kTagSelftest = 9,
  kTagBootstrap = 10,
};

std::uint64_t stream_id(StreamTag tag, std::uint64_t group, std::uint64_t index) {
  return (static_cast<std::uint64_t>(tag) << 48) | ((group & 0xffffULL) << 32) |
         (index & 0xffffffffULL);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> embed(const std::vector<double>& v, int d) {
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  if (v.size() == out.size()) return v;
  if (v.size() != 1) throw ArgumentError("starting point must have 1 or d components");
  out[0] = v[0];
  return out;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// b(x) = -2x + sin(x) componentwise: grad b = diag(-2 + cos x) in [-3, -1].
DriftSpec sine_dissipative_drift(int d) {
  return DriftSpec::custom(
      d,
      [](std::span<const double> x, std::span<double> out) {
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = -2.0 * x[k] + std::sin(x[k]);
      },
      /*theta0=*/1.0, /*K=*/0.0, /*theta1=*/3.0, /*theta2=*/1.0, /*theta3=*/1.0,
      [d](std::span<const double> x, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (int k = 0; k < d; ++k)
          out[static_cast<std::size_t>(k * d + k)] = -2.0 + std::cos(x[static_cast<std::size_t>(k)]);
      });
}

DriftSpec make_drift(const ExperimentConfig& cfg, int d) {
  return cfg.drift == DriftChoice::ou ? DriftSpec::ornstein_uhlenbeck(d) : sine_dissipative_drift(d);
}


std::size_t steps_for(const ExperimentConfig& cfg, double T) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(T * static_cast<double>(cfg.steps_per_unit))));
}

// W1 between two clouds with the configured estimator, no internal bootstrap:
// replicate-level errors are computed by the callers.
double estimate_w1(const EmpiricalMeasure& x, const EmpiricalMeasure& y, const ExperimentConfig& cfg,
                   std::uint64_t projection_stream) {
  const BootstrapOptions no_boot{0, 0};
  switch (cfg.estimator) {
    case Estimator::assignment:
      if (x.d() == 1) {
        // On the line the sorted matching is the optimal assignment.
        return w1_exact_1d(x.coordinate(0), y.coordinate(0), no_boot).value;
      }
      return w1_assignment(x, y, AssignmentOptions{4096, no_boot}).value;
    case Estimator::sliced: {
      RngStream rng(*cfg.seed, projection_stream);
      return w1_sliced(x, y, cfg.projections, rng, no_boot).value;
    }
    case Estimator::mean_norm:
      return w1_mean_norm_lower(x, y, no_boot).value;
  }
  return kNaN;
}

struct Replicated {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> values;
};

Replicated summarize(std::vector<double> values, const ExperimentConfig& cfg, std::uint64_t boot_group) {
  Replicated r;
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1 && cfg.bootstrap > 1)
    r.std_error = stats::bootstrap_mean_stderr(values, cfg.bootstrap,
                                               *cfg.seed ^ stream_id(kTagBootstrap, boot_group, 0));
  r.values = std::move(values);
  return r;
}

// Draws one (mu_alpha, mu) pair of stationary clouds.
std::pair<EmpiricalMeasure, EmpiricalMeasure> stationary_pair(const ExperimentConfig& cfg, int d, double alpha,
                                                              Coupling coupling, RngStream& rng) {
  if (cfg.drift == DriftChoice::ou) {
    if (coupling == Coupling::shared) return ou::ou_stationary_sample_shared(d, alpha, cfg.n_samples, rng);
    auto x = ou::ou_stationary_sample(ou::OuStationaryLaw::stable(d, alpha), cfg.n_samples, rng);
    auto y = ou::ou_stationary_sample(ou::OuStationaryLaw::gaussian(d), cfg.n_samples, rng);
    return {std::move(x), std::move(y)};
  }
  const auto drift = make_drift(cfg, d);
  const StableModel model(d, alpha);
  const double burn = cfg.burn_in.value_or(drift.default_burn_in());
  auto x = ergodic_sample(model, NoiseKind::stable, drift, burn, cfg.n_samples, cfg.thinning,
                          cfg.steps_per_unit, rng);
  auto y = ergodic_sample(model, NoiseKind::brownian, drift, burn, cfg.n_samples, cfg.thinning,
                          cfg.steps_per_unit, rng);
  return {std::move(x), std::move(y)};
}

// Replicated stationary W1 estimate at one alpha; `group` separates the random streams.
Replicated stationary_w1(const ExperimentConfig& cfg, int d, double alpha, Coupling coupling, StreamTag tag,
                         std::uint64_t group) {
  std::vector<double> values(cfg.replicates);
  parallel_for(cfg.replicates, [&](std::size_t r) {
    RngStream rng(*cfg.seed, stream_id(tag, group, r));
    const auto [x, y] = stationary_pair(cfg, d, alpha, coupling, rng);
    values[r] = estimate_w1(x, y, cfg, stream_id(tag, group, r) ^ 0x8000'0000ULL);
  });
  return summarize(std::move(values), cfg, (static_cast<std::uint64_t>(tag) << 16) | group);
}

double transform_x(double alpha, RateFit::Transform t) {
  const double u = 2.0 - alpha;
  return t == RateFit::Transform::log_2ma ? std::log(u) : std::log(u * std::log(1.0 / u));
}

}  // namespace

RateFit fit_rate(const std::vector<double>& alphas, const std::vector<double>& w1, RateFit::Transform transform) {
  if (alphas.size() != w1.size()) throw ArgumentError("fit_rate: length mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 1.0 && alphas[i] < 2.0) || !(w1[i] > 0.0)) continue;
    xs.push_back(transform_x(alphas[i], transform));
    ys.push_back(std::log(w1[i]));
  }
  if (xs.size() < 3) throw ArgumentError("fit_rate: need at least three points with alpha in (1, 2)");
  const auto fit = stats::least_squares(xs, ys);
  return RateFit{fit.slope, fit.intercept, fit.r_squared, transform, xs.size()};
}

// ---------------------------------------------------------------------------
// alpha sweep

AlphaSweepResult run_alpha_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const int d = cfg.d_grid.front();
  const Coupling coupling = cfg.coupling_or(Coupling::shared);
  AlphaSweepResult result;
  auto& table = result.report.table;
  table.columns = {"alpha", "w1", "std_error", "lower_exact", "two_minus_alpha"};
  std::vector<double> alphas, w1s;
  for (std::size_t a = 0; a < cfg.alpha_grid.size(); ++a) {
    const double alpha = cfg.alpha_grid[a];
    const auto est = stationary_w1(cfg, d, alpha, coupling, kTagSweep, a);
    const double lower = (alpha > 1.0 && alpha < 2.0) ? ou::ou_w1_lower_exact(d, alpha) : kNaN;
    result.rows.push_back({alpha, est.mean, est.std_error, lower});
    table.add_row({alpha, est.mean, est.std_error, lower, 2.0 - alpha});
    alphas.push_back(alpha);
    w1s.push_back(est.mean);
    if (cfg.drift == DriftChoice::ou && std::isfinite(lower) && est.mean < lower - 3.0 * est.std_error) {
      result.report.invariants_ok = false;
      result.report.notes.push_back("W1 below the exact lower bound beyond 3 SE at alpha=" + fmt(alpha));
    }
  }

  // Independent Gaussian-vs-Gaussian clouds: the finite-n floor of the estimator.
  {
    std::vector<double> values(cfg.replicates);
    parallel_for(cfg.replicates, [&](std::size_t r) {
      RngStream rng(*cfg.seed, stream_id(kTagFloor, 0, r));
      const auto law = ou::OuStationaryLaw::gaussian(d);
      const auto x = ou::ou_stationary_sample(law, cfg.n_samples, rng);
      const auto y = ou::ou_stationary_sample(law, cfg.n_samples, rng);
      values[r] = estimate_w1(x, y, cfg, stream_id(kTagFloor, 1, r));
    });
    const auto floor = summarize(std::move(values), cfg, kTagFloor << 16);
    result.self_floor = floor.mean;
    result.self_floor_se = floor.std_error;
  }

  std::size_t fit_points = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (alphas[i] < 2.0 && w1s[i] > 0.0) ++fit_points;
  if (fit_points >= 3) {
    result.fit_linear = fit_rate(alphas, w1s, RateFit::Transform::log_2ma);
    result.fit_loglog = fit_rate(alphas, w1s, RateFit::Transform::log_2ma_loglog);
    result.report.notes.push_back("fit log W1 ~ log(2-alpha): slope=" + fmt(result.fit_linear.slope) +
                                  " r2=" + fmt(result.fit_linear.r_squared));
    result.report.notes.push_back("fit log W1 ~ log((2-alpha) log(1/(2-alpha))): slope=" +
                                  fmt(result.fit_loglog.slope) + " r2=" + fmt(result.fit_loglog.r_squared));
  } else {
    result.fit_linear.slope = result.fit_loglog.slope = kNaN;
    result.report.notes.push_back("fewer than three alphas in (1, 2): no rate fit");
  }
  result.report.notes.push_back("self-distance floor (independent Gaussian clouds): " + fmt(result.self_floor) +
                                " +/- " + fmt(result.self_floor_se));
  if (cfg.drift == DriftChoice::custom && coupling == Coupling::shared)
    result.report.notes.push_back("custom drift: ergodic chains are always driven independently");

  auto& plot = result.report.plot;
  plot.columns = {"log_two_minus_alpha", "log_loglog_rate", "log_w1", "log_lower_exact"};
  for (const auto& row : result.rows) {
    if (!(row.alpha < 2.0) || !(row.w1 > 0.0)) continue;
    plot.add_row({transform_x(row.alpha, RateFit::Transform::log_2ma),
                  transform_x(row.alpha, RateFit::Transform::log_2ma_loglog), std::log(row.w1),
                  std::isfinite(row.lower_exact) ? std::log(row.lower_exact) : kNaN});
  }
  return result;
}

// ---------------------------------------------------------------------------
// dimension sweep

DimSweepResult run_dim_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const double alpha = cfg.alpha_grid.front();
  if (!(alpha < 2.0)) throw ArgumentError("dim-sweep needs alpha in (1, 2)");
  DimSweepResult result;
  auto& table = result.report.table;
  table.columns = {"d",           "alpha",           "lower_exact",  "mean_norm",       "mean_norm_se",
                   "small_mean_norm", "small_sliced", "small_assignment", "small_assignment_se"};
  for (std::size_t di = 0; di < cfg.d_grid.size(); ++di) {
    const int d = cfg.d_grid[di];
    DimSweepRow row;
    row.d = d;
    row.alpha = alpha;
    row.lower_exact = ou::ou_w1_lower_exact(d, alpha);

    {
      RngStream rng(*cfg.seed, stream_id(kTagDimLarge, di, 0));
      const auto x = ou::ou_stationary_sample(ou::OuStationaryLaw::stable(d, alpha), cfg.n_samples, rng);
      const auto y = ou::ou_stationary_sample(ou::OuStationaryLaw::gaussian(d), cfg.n_samples, rng);
      const auto est = w1_mean_norm_lower(x, y, {cfg.bootstrap, *cfg.seed ^ stream_id(kTagDimLarge, di, 1)});
      row.mean_norm = est.value;
      row.mean_norm_se = est.std_error.value_or(0.0);
    }

    std::vector<double> mn(cfg.replicates), sl(cfg.replicates), as(cfg.replicates);
    std::vector<char> ordered(cfg.replicates, 1);
    parallel_for(cfg.replicates, [&](std::size_t r) {
      RngStream rng(*cfg.seed, stream_id(kTagDimSmall, di, r));
      ExperimentConfig small = cfg;
      small.n_samples = cfg.n_small;
      const auto [x, y] = stationary_pair(small, d, alpha, cfg.coupling_or(Coupling::shared), rng);
      const BootstrapOptions no_boot{0, 0};
      RngStream proj(*cfg.seed, stream_id(kTagDimSmall, di, r) ^ 0x8000'0000ULL);
      mn[r] = w1_mean_norm_lower(x, y, no_boot).value;
      sl[r] = w1_sliced(x, y, cfg.projections, proj, no_boot).value;
      as[r] = w1_assignment(x, y, AssignmentOptions{4096, no_boot}).value;
      const double tol = 1e-12 * (1.0 + as[r]);
      ordered[r] = (mn[r] <= as[r] + tol) && (sl[r] <= as[r] + tol);
    });
    row.small_mean_norm = summarize(mn, cfg, (kTagDimSmall << 16) | (3 * di)).mean;
    row.small_sliced = summarize(sl, cfg, (kTagDimSmall << 16) | (3 * di + 1)).mean;
    const auto asg = summarize(as, cfg, (kTagDimSmall << 16) | (3 * di + 2));
    row.small_assignment = asg.mean;
    row.small_assignment_se = asg.std_error;
    if (std::find(ordered.begin(), ordered.end(), 0) != ordered.end()) {
      result.report.invariants_ok = false;
      result.report.notes.push_back("lower-bound estimator exceeded exact assignment at d=" + std::to_string(d));
    }
    result.rows.push_back(row);
    table.add_row({static_cast<double>(d), alpha, row.lower_exact, row.mean_norm, row.mean_norm_se,
                   row.small_mean_norm, row.small_sliced, row.small_assignment, row.small_assignment_se});
  }

  std::vector<double> log_d, log_dlogd, log_lower;
  for (const auto& row : result.rows) {
    log_d.push_back(std::log(static_cast<double>(row.d)));
    log_dlogd.push_back(std::log(row.d * std::log1p(static_cast<double>(row.d))));
    log_lower.push_back(std::log(row.lower_exact));
  }
  const bool distinct = std::adjacent_find(log_d.begin(), log_d.end(), std::not_equal_to<>()) != log_d.end();
  if (distinct) {
    const auto f1 = stats::least_squares(log_d, log_lower);
    const auto f2 = stats::least_squares(log_dlogd, log_lower);
    result.slope_vs_d = f1.slope;
    result.r2_vs_d = f1.r_squared;
    result.slope_vs_dlogd = f2.slope;
    result.r2_vs_dlogd = f2.r_squared;
    result.report.notes.push_back("exact lower bound vs d: slope=" + fmt(f1.slope) + " r2=" + fmt(f1.r_squared));
    result.report.notes.push_back("exact lower bound vs d log(1+d): slope=" + fmt(f2.slope) +
                                  " r2=" + fmt(f2.r_squared));
  } else {
    result.slope_vs_d = result.r2_vs_d = result.slope_vs_dlogd = result.r2_vs_dlogd = kNaN;
  }
  result.report.notes.push_back(
      "the exact lower bound grows like 2 Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)) ~ sqrt(2d); the "
      "d log(1+d) factor of the upper bound is not attained by this lower bound, and no desk-scale "
      "experiment here confirms or refutes it");

  auto& plot = result.report.plot;
  plot.columns = {"log_d", "log_d_log1pd", "log_lower_exact", "log_sqrt_2d"};
  for (std::size_t i = 0; i < result.rows.size(); ++i)
    plot.add_row({log_d[i], log_dlogd[i], log_lower[i], 0.5 * std::log(2.0 * result.rows[i].d)});
  return result;
}

// ---------------------------------------------------------------------------
// transient

TransientResult run_transient(const ExperimentConfig& cfg) {
  cfg.validate();
  const int d = cfg.d_grid.front();
  const double alpha = cfg.alpha_grid.front();
  const double T = cfg.t_max_or(10.0);
  const std::size_t n_steps = steps_for(cfg, T);
  const double h = T / static_cast<double>(n_steps);
  const auto x0 = embed(cfg.x0_or(10.0), d);
  const auto y0 = embed(cfg.y0, d);
  const auto drift = make_drift(cfg, d);
  const StableModel model(d, alpha);
  const Coupling coupling = cfg.coupling_or(Coupling::independent);
  const std::size_t K = cfg.checkpoints;
  std::vector<std::size_t> record(K);
  for (std::size_t k = 0; k < K; ++k) record[k] = (n_steps * k) / (K - 1);

  const std::size_t n = cfg.n_samples;
  const std::size_t R = cfg.replicates;
  const auto dd = static_cast<std::size_t>(d);
  // states[r][i] holds K x d recorded values for path i in replicate r.
  std::vector<std::vector<double>> xs(R, std::vector<double>(n * K * dd));
  std::vector<std::vector<double>> ys(R, std::vector<double>(n * K * dd));

  parallel_for(R * n, [&](std::size_t task) {
    const std::size_t r = task / n;
    const std::size_t i = task % n;
    RngStream rng(*cfg.seed, stream_id(kTagTransient, r, 2 * i));
    double* xo = xs[r].data() + i * K * dd;
    double* yo = ys[r].data() + i * K * dd;
    if (coupling == Coupling::independent) {
      RngStream rng_y(*cfg.seed, stream_id(kTagTransient, r, 2 * i + 1));
      const auto px = integrate_recorded(model, NoiseKind::stable, drift, x0, T, n_steps, record, rng);
      const auto py = integrate_recorded(model, NoiseKind::brownian, drift, y0, T, n_steps, record, rng_y);
      std::copy(px.begin(), px.end(), xo);
      std::copy(py.begin(), py.end(), yo);
      return;
    }
    // Shared: sigma sqrt(dS) G drives X and sigma sqrt(h) G drives Y with the same G.
    std::vector<double> x(x0), y(y0), g(dd), bx(dd), by(dd), nx(dd), ny(dd);
    std::size_t next = 0;
    auto store = [&](std::size_t k) {
      while (next < K && record[next] == k) {
        std::copy(x.begin(), x.end(), xo + next * dd);
        std::copy(y.begin(), y.end(), yo + next * dd);
        ++next;
      }
    };
    store(0);
    for (std::size_t k = 0; k < n_steps; ++k) {
      const double s = sample_subordinator_increment(alpha, h, rng);
      for (auto& v : g) v = rng.normal();
      for (std::size_t c = 0; c < dd; ++c) {
        nx[c] = std::sqrt(s) * g[c];
        ny[c] = std::sqrt(h) * g[c];
      }
      model.apply_sigma(nx, nx);
      model.apply_sigma(ny, ny);
      drift.eval(x, bx);
      drift.eval(y, by);
      for (std::size_t c = 0; c < dd; ++c) {
        x[c] += bx[c] * h + nx[c];
        y[c] += by[c] * h + ny[c];
      }
      if (!(norm(x) <= kOverflowGuard) || !(norm(y) <= kOverflowGuard))
        throw IntegrationError("transient: state left the finite range", k + 1);
      store(k + 1);
    }
  });

  // W1 per replicate and checkpoint.
  std::vector<std::vector<double>> w(K, std::vector<double>(R));
  parallel_for(R * K, [&](std::size_t task) {
    const std::size_t r = task / K;
    const std::size_t k = task % K;
    EmpiricalMeasure cx(n, dd), cy(n, dd);
    for (std::size_t i = 0; i < n; ++i) {
      const double* px = xs[r].data() + (i * K + k) * dd;
      const double* py = ys[r].data() + (i * K + k) * dd;
      std::copy(px, px + dd, cx.point(i).begin());
      std::copy(py, py + dd, cy.point(i).begin());
    }
    w[k][r] = estimate_w1(cx, cy, cfg, stream_id(kTagTransient, 0xffff, task));
  });

  TransientResult result;
  result.alpha = alpha;
  auto& table = result.report.table;
  table.columns = {"t", "w1", "std_error"};
  for (std::size_t k = 0; k < K; ++k) {
    const double t = static_cast<double>(record[k]) * h;
    const auto est = summarize(w[k], cfg, (kTagTransient << 16) | k);
    result.rows.push_back({t, est.mean, est.std_error});
    table.add_row({t, est.mean, est.std_error});
  }

  // Plateau: per-replicate average over the last fifth of the horizon.
  std::vector<double> tail(R, 0.0);
  std::size_t tail_count = 0;
  for (std::size_t k = 0; k < K; ++k) {
    if (result.rows[k].t < 0.8 * T) continue;
    ++tail_count;
    for (std::size_t r = 0; r < R; ++r) tail[r] += w[k][r];
  }
  for (auto& v : tail) v /= static_cast<double>(tail_count);
  const auto plateau = summarize(tail, cfg, (kTagTransient << 16) | 0xfffe);
  result.plateau = plateau.mean;
  result.plateau_se = plateau.std_error;

  const auto ref = stationary_w1(cfg, d, alpha, coupling, kTagStationaryRef, 0);
  result.stationary_w1 = ref.mean;
  result.stationary_se = ref.std_error;

  // Decreasing while clearly above the plateau, then flat within noise.
  bool ok = true;
  std::size_t entry = K;
  for (std::size_t k = 0; k < K; ++k) {
    const double band = 3.0 * std::hypot(result.rows[k].std_error, result.plateau_se);
    if (result.rows[k].w1 <= result.plateau + band) {
      entry = k;
      break;
    }
    if (k > 0 && !(result.rows[k].w1 < result.rows[k - 1].w1)) ok = false;
  }
  if (entry == K || entry == 0) ok = false;
  for (std::size_t k = entry; k < K; ++k) {
    const double band = 3.0 * std::hypot(result.rows[k].std_error, result.plateau_se);
    if (std::abs(result.rows[k].w1 - result.plateau) > band) ok = false;
  }
  result.decreasing_to_plateau = ok;

  // Exponential rate of the excess over the plateau, using points well above it.
  std::vector<double> ts, logs;
  for (std::size_t k = 0; k < K; ++k) {
    const double excess = result.rows[k].w1 - result.plateau;
    if (excess > 10.0 * std::hypot(result.rows[k].std_error, result.plateau_se) && excess > 0.0) {
      ts.push_back(result.rows[k].t);
      logs.push_back(std::log(excess));
    }
  }
  result.decay_rate = ts.size() >= 2 ? -stats::least_squares(ts, logs).slope : kNaN;

  result.report.notes.push_back("plateau " + fmt(result.plateau) + " +/- " + fmt(result.plateau_se) +
                                "; stationary estimate " + fmt(result.stationary_w1) + " +/- " +
                                fmt(result.stationary_se));
  result.report.notes.push_back("decay rate of the excess over the plateau: " + fmt(result.decay_rate));
  if (!ok) {
    result.report.invariants_ok = false;
    result.report.notes.push_back("curve is not a clean decrease to a plateau");
  }
  auto& plot = result.report.plot;
  plot.columns = {"t", "w1", "plateau", "stationary_w1"};
  for (const auto& row : result.rows) plot.add_row({row.t, row.w1, result.plateau, result.stationary_w1});
  return result;
}

// ---------------------------------------------------------------------------
// contraction

ContractionResult run_contraction(const ExperimentConfig& cfg) {
  cfg.validate();
  const int d = cfg.d_grid.front();
  const double alpha = cfg.alpha_grid.front();
  const double T = cfg.t_max_or(5.0);
  const std::size_t n_steps = steps_for(cfg, T);
  const auto x0 = embed(cfg.x0_or(10.0), d);
  const auto y0 = embed(cfg.y0, d);
  const auto drift = make_drift(cfg, d);
  const StableModel model(d, alpha);
  const NoiseKind noise = alpha == 2.0 ? NoiseKind::brownian : NoiseKind::stable;
  const std::size_t K = cfg.checkpoints;
  std::vector<std::size_t> record(K);
  for (std::size_t k = 0; k < K; ++k) record[k] = (n_steps * k) / (K - 1);

  std::vector<double> start_diff(x0.size());
  for (std::size_t c = 0; c < x0.size(); ++c) start_diff[c] = x0[c] - y0[c];
  const double d0 = norm(start_diff);

  const std::size_t n = cfg.n_samples;
  std::vector<std::vector<double>> dist(K, std::vector<double>(n));
  std::vector<char> expands(n, 0);
  parallel_for(n, [&](std::size_t i) {
    RngStream rng(*cfg.seed, stream_id(kTagContraction, 0, i));
    const auto [px, py] = integrate_coupled(model, noise, drift, x0, y0, T, n_steps, rng);
    std::vector<double> diff(static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < K; ++k) {
      const auto a = px.state(record[k]);
      const auto b = py.state(record[k]);
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = a[c] - b[c];
      dist[k][i] = norm(diff);
      if (dist[k][i] > d0 * (1.0 + 1e-12) + 1e-300) expands[i] = 1;
    }
  });

  ContractionResult result;
  result.report.table.columns = {"t", "mean_distance", "std_error"};
  std::vector<double> ts, logs;
  for (std::size_t k = 0; k < K; ++k) {
    const double t = T * static_cast<double>(record[k]) / static_cast<double>(n_steps);
    const auto est = summarize(dist[k], cfg, (kTagContraction << 16) | k);
    result.rows.push_back({t, est.mean, est.std_error});
    result.report.table.add_row({t, est.mean, est.std_error});
    if (est.mean > 0.0) {
      ts.push_back(t);
      logs.push_back(std::log(est.mean));
    }
  }
  result.never_expands = std::find(expands.begin(), expands.end(), 1) == expands.end();
  if (ts.size() >= 2) {
    const auto fit = stats::least_squares(ts, logs);
    result.rate = -fit.slope;
    result.prefactor = std::exp(fit.intercept);
    result.report.notes.push_back("fitted contraction rate " + fmt(result.rate) + ", prefactor " +
                                  fmt(result.prefactor) + " (|x-y| = " + fmt(d0) + ")");
  } else {
    result.rate = result.prefactor = kNaN;
    result.report.notes.push_back("coupled paths coincide: distance identically 0");
  }
  if (drift.K == 0.0 && !result.never_expands) {
    result.report.invariants_ok = false;
    result.report.notes.push_back("a coupled path pair moved apart despite K = 0");
  }
  result.report.plot = result.report.table;
  return result;
}

// ---------------------------------------------------------------------------
// gradient check

GradientResult run_gradient_check(const ExperimentConfig& cfg) {
  cfg.validate();
  const int d = cfg.d_grid.front();
  const double T = cfg.t_max_or(1.0);
  const std::size_t n_steps = steps_for(cfg, T);
  const auto x0 = embed(cfg.x0_or(1.0), d);
  auto x1 = x0;
  x1[0] += cfg.epsilon;
  const auto drift = make_drift(cfg, d);
  const double clip = cfg.clip;
  auto test_fn = [&](std::span<const double> x) {
    return cfg.test_function == TestFunction::norm ? std::min(norm(x), clip) : std::clamp(x[0], -clip, clip);
  };

  // t grid: ten points spread over (0, T], starting at T / 10.
  constexpr std::size_t kTimes = 10;
  std::vector<std::size_t> record(kTimes);
  for (std::size_t k = 0; k < kTimes; ++k) record[k] = (n_steps * (k + 1)) / kTimes;

  std::vector<double> alphas;
  for (double a : cfg.alpha_grid)
    if (a < 2.0) alphas.push_back(a);
  alphas.push_back(2.0);

  GradientResult result;
  result.report.table.columns = {"alpha", "t", "gradient", "std_error"};
  const std::size_t n = cfg.n_samples;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];
    const StableModel model(d, alpha);
    const NoiseKind noise = alpha == 2.0 ? NoiseKind::brownian : NoiseKind::stable;
    std::vector<std::vector<double>> fd(kTimes, std::vector<double>(n));
    parallel_for(n, [&](std::size_t i) {
      RngStream rng(*cfg.seed, stream_id(kTagGradient, ai, i));
      const auto [pa, pb] = integrate_coupled(model, noise, drift, x0, x1, T, n_steps, rng);
      for (std::size_t k = 0; k < kTimes; ++k)
        fd[k][i] = (test_fn(pb.state(record[k])) - test_fn(pa.state(record[k]))) / cfg.epsilon;
    });
    for (std::size_t k = 0; k < kTimes; ++k) {
      const double t = T * static_cast<double>(record[k]) / static_cast<double>(n_steps);
      const auto est = summarize(fd[k], cfg, (kTagGradient << 16) | (ai * kTimes + k));
      result.rows.push_back({alpha, t, est.mean, est.std_error});
      result.report.table.add_row({alpha, t, est.mean, est.std_error});
      if (alpha == 2.0) result.reference_max = std::max(result.reference_max, std::abs(est.mean));
      else result.stable_max = std::max(result.stable_max, std::abs(est.mean));
    }
  }
  result.report.notes.push_back("max |gradient| over stable alphas: " + fmt(result.stable_max) +
                                "; alpha=2 reference max: " + fmt(result.reference_max));
  if (alphas.size() > 1 && result.stable_max > 1.05 * result.reference_max) {
    result.report.invariants_ok = false;
    result.report.notes.push_back("stable gradient exceeds 1.05x the Brownian reference");
  }
  result.report.plot = result.report.table;
  return result;
}

// ---------------------------------------------------------------------------
// selftest

bool SelftestResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

SelftestResult run_selftest(const ExperimentConfig& cfg, const SelftestOptions& options) {
  cfg.validate();
  SelftestResult result;
  const std::uint64_t seed = *cfg.seed;
  auto add = [&](std::string name, bool passed, std::string detail) {
    result.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  const double scale_factor = options.subordinator_scale_factor;

  // Laplace transform of the subordinator.
  {
    const double alpha = 1.5, t = 1.0, r = 0.5;
    constexpr std::size_t kDraws = 200000;
    RngStream rng(seed, stream_id(kTagSelftest, 0, 0));
    std::vector<double> v(kDraws);
    for (auto& x : v) x = std::exp(-r * scale_factor * sample_subordinator_increment(alpha, t, rng));
    const auto est = stats::mean_with_stderr(v);
    const double target = std::exp(-0.5 * t * std::pow(2.0 * r, 0.5 * alpha));
    add("subordinator_laplace", std::abs(est.mean - target) <= 3.0 * est.std_error,
        "mean " + fmt(est.mean) + " target " + fmt(target) + " se " + fmt(est.std_error));
  }
  // Negative moment identity.
  {
    const double alpha = 1.5;
    constexpr std::size_t kDraws = 200000;
    RngStream rng(seed, stream_id(kTagSelftest, 1, 0));
    std::vector<double> v(kDraws);
    for (auto& x : v) x = 1.0 / std::sqrt(scale_factor * sample_subordinator_increment(alpha, 1.0, rng));
    const auto est = stats::mean_with_stderr(v);
    const double target = specfun::subordinator_neg_moment(1.0, alpha, specfun::NegativePower::half);
    add("subordinator_neg_moment", std::abs(est.mean - target) <= 3.0 * est.std_error,
        "mean " + fmt(est.mean) + " target " + fmt(target));
  }
  // Characteristic function of stable increments.
  {
    const StableModel model(1, 1.5);
    RngStream rng(seed, stream_id(kTagSelftest, 2, 0));
    const auto cloud = sample_stable_cloud(model, 1.0, 200000, rng);
    const double xi[] = {1.0};
    const auto est = empirical_char_function(cloud, xi);
    const double target = std::exp(-0.5);
    add("stable_char_function",
        std::abs(est.re - target) <= 3.0 * est.re_stderr && std::abs(est.im) <= 3.0 * est.im_stderr,
        "re " + fmt(est.re) + " target " + fmt(target));
  }
  // Gamma-ratio bound: fitted on a coarse grid, validated on a finer one.
  {
    std::vector<int> coarse_d, fine_d;
    for (int d = 1; d <= 20; ++d) coarse_d.push_back(d);
    for (int d = 1; d <= 200; ++d) fine_d.push_back(d);
    std::vector<double> coarse_a{1.5, 1.6, 1.7, 1.8, 1.9, 1.99, 1.999, 1.9999};
    std::vector<double> fine_a;
    for (int k = 0; k <= 99; ++k) fine_a.push_back(1.5 + 0.005 * k);
    for (double a : {1.999, 1.9995, 1.9999}) fine_a.push_back(a);
    const double c = specfun::crate_bound_fit(coarse_d, coarse_a);
    const double c_fine = specfun::crate_bound_fit(fine_d, fine_a);
    add("gamma_ratio_bound", c_fine <= c, "C coarse " + fmt(c) + ", fine max " + fmt(c_fine));
  }
  // Assignment solver against brute force.
  {
    RngStream rng(seed, stream_id(kTagSelftest, 3, 0));
    double worst = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
      const std::size_t n = 1 + rng.uniform_index(6);
      const std::size_t d = 1 + rng.uniform_index(3);
      EmpiricalMeasure x(n, d), y(n, d);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) {
          x.point(i)[k] = rng.normal();
          y.point(i)[k] = rng.normal();
        }
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      double best = std::numeric_limits<double>::infinity();
      do {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          double q = 0.0;
          for (std::size_t k = 0; k < d; ++k) q += std::pow(x.point(i)[k] - y.point(perm[i])[k], 2);
          s += std::sqrt(q);
        }
        best = std::min(best, s / static_cast<double>(n));
      } while (std::next_permutation(perm.begin(), perm.end()));
      const auto est = w1_assignment(x, y, AssignmentOptions{4096, {0, 0}});
      worst = std::max(worst, std::abs(est.value - best));
    }
    add("assignment_vs_bruteforce", worst <= 1e-12, "max abs error " + fmt(worst));
  }
  // Closed-form lower bound: two evaluation routes.
  {
    double worst = 0.0;
    for (double a : {1.2, 1.5, 1.8, 1.9, 1.99})
      for (int d : {1, 3, 10}) {
        const double v1 = ou::ou_w1_lower_exact(d, a);
        const double v2 = ou::ou_w1_lower_via_phi(d, a);
        worst = std::max(worst, std::abs(v1 - v2) / std::max(v1, 1e-300));
      }
    add("ou_lower_bound_routes", worst <= 1e-12, "max rel diff " + fmt(worst));
  }
  // OU synchronous coupling is deterministic Euler decay.
  {
    const StableModel model(1, 1.5);
    const auto drift = DriftSpec::ornstein_uhlenbeck(1);
    RngStream rng(seed, stream_id(kTagSelftest, 4, 0));
    const double x0[] = {1.0}, y0[] = {0.0};
    const auto [px, py] = integrate_coupled(model, NoiseKind::stable, drift, x0, y0, 1.0, 1000, rng);
    const double got = std::abs(px.endpoint()[0] - py.endpoint()[0]);
    const double want = std::pow(1.0 - 1e-3, 1000.0);
    add("ou_coupling_decay", std::abs(got - want) <= 1e-9, "got " + fmt(got) + " want " + fmt(want));
  }
  // Streams are reproducible.
  {
    RngStream a(seed, 42), b(seed, 42);
    bool same = true;
    for (int i = 0; i < 1000; ++i) same = same && a.next_u64() == b.next_u64();
    add("rng_reproducible", same, same ? "identical" : "streams diverged");
  }

  auto& table = result.report.table;
  table.columns = {"check", "passed"};
  for (std::size_t i = 0; i < result.checks.size(); ++i) {
    table.add_row({static_cast<double>(i), result.checks[i].passed ? 1.0 : 0.0});
    result.report.notes.push_back(std::string(result.checks[i].passed ? "PASS " : "FAIL ") +
                                  result.checks[i].name + ": " + result.checks[i].detail);
  }
  result.report.invariants_ok = result.passed();
  result.report.plot = table;
  return result;
}

Report run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::alpha_sweep: return run_alpha_sweep(cfg).report;
    case Experiment::dim_sweep: return run_dim_sweep(cfg).report;
    case Experiment::transient: return run_transient(cfg).report;
    case Experiment::contraction: return run_contraction(cfg).report;
    case Experiment::gradient_check: return run_gradient_check(cfg).report;
    case Experiment::selftest: return run_selftest(cfg).report;
  }
  throw ArgumentError("unknown experiment");
}

}  // namespace stablegap
